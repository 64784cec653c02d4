#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "kerrcp/meanfield.hpp"
#include "kerrcp/params.hpp"

namespace kerrcp {

// Row flag bits. A sweep with any flagged row exits with code 2.
inline constexpr unsigned kFlagMfUnstable = 1u << 0;
inline constexpr unsigned kFlagFluctUnstable = 1u << 1;
inline constexpr unsigned kFlagNoSteadyState = 1u << 2;
inline constexpr unsigned kFlagNonConvergent = 1u << 3;
inline constexpr unsigned kFlagPhysViolation = 1u << 4;
inline constexpr unsigned kFlagSensFailed = 1u << 5;
inline constexpr unsigned kFlagSnrInfinite = 1u << 6;
inline constexpr unsigned kFlagSolverFailure = 1u << 7;

std::string flags_text(unsigned flags);

/// One swept parameter: either a start/stop/count range (linear or log10
/// spacing) or an explicit value list (needed e.g. for grids mixing U = 0
/// with log-spaced positive values).
struct SweepAxis {
    std::string name;           // delta | u_kerr | eps | g2
    bool log_scale = false;
    double start = 0.0, stop = 0.0;
    int count = 1;
    std::vector<double> values;  // when non-empty, overrides start/stop/count

    std::vector<double> grid() const;
};

/// A declarative sweep. Everything is deterministic: identical specs produce
/// byte-identical CSVs at any thread count.
struct SweepSpec {
    std::string name = "sweep";
    CavityParams base;               // gamma-normalized
    double gamma_hz = 0.0;           // > 0 enables */2pi-Hz mirror columns
    bool hz2pi_columns = false;
    std::vector<SweepAxis> axes;     // 1 or 2; the last axis varies fastest
    BranchPolicy branch_policy = BranchPolicy::LowestN;
    std::vector<std::string> outputs;  // steady | eigen | noise | snr | sens
    bool json_mirror = false;
};

/// Parse and fully validate a JSON config file. Unknown keys are errors.
SweepSpec parse_config(const std::string& path);

struct SweepOptions {
    std::string out_dir = ".";
    int threads = 1;
};

struct SweepOutcome {
    int exit_code = 0;  // 0 clean, 2 flagged rows present
    std::string csv_path;
    std::string manifest_path;
    std::size_t rows = 0;
    std::size_t flagged = 0;
};

/// Evaluate the grid (work-stealing over independent lines; rows emitted in
/// grid order) and write <name>.csv, <name>.manifest.json and optionally
/// <name>.json under out_dir.
SweepOutcome run_sweep(const SweepSpec& spec, const SweepOptions& opt);

/// Convenience: parse_config + run_sweep. Config errors exit 1 upstream.
SweepOutcome run_config(const std::string& config_path, const SweepOptions& opt);

/// Baked-in figure grids (fig2a, fig2b, fig2c, fig3a, fig3b, fig3c, fig4a,
/// fig4b) matching the reference operating point gamma/2pi = 1e9 Hz,
/// Delta = 0, eps/gamma = 1e-3 (figs 2-3) and G = gamma/4 (fig 4).
SweepSpec figure_spec(const std::string& fig_id);

std::vector<std::string> figure_ids();

}  // namespace kerrcp
