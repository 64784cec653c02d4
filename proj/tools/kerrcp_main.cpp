// kerrcp: steady states, stability, sensing sensitivity and quantum-noise SNR
// for a driven Kerr cavity near the two-photon-drive critical point.

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerrcp/fluctuations.hpp"
#include "kerrcp/fock_oracle.hpp"
#include "kerrcp/meanfield.hpp"
#include "kerrcp/sensing.hpp"
#include "kerrcp/stability.hpp"
#include "kerrcp/sweep.hpp"
#include "kerrcp/version.hpp"

using json = nlohmann::json;
using namespace kerrcp;

namespace {

struct ParamFlags {
    std::string units = "gamma";
    double gamma_hz2pi = 1e9;  // figure-caption baseline when Hz inputs are used
    double gamma = 1.0;
    double delta = 0.0;
    double u = 0.0;
    double eps = 0.0;
    std::string g = "0";
    std::optional<double> delta_hz, u_hz, eps_hz, g_hz;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--units", f.units, "Interpretation of plain flags: gamma | hz2pi")
        ->check(CLI::IsMember({"gamma", "hz2pi"}))
        ->capture_default_str();
    cmd->add_option("--gamma-hz2pi", f.gamma_hz2pi,
                    "gamma/2pi in Hz, used to convert any *-hz2pi flag")
        ->capture_default_str();
    cmd->add_option("--gamma", f.gamma, "dissipation rate (plain units)")
        ->capture_default_str();
    cmd->add_option("--delta", f.delta, "detuning Delta (plain units)");
    cmd->add_option("--u", f.u, "Kerr coefficient U (plain units)");
    cmd->add_option("--eps", f.eps, "single-photon drive amplitude (plain units)");
    cmd->add_option("--g", f.g, "two-photon drive amplitude, or 'crit' for gamma/4");
    cmd->add_option("--delta-hz2pi", f.delta_hz, "Delta/2pi in Hz");
    cmd->add_option("--u-hz2pi", f.u_hz, "U/2pi in Hz");
    cmd->add_option("--eps-hz2pi", f.eps_hz, "eps/2pi in Hz");
    cmd->add_option("--g-hz2pi", f.g_hz, "G/2pi in Hz");
}

CavityParams resolve_params(const ParamFlags& f) {
    if (!(f.gamma_hz2pi > 0.0))
        throw SimError(ErrorKind::Validation, "--gamma-hz2pi must be > 0");
    CavityParams p;
    p.gamma = f.gamma;
    p.delta = f.delta;
    p.u_kerr = f.u;
    p.eps = f.eps;
    if (f.g != "crit") {
        try {
            p.g2 = std::stod(f.g);
        } catch (...) {
            throw SimError(ErrorKind::Validation,
                           "--g expects a number or 'crit', got '" + f.g + "'");
        }
    }
    if (f.units == "hz2pi") {
        // plain flags carry X/2pi in Hz; gamma itself comes from --gamma when
        // given (in Hz) and from --gamma-hz2pi otherwise
        double ghz = f.gamma != 1.0 ? f.gamma : f.gamma_hz2pi;
        p.gamma = ghz;
        p = normalize(p, ghz);
    }
    // per-field Hz inputs convert against --gamma-hz2pi, scaled into the
    // working gamma units
    if (f.delta_hz) p.delta = *f.delta_hz / f.gamma_hz2pi * p.gamma;
    if (f.u_hz) p.u_kerr = *f.u_hz / f.gamma_hz2pi * p.gamma;
    if (f.eps_hz) p.eps = *f.eps_hz / f.gamma_hz2pi * p.gamma;
    if (f.g_hz) p.g2 = *f.g_hz / f.gamma_hz2pi * p.gamma;
    if (f.g == "crit") p.g2 = p.gamma / 4.0;
    p.validate();
    return p;
}

json branch_json(const SteadyStateBranch& b) {
    return {{"alpha_re", b.alpha.real()},       {"alpha_im", b.alpha.imag()},
            {"n_mean", b.n_mean},               {"delta_prime", b.delta_prime},
            {"delta_dprime", b.delta_dprime},   {"g_prime_re", b.g_prime.real()},
            {"g_prime_im", b.g_prime.imag()},   {"residual", b.residual},
            {"mf_stable", b.mf_stable},         {"fluct_stable", b.fluct_stable}};
}

json spectrum_json(const EigenSpectrum& s) {
    return {{"Lambda_plus_re", s.lambda_cap_plus.real()},
            {"Lambda_plus_im", s.lambda_cap_plus.imag()},
            {"Lambda_minus_re", s.lambda_cap_minus.real()},
            {"Lambda_minus_im", s.lambda_cap_minus.imag()},
            {"lambda_plus_re", s.lambda_low_plus.real()},
            {"lambda_plus_im", s.lambda_low_plus.imag()},
            {"lambda_minus_re", s.lambda_low_minus.real()},
            {"lambda_minus_im", s.lambda_low_minus.imag()},
            {"mf_stable", s.mf_stable},
            {"fluct_stable", s.fluct_stable}};
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int run_compute(const std::string& sub, const ParamFlags& flags,
                const FockConfig& fock_cfg, bool oracle_compare, double rel_step) {
    CavityParams p = resolve_params(flags);
    if (sub == "steady") {
        BranchSet set = steady_state_closed_form(p);
        json j = branch_json(set.chosen());
        j["branches"] = set.branches.size();
        j["selected"] = set.selected;
        emit(j);
    } else if (sub == "eigen") {
        EigenSpectrum s;
        if (p.u_kerr == 0.0) {
            s = spectrum(p, p.delta, p.delta, std::complex<double>(p.g2, 0.0));
        } else {
            s = spectrum(p, steady_state_closed_form(p).chosen());
        }
        emit(spectrum_json(s));
    } else if (sub == "noise" || sub == "snr") {
        BranchSet set = steady_state_closed_form(p);
        const SteadyStateBranch& b = set.chosen();
        NoiseSolveInfo info;
        NoiseState ns = noise_steady_state(b, p, 0.0, &info);
        if (sub == "noise") {
            emit({{"n_fluct", ns.n_fluct},
                  {"m_anom_re", ns.m_anom.real()},
                  {"m_anom_im", ns.m_anom.imag()},
                  {"phys_ok", ns.phys_ok},
                  {"phys_excess", ns.phys_excess},
                  {"t_settle", info.t_settle},
                  {"newton_iters", info.newton_iters},
                  {"method_disagreement", info.method_disagreement}});
        } else {
            SnrReport r = snr(b, ns);
            emit({{"signal", r.signal},
                  {"noise", r.noise},
                  {"snr_db", r.infinite ? json(nullptr) : json(r.snr_db)},
                  {"infinite", r.infinite}});
        }
    } else if (sub == "sens") {
        SensitivityReport r = sensitivity_numeric(p, rel_step);
        emit({{"u_kerr", r.u_kerr},
              {"n_numeric", r.n_numeric},
              {"n_analytic", r.n_analytic},
              {"s_numeric", r.s_numeric},
              {"s_analytic", r.s_analytic},
              {"k_prefactor", r.k_prefactor},
              {"fd_step", r.fd_step},
              {"validity_un_g", r.validity_un_g},
              {"halving_rel_change", r.halving_rel_change},
              {"fd_consistent", r.fd_consistent}});
    } else if (sub == "oracle") {
        if (oracle_compare) {
            DiscrepancyReport rep = compare_with_meanfield(p, fock_cfg);
            emit({{"rel_a", rep.rel_a},
                  {"rel_n_total", rep.rel_n_total},
                  {"rel_n_fluct", rep.rel_n_fluct},
                  {"rel_m_anom", rep.rel_m_anom},
                  {"u_over_gamma", rep.u_over_gamma},
                  {"validity_un_g", rep.validity_un_g},
                  {"oracle_n", rep.oracle.expect_n},
                  {"mf_n_total", rep.mf_n_total},
                  {"cutoff_used", rep.oracle.cutoff_used}});
        } else {
            OracleResult r = lindblad_steady_state(p, fock_cfg);
            emit({{"expect_a_re", r.expect_a.real()},
                  {"expect_a_im", r.expect_a.imag()},
                  {"expect_n", r.expect_n},
                  {"n_fluct", r.n_fluct},
                  {"m_anom_re", r.m_anom.real()},
                  {"m_anom_im", r.m_anom.imag()},
                  {"purity", r.purity},
                  {"tail_mass", r.tail_mass},
                  {"cutoff_used", r.cutoff_used},
                  {"residual", r.residual}});
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven Kerr cavity critical-point sensing toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    ParamFlags flags;
    FockConfig fock_cfg;
    bool oracle_compare = false;
    double rel_step = 1e-3;

    auto* steady = app.add_subcommand("steady", "mean-field steady state");
    auto* eigen = app.add_subcommand("eigen", "stability eigenvalues");
    auto* noise = app.add_subcommand("noise", "fluctuation correlators");
    auto* snr_cmd = app.add_subcommand("snr", "signal-to-noise ratio");
    auto* sens = app.add_subcommand("sens", "photon-number sensitivity |dN/dU|");
    auto* oracle = app.add_subcommand("oracle", "truncated-Fock master equation");
    for (auto* cmd : {steady, eigen, noise, snr_cmd, sens, oracle})
        add_param_flags(cmd, flags);
    sens->add_option("--rel-step", rel_step, "finite-difference relative step")
        ->capture_default_str();
    oracle->add_option("--cutoff", fock_cfg.cutoff, "Fock dimension")
        ->capture_default_str();
    oracle->add_option("--tail-tol", fock_cfg.tail_tol, "top-two-level population bound")
        ->capture_default_str();
    oracle->add_option("--cap", fock_cfg.hard_cap, "cutoff hard cap")
        ->capture_default_str();
    oracle->add_flag("!--no-auto-grow", fock_cfg.auto_grow, "disable cutoff growth");
    oracle->add_flag("--compare", oracle_compare,
                     "report discrepancies against meanfield + fluctuations");

    SweepOptions sweep_opt;
    std::string fig_id, config_path, format = "csv";
    auto* figure = app.add_subcommand("figure", "baked-in reference-figure grids");
    figure->add_option("id", fig_id, "fig2a|fig2b|fig2c|fig3a|fig3b|fig3c|fig4a|fig4b|all")
        ->required();
    auto* run = app.add_subcommand("run", "execute a sweep config file");
    run->add_option("config", config_path, "JSON sweep configuration")->required();
    for (auto* cmd : {figure, run}) {
        cmd->add_option("--out", sweep_opt.out_dir, "output directory")
            ->capture_default_str();
        cmd->add_option("--threads", sweep_opt.threads, "worker threads")
            ->capture_default_str();
        cmd->add_option("--format", format, "csv | json (json adds a mirror file)")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // 1 for every usage error, 0 for --help
    }

    try {
        if (figure->parsed()) {
            int worst = 0;
            auto ids = fig_id == "all" ? figure_ids() : std::vector<std::string>{fig_id};
            for (const auto& id : ids) {
                SweepSpec spec = figure_spec(id);
                spec.json_mirror = format == "json";
                SweepOutcome out = run_sweep(spec, sweep_opt);
                std::cout << out.csv_path << ": " << out.rows << " rows, "
                          << out.flagged << " flagged\n";
                worst = std::max(worst, out.exit_code);
            }
            return worst;
        }
        if (run->parsed()) {
            SweepSpec spec = parse_config(config_path);
            spec.json_mirror = spec.json_mirror || format == "json";
            SweepOutcome out = run_sweep(spec, sweep_opt);
            std::cout << out.csv_path << ": " << out.rows << " rows, "
                      << out.flagged << " flagged\n";
            return out.exit_code;
        }
        for (auto* cmd : {steady, eigen, noise, snr_cmd, sens, oracle})
            if (cmd->parsed())
                return run_compute(cmd->get_name(), flags, fock_cfg, oracle_compare,
                                   rel_step);
    } catch (const SimError& e) {
        if (e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::Validation) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        emit({{"error", {{"kind", e.kind_name()}, {"message", e.what()}}}});
        return 2;
    }
    return 0;
}
