#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "kerrcp/meanfield.hpp"

namespace kerrcp {

/// Second-order fluctuation correlators under the Gaussian factorization.
struct NoiseState {
    double n_fluct = 0.0;               ///< <da+ da>, real >= 0
    std::complex<double> m_anom;        ///< <da da>
    bool phys_ok = true;                ///< |m|^2 <= n(n+1) + tol_phys
    double phys_excess = 0.0;           ///< positive part of the violation
};

struct NoiseDerivative {
    double dn_dt = 0.0;
    std::complex<double> dm_dt;
};

/// Exact right-hand sides of the correlator equations with
/// <da+ da+> = conj(m) and the quartic closure <da+ da da da> = 3 n m
/// substituted. dn/dt is real by construction; the imaginary residue of the
/// complex expression is asserted <= 1e-12 of its magnitude.
NoiseDerivative noise_dynamics_rhs(const NoiseState& s, const SteadyStateBranch& b,
                                   const CavityParams& p);

/// Gaussian-positivity slack: tol_phys = 1e-6 (n+1)^2. Small transient
/// violations are numerical; larger ones mean the closure broke down and are
/// surfaced through phys_ok / phys_excess.
double physicality_excess(double n_fluct, std::complex<double> m_anom);

struct NoiseSolveInfo {
    double t_settle = 0.0;
    std::size_t march_steps = 0;
    int newton_iters = 0;
    double method_disagreement = 0.0;  ///< |march - newton| / max(1, |newton|)
};

/// Steady state of the correlator equations: time-integrates from vacuum
/// (0, 0) with an adaptive L-stable Rosenbrock scheme in the real state
/// (n, Re m, Im m) until ||d state/dt|| < tol * max(1, ||state||), then
/// polishes with a damped Newton solve seeded from the march result. The two
/// answers must agree to 1e-6 relative or a SolverFailure is thrown.
/// tol <= 0 selects 1e-7 * 2|Re lambda_+| (the remaining transient after the
/// stop scales as tol * ||state|| / gap, so a fixed tol cannot hold the
/// cross-method agreement across near-critical points).
NoiseState noise_steady_state(const SteadyStateBranch& b, const CavityParams& p,
                              double tol = 0.0, NoiseSolveInfo* info = nullptr);

struct SnrReport {
    double signal = 0.0;   ///< |alpha|^2
    double noise = 0.0;    ///< <da+ da>
    double snr_db = 0.0;   ///< 10 log10(signal / noise)
    bool infinite = false; ///< noise == 0 sentinel; serializers must not emit inf
};

SnrReport snr(const SteadyStateBranch& b, const NoiseState& noise);

struct Fig4Row {
    char axis = 'u';        // 'u' (Kerr sweep) or 'e' (drive sweep)
    double value = 0.0;
    double alpha2 = 0.0;
    double n_fluct = 0.0;
    double snr_db = 0.0;
    bool failed = false;
    bool phys_flag = false;
    std::string error;
};

/// Per-point mean field + noise steady state along a U sweep and/or an eps
/// sweep; failures and physicality violations are flagged rows.
std::vector<Fig4Row> fig4_curves(const CavityParams& base,
                                 const std::vector<double>& u_grid,
                                 const std::vector<double>& eps_grid);

}  // namespace kerrcp
