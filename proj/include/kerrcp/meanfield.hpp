#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kerrcp/params.hpp"
#include "kerrcp/stability.hpp"

namespace kerrcp {

/// Residual bound (gamma units) a root must satisfy when substituted back
/// into the mean-field equations.
inline constexpr double kTolRoot = 1e-9;

/// One self-consistent mean-field fixed point.
struct SteadyStateBranch {
    std::complex<double> alpha;          ///< <a>
    double n_mean = 0.0;                 ///< |alpha|^2
    double delta_prime = 0.0;            ///< Delta + 2 U |alpha|^2
    double delta_dprime = 0.0;           ///< Delta + 4 U |alpha|^2
    std::complex<double> g_prime;        ///< G + U alpha^2
    double residual = 0.0;               ///< |d alpha/dt| at this alpha
    bool mf_stable = false;
    bool fluct_stable = false;
};

/// All verified fixed points, sorted by n_mean ascending. `selected` is a
/// stable branch whenever one exists (default: lowest photon number, i.e.
/// the branch continuous with the small-drive limit).
struct BranchSet {
    std::vector<SteadyStateBranch> branches;
    std::size_t selected = 0;

    const SteadyStateBranch& chosen() const { return branches[selected]; }
};

enum class BranchPolicy {
    LowestN,     // among stable branches, smallest n_mean
    Continuity,  // among stable branches, alpha nearest a reference value
};

/// Right-hand side of d alpha/dt with the self-consistent nonlinear detuning.
std::complex<double> meanfield_rhs(std::complex<double> alpha, const CavityParams& p);

struct EffectiveParams {
    double delta_prime;
    double delta_dprime;
    std::complex<double> g_prime;
};

/// Nonlinearity-dressed quantities at a given amplitude.
EffectiveParams effective_params(std::complex<double> alpha, const CavityParams& p);

/// Enumerates every real nonnegative root x = |alpha|^2 of the degree-5
/// self-consistency polynomial
///   x [ (Delta + 2Ux)^2 + (gamma/2)^2 - 4G^2 ]^2
///     = eps^2 [ (gamma/2)^2 + (Delta + 2Ux + 2G)^2 ],
/// reconstructs alpha for each root, verifies the mean-field residual and
/// classifies stability.
///
/// Errors:
///  - UnstableLinearSystem for U = 0 with (gamma/2)^2 + Delta^2 <= 4G^2
///    (the linear cavity has no steady state at or beyond the threshold);
///  - SolverFailure when no root passes residual verification.
///
/// For eps = 0 the vacuum branch x = 0 is always returned; above threshold
/// the broken-symmetry pair +-alpha shares one entry (one representative
/// phase, alpha^2 = -2iGx/(gamma/2 + i Delta')).
BranchSet steady_state_closed_form(const CavityParams& p,
                                   BranchPolicy policy = BranchPolicy::LowestN,
                                   std::complex<double> ref_alpha = {0.0, 0.0});

/// Integrates the mean-field equation with adaptive explicit RK (Dormand-
/// Prince 5(4), local rtol 1e-10) until |d alpha/dt| < tol * max(1, |alpha|)
/// or t_max. Serves as the independent cross-check on the closed form.
/// t_max <= 0 selects 1e3 * max(1/gamma, 1/|Re Lambda_+|) with the rate
/// estimated at Delta' = Delta and floored at 1e-4 gamma (near the critical
/// point the slow eigenvalue sets the settling time).
SteadyStateBranch steady_state_time_march(const CavityParams& p,
                                          std::complex<double> alpha0,
                                          double t_max = 0.0, double tol = 1e-9);

}  // namespace kerrcp
