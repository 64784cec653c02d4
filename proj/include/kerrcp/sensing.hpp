#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kerrcp/meanfield.hpp"

namespace kerrcp {

/// Photon-number sensitivity to the Kerr coefficient at one parameter point.
struct SensitivityReport {
    double u_kerr = 0.0;
    double n_numeric = 0.0;       ///< selected-branch photon number
    double n_analytic = 0.0;      ///< (1/2) gamma^{2/5} eps^{2/5} U^{-4/5}; valid at G = G0, Delta = 0
    double s_numeric = 0.0;       ///< |dN/dU| by central finite difference
    double s_analytic = 0.0;      ///< K U^{-9/5}
    double k_prefactor = 0.0;     ///< K = (2/5) gamma^{2/5} eps^{2/5}
    double fd_step = 0.0;         ///< relative step used
    double validity_un_g = 0.0;   ///< U N / G0, the approximation's small parameter
    double halving_rel_change = 0.0;  ///< |S(h) - S(h/2)| / S(h/2)
    bool fd_consistent = true;        ///< halving check within 1%
};

/// Critical-point scaling law for the photon number. Throws DomainError for
/// u_kerr = 0 (the formula diverges).
double n_analytic_cp(const CavityParams& p);

/// (S, K) with S = K U^{-9/5}, K = (2/5) gamma^{2/5} eps^{2/5}.
std::pair<double, double> sensitivity_analytic_cp(const CavityParams& p);

/// Central difference S = |N(U(1+h)) - N(U(1-h))| / (2 h U) on the
/// continuity-tracked branch, with a half-step recomputation; disagreement
/// beyond 1% clears fd_consistent. Throws with the failing side named when a
/// perturbed parameter set has no stable branch.
SensitivityReport sensitivity_numeric(const CavityParams& p, double rel_step = 1e-3);

struct SurfacePoint {
    double u_kerr = 0.0;
    double g2 = 0.0;
    double n_mean = 0.0;
    double s_numeric = 0.0;
    bool failed = false;
    std::string error;
};

/// Per-point (U, G, N, S) table; continuity-tracked along the U axis within
/// one G row. Point failures are flagged rows, never aborts.
std::vector<SurfacePoint> fig3_surface(const CavityParams& base,
                                       const std::vector<double>& u_grid,
                                       const std::vector<double>& g_grid);

}  // namespace kerrcp
