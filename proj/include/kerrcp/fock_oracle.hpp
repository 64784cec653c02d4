#pragma once

#include <complex>

#include "kerrcp/params.hpp"

namespace kerrcp {

/// Truncation control for the exact master-equation solver.
struct FockConfig {
    int cutoff = 32;         ///< Fock-space dimension (>= 2)
    bool auto_grow = true;   ///< double the cutoff until accepted
    double tail_tol = 1e-6;  ///< max population allowed in the top two levels
    int hard_cap = 512;

    void validate() const;
};

/// Exact steady-state observables from the truncated Lindblad master equation
///   d rho/dt = -i[H, rho] + gamma (a rho a+ - {a+ a, rho}/2),
///   H = Delta a+a + U a+a+aa + i eps (a+ - a) + G (a+^2 + a^2).
struct OracleResult {
    std::complex<double> expect_a;
    double expect_n = 0.0;              ///< <a+ a>
    double n_fluct = 0.0;               ///< <a+ a> - |<a>|^2
    std::complex<double> m_anom;        ///< <a a> - <a>^2
    double purity = 0.0;                ///< Tr rho^2
    double tail_mass = 0.0;             ///< population of the top two levels
    int cutoff_used = 0;
    double residual = 0.0;              ///< ||L vec(rho)||_inf against the unmodified Liouvillian
};

/// Steady state via the null vector of the vectorized Liouvillian (sparse LU
/// with the trace constraint replacing one row). A result is accepted when
/// the tail criterion is met, or when doubling the cutoff moves expect_n by
/// less than 1e-6 relative; otherwise the cutoff grows (auto_grow) until the
/// hard cap, then OracleInfeasible is thrown. A large null-space residual
/// raises DegenerateNullSpace.
OracleResult lindblad_steady_state(const CavityParams& p, const FockConfig& cfg);

/// Long-time propagation of vec(rho) from the vacuum with adaptive explicit
/// RK at a fixed cutoff; the independent cross-check on the null-vector
/// route. Stops when ||L vec(rho)||_2 < settle_tol.
OracleResult lindblad_propagate(const CavityParams& p, int cutoff, double t_max,
                                double settle_tol = 1e-10);

/// Relative differences between (meanfield + fluctuations) and the oracle,
/// with the small parameters that control the approximation attached.
struct DiscrepancyReport {
    double rel_a = 0.0;        ///< |<a>| mismatch
    double rel_n_total = 0.0;  ///< <a+ a> = |alpha|^2 + <da+ da> vs oracle
    double rel_n_fluct = 0.0;
    double rel_m_anom = 0.0;
    double u_over_gamma = 0.0;
    double validity_un_g = 0.0;  ///< U N / G
    std::complex<double> mf_alpha;
    double mf_n_total = 0.0;
    double mf_n_fluct = 0.0;
    std::complex<double> mf_m_anom;
    OracleResult oracle;
};

DiscrepancyReport compare_with_meanfield(const CavityParams& p, const FockConfig& cfg);

}  // namespace kerrcp
