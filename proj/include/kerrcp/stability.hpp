#pragma once

#include <complex>
#include <utility>

#include "kerrcp/params.hpp"

namespace kerrcp {

struct SteadyStateBranch;  // meanfield.hpp

/// Eigenvalues within +-kTolStab*gamma of zero are marginal and count as
/// unstable; the transition point itself is not a linear operating point.
inline constexpr double kTolStab = 1e-12;

/// Closed-form spectra of the 2x2 mean-field matrix M and the linearized
/// fluctuation matrix M'. The "+" eigenvalue carries the principal radical,
/// with sqrt(negative real) = +i sqrt|.|.
struct EigenSpectrum {
    std::complex<double> lambda_cap_plus;    ///< Lambda_+ of M
    std::complex<double> lambda_cap_minus;   ///< Lambda_- of M
    std::complex<double> lambda_low_plus;    ///< lambda_+ of M'
    std::complex<double> lambda_low_minus;   ///< lambda_- of M'
    bool mf_stable = false;                  ///< Re Lambda_+- both < 0
    bool fluct_stable = false;               ///< Re lambda_+- both < 0
};

/// Lambda_+- = -gamma/2 +- sqrt(4 G^2 - delta_prime^2).
std::pair<std::complex<double>, std::complex<double>>
eigen_meanfield(const CavityParams& p, double delta_prime);

/// lambda_+- = -gamma/2 +- sqrt(4 |g_prime|^2 - delta_dprime^2).
std::pair<std::complex<double>, std::complex<double>>
eigen_fluctuation(double gamma, double delta_dprime, std::complex<double> g_prime);

std::pair<std::complex<double>, std::complex<double>>
eigen_fluctuation(const CavityParams& p, const SteadyStateBranch& branch);

/// Full spectrum at given dressed parameters.
EigenSpectrum spectrum(const CavityParams& p, double delta_prime,
                       double delta_dprime, std::complex<double> g_prime);

EigenSpectrum spectrum(const CavityParams& p, const SteadyStateBranch& branch);

/// (mf_stable, fluct_stable) for a solved branch.
std::pair<bool, bool> classify(const CavityParams& p, const SteadyStateBranch& branch);

}  // namespace kerrcp
