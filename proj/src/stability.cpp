#include "kerrcp/stability.hpp"

#include <cmath>

#include "kerrcp/meanfield.hpp"

namespace kerrcp {

namespace {

using C = std::complex<double>;

// principal radical of a real argument: sqrt(w) for w >= 0, +i sqrt(-w) else
C radical(double w) {
    if (w >= 0.0) return C(std::sqrt(w), 0.0);
    return C(0.0, std::sqrt(-w));
}

std::pair<C, C> pair_from(double gamma, double w) {
    C r = radical(w);
    return {C(-gamma / 2.0, 0.0) + r, C(-gamma / 2.0, 0.0) - r};
}

bool both_negative(const std::pair<C, C>& lam, double gamma) {
    double thresh = -kTolStab * gamma;
    return lam.first.real() < thresh && lam.second.real() < thresh;
}

}  // namespace

std::pair<C, C> eigen_meanfield(const CavityParams& p, double delta_prime) {
    return pair_from(p.gamma, 4.0 * p.g2 * p.g2 - delta_prime * delta_prime);
}

std::pair<C, C> eigen_fluctuation(double gamma, double delta_dprime, C g_prime) {
    return pair_from(gamma, 4.0 * std::norm(g_prime) - delta_dprime * delta_dprime);
}

std::pair<C, C> eigen_fluctuation(const CavityParams& p, const SteadyStateBranch& b) {
    return eigen_fluctuation(p.gamma, b.delta_dprime, b.g_prime);
}

EigenSpectrum spectrum(const CavityParams& p, double delta_prime,
                       double delta_dprime, C g_prime) {
    EigenSpectrum s;
    auto cap = eigen_meanfield(p, delta_prime);
    auto low = eigen_fluctuation(p.gamma, delta_dprime, g_prime);
    s.lambda_cap_plus = cap.first;
    s.lambda_cap_minus = cap.second;
    s.lambda_low_plus = low.first;
    s.lambda_low_minus = low.second;
    s.mf_stable = both_negative(cap, p.gamma);
    s.fluct_stable = both_negative(low, p.gamma);
    return s;
}

EigenSpectrum spectrum(const CavityParams& p, const SteadyStateBranch& b) {
    return spectrum(p, b.delta_prime, b.delta_dprime, b.g_prime);
}

std::pair<bool, bool> classify(const CavityParams& p, const SteadyStateBranch& b) {
    EigenSpectrum s = spectrum(p, b);
    return {s.mf_stable, s.fluct_stable};
}

}  // namespace kerrcp
