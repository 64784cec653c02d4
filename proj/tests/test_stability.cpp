#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kerrcp/meanfield.hpp"
#include "kerrcp/stability.hpp"
#include "test_util.hpp"

using namespace kerrcp;
using testutil::rel_err;
using C = std::complex<double>;

namespace {
CavityParams gp(double delta, double u, double eps, double g) {
    CavityParams p;
    p.delta = delta;
    p.u_kerr = u;
    p.eps = eps;
    p.g2 = g;
    return p;
}
}  // namespace

TEST_CASE("mean-field eigenvalues: closed forms") {
    CavityParams p = gp(0, 0, 0, 0.25);
    auto [lp, lm] = eigen_meanfield(p, 0.0);
    // at the critical point the slow eigenvalue touches zero
    CHECK(std::abs(lp) < 1e-15);
    CHECK(rel_err(lm, C(-1.0, 0.0)) < 1e-14);

    p.g2 = 0.0;
    auto [lp2, lm2] = eigen_meanfield(p, 0.0);
    CHECK(rel_err(lp2, C(-0.5, 0.0)) < 1e-14);
    CHECK(rel_err(lm2, C(-0.5, 0.0)) < 1e-14);

    // detuned linear cavity: radical goes imaginary, Lambda_+ takes +i branch
    auto [lp3, lm3] = eigen_meanfield(p, 0.5);
    CHECK(rel_err(lp3, C(-0.5, 0.5)) < 1e-14);
    CHECK(rel_err(lm3, C(-0.5, -0.5)) < 1e-14);
}

TEST_CASE("fluctuation eigenvalues: closed forms") {
    // alpha = 0 branch reduces to the mean-field case
    auto [lp, lm] = eigen_fluctuation(1.0, 0.0, C(0.25, 0.0));
    CHECK(std::abs(lp) < 1e-15);
    CHECK(rel_err(lm, C(-1.0, 0.0)) < 1e-14);

    auto [lp2, lm2] = eigen_fluctuation(1.0, 0.0, C(0.1, 0.0));
    CHECK(rel_err(lp2, C(-0.3, 0.0)) < 1e-14);
    CHECK(rel_err(lm2, C(-0.7, 0.0)) < 1e-14);
}

TEST_CASE("classification with marginal-as-unstable rule") {
    CavityParams p = gp(0, 0, 0, 0.2);
    SteadyStateBranch b;
    b.delta_prime = 0.0;
    b.delta_dprime = 0.0;
    b.g_prime = C(0.2, 0.0);
    auto [mf, fl] = classify(p, b);
    CHECK(mf);
    CHECK(fl);

    p.g2 = 0.3;
    b.g_prime = C(0.3, 0.0);
    auto [mf2, fl2] = classify(p, b);
    CHECK_FALSE(mf2);
    CHECK_FALSE(fl2);

    // exactly-critical eigenvalue is marginal, reported unstable
    p.g2 = 0.25;
    b.g_prime = C(0.25, 0.0);
    auto [mf3, fl3] = classify(p, b);
    CHECK_FALSE(mf3);
    CHECK_FALSE(fl3);
}

TEST_CASE("trace and determinant identities on random draws") {
    std::mt19937 rng(20250810);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        CavityParams p;
        p.gamma = 0.1 + 3.0 * uni(rng);
        p.g2 = uni(rng);
        double dp = 2.0 * uni(rng) - 1.0;
        auto [lp, lm] = eigen_meanfield(p, dp);
        CHECK(rel_err(lp + lm, C(-p.gamma, 0.0)) < 1e-10);
        // Lambda+ Lambda- = (gamma/2)^2 + dp^2 - 4G^2, the alpha denominator
        double det = p.gamma * p.gamma / 4.0 + dp * dp - 4.0 * p.g2 * p.g2;
        CHECK(std::abs(lp * lm - det) <= 1e-10 * std::max(1.0, std::abs(det)));

        C gprime(uni(rng) - 0.3, 0.5 * (uni(rng) - 0.5));
        double dpp = 2.0 * uni(rng) - 1.0;
        auto [fp, fm] = eigen_fluctuation(p.gamma, dpp, gprime);
        CHECK(rel_err(fp + fm, C(-p.gamma, 0.0)) < 1e-10);
    }
}

TEST_CASE("Lambda_+ stays negative through the CP for U > 0") {
    // the nonlinearity suppresses the photon number, keeping the branch stable
    CavityParams p = gp(0, 1e-9, 1e-3, 0.0);
    for (double g = 0.24; g <= 0.26 + 1e-12; g += 0.001) {
        p.g2 = g;
        BranchSet set = steady_state_closed_form(p);
        auto [lp, lm] = eigen_meanfield(p, set.chosen().delta_prime);
        CHECK(lp.real() < 0.0);
        CHECK(lm.real() < 0.0);
    }
}

TEST_CASE("lambda_+ ~ Lambda_+ far below the CP") {
    CavityParams p = gp(0, 1e-9, 1e-3, 0.01);
    BranchSet set = steady_state_closed_form(p);
    const SteadyStateBranch& b = set.chosen();
    auto [cap, capm] = eigen_meanfield(p, b.delta_prime);
    (void)capm;
    auto [low, lowm] = eigen_fluctuation(p, b);
    (void)lowm;
    CHECK(std::abs(low - cap) / std::abs(cap) < 1e-3);
}

TEST_CASE("stability ordering on the solved branch near the CP") {
    CavityParams p = gp(0, 1e-9, 1e-3, 0.25);
    BranchSet set = steady_state_closed_form(p);
    const SteadyStateBranch& b = set.chosen();
    EigenSpectrum s = spectrum(p, b);
    CHECK(s.lambda_low_plus.real() < s.lambda_cap_plus.real());
    CHECK(s.lambda_cap_plus.real() < 0.0);
    CHECK(s.mf_stable);
    CHECK(s.fluct_stable);
}
