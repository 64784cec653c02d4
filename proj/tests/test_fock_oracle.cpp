#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kerrcp/fluctuations.hpp"
#include "kerrcp/fock_oracle.hpp"
#include "noise_oracle.hpp"
#include "test_util.hpp"

using namespace kerrcp;
using testutil::rel_err;
using C = std::complex<double>;

namespace {
CavityParams gp(double u, double eps, double g, double delta = 0.0) {
    CavityParams p;
    p.delta = delta;
    p.u_kerr = u;
    p.eps = eps;
    p.g2 = g;
    return p;
}

FockConfig fixed(int d) {
    FockConfig c;
    c.cutoff = d;
    c.auto_grow = false;
    c.tail_tol = 1e-2;
    return c;
}
}  // namespace

TEST_CASE("coherent state: exactly solvable linear cavity") {
    OracleResult r = lindblad_steady_state(gp(0, 0.1, 0), fixed(32));
    CHECK(rel_err(r.expect_a, C(0.2, 0.0)) < 1e-9);
    CHECK(rel_err(r.expect_n, 0.04) < 1e-9);
    CHECK(std::abs(r.n_fluct) < 1e-10);
    CHECK(std::abs(r.m_anom) < 1e-10);
    CHECK(rel_err(r.purity, 1.0) < 1e-9);  // pure coherent state
}

TEST_CASE("degenerate parametric oscillator below threshold") {
    // two independent routes to one number: the hand-derived correlator
    // closed form and the full master equation
    OracleResult r = lindblad_steady_state(gp(0, 0, 0.2), fixed(64));
    auto exact = testutil::linear_noise_closed_form(1.0, 0.2);
    CHECK(std::abs(r.expect_a) < 1e-10);
    CHECK(rel_err(r.n_fluct, exact.n) < 1e-8);
    CHECK(rel_err(r.m_anom, exact.m) < 1e-8);
}

TEST_CASE("frozen regression fixture at U/gamma = 0.05") {
    // independently computed with a scipy sparse implementation (d >= 48
    // fully converged): the mean-field homotopy target
    OracleResult r = lindblad_steady_state(gp(0.05, 0.05, 0.2), fixed(64));
    CHECK(rel_err(r.expect_a, C(0.175870872899, -0.185075902449)) < 1e-8);
    CHECK(rel_err(r.expect_n, 0.645639460938) < 1e-8);
    CHECK(rel_err(r.n_fluct, 0.580455807337) < 1e-8);
    CHECK(rel_err(r.m_anom, C(-0.265572359592, -0.719966546028)) < 1e-8);
    CHECK(rel_err(r.purity, 0.6654046259) < 1e-7);
}

TEST_CASE("state invariants on accepted results") {
    for (auto p : {gp(0, 0.1, 0), gp(0.05, 0.05, 0.2), gp(0, 0, 0.2)}) {
        OracleResult r = lindblad_steady_state(p, fixed(64));
        CHECK(r.expect_n >= 0.0);
        CHECK(r.purity > 0.0);
        CHECK(r.purity <= 1.0 + 1e-10);
        CHECK(r.tail_mass <= 1e-2);
        CHECK(r.residual < 1e-8);
    }
}

TEST_CASE("cutoff robustness of accepted results") {
    OracleResult a = lindblad_steady_state(gp(0.05, 0.05, 0.2), fixed(48));
    OracleResult b = lindblad_steady_state(gp(0.05, 0.05, 0.2), fixed(96));
    CHECK(rel_err(a.expect_n, b.expect_n) < 1e-6);
}

TEST_CASE("auto grow reaches an accepted cutoff") {
    FockConfig cfg;
    cfg.cutoff = 8;  // deliberately too small for G = 0.2
    cfg.tail_tol = 1e-8;
    OracleResult r = lindblad_steady_state(gp(0, 0, 0.2), cfg);
    CHECK(r.cutoff_used > 8);
    CHECK(rel_err(r.n_fluct, testutil::linear_noise_closed_form(1.0, 0.2).n) < 1e-6);
}

TEST_CASE("null vector agrees with long-time propagation") {
    CavityParams p = gp(0.05, 0.05, 0.2);
    OracleResult nv = lindblad_steady_state(p, fixed(24));
    OracleResult prop = lindblad_propagate(p, 24, 400.0, 1e-9);
    CHECK(rel_err(nv.expect_n, prop.expect_n) < 1e-6);
    CHECK(rel_err(nv.expect_a, prop.expect_a) < 1e-6);
}

TEST_CASE("above-threshold linear regime is infeasible") {
    FockConfig cfg;
    cfg.cutoff = 16;
    cfg.hard_cap = 64;
    cfg.tail_tol = 1e-6;
    CHECK_THROWS_AS((void)lindblad_steady_state(gp(0, 0, 0.3), cfg), SimError);
    try {
        (void)lindblad_steady_state(gp(0, 0, 0.3), cfg);
    } catch (const SimError& e) {
        CHECK(e.kind() == ErrorKind::OracleInfeasible);
    }
}

TEST_CASE("config validation") {
    FockConfig bad;
    bad.cutoff = 1;
    CHECK_THROWS_AS(bad.validate(), SimError);
    bad = FockConfig{};
    bad.tail_tol = 0.5;
    CHECK_THROWS_AS(bad.validate(), SimError);
    bad = FockConfig{};
    bad.hard_cap = 8;
    bad.cutoff = 16;
    CHECK_THROWS_AS(bad.validate(), SimError);
}

TEST_CASE("comparison propagates oracle errors") {
    FockConfig cfg;
    cfg.cutoff = 16;
    cfg.hard_cap = 64;
    CHECK_THROWS_AS((void)compare_with_meanfield(gp(0, 0, 0.3), cfg), SimError);
}

TEST_CASE("mean-field discrepancy report: exact at U = 0, shrinks with U") {
    // linear case: both theories are exact
    DiscrepancyReport lin = compare_with_meanfield(gp(0, 0.05, 0.2), fixed(64));
    CHECK(lin.rel_a < 1e-6);
    CHECK(lin.rel_n_total < 1e-6);
    CHECK(lin.rel_n_fluct < 1e-6);
    CHECK(lin.rel_m_anom < 1e-6);

    double prev = 1e9;
    for (double u : {1e-1, 1e-2, 1e-3}) {
        DiscrepancyReport rep = compare_with_meanfield(gp(u, 0.05, 0.2), fixed(64));
        CHECK(rep.rel_n_total < prev);
        prev = rep.rel_n_total;
        CHECK(rep.u_over_gamma == u);
    }
    CHECK(prev < 0.01);  // U/gamma = 1e-3 lands below 1%
}
