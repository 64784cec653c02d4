#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kerrcp/sensing.hpp"
#include "test_util.hpp"

using namespace kerrcp;
using testutil::loglog_fit;
using testutil::rel_err;

namespace {
CavityParams cp_point(double u, double eps = 1e-3, double g = 0.25) {
    CavityParams p;
    p.u_kerr = u;
    p.eps = eps;
    p.g2 = g;
    return p;
}
}  // namespace

TEST_CASE("scaling law values") {
    CHECK(rel_err(n_analytic_cp(cp_point(1e-9)), 5e5) < 1e-12);
    // 0.5 * 10^-1.2 * 10^3.2 = 50
    CHECK(rel_err(n_analytic_cp(cp_point(1e-4)), 50.0) < 1e-12);
    // doubling eps scales N by 2^(2/5)
    double n1 = n_analytic_cp(cp_point(1e-7, 1e-3));
    double n2 = n_analytic_cp(cp_point(1e-7, 2e-3));
    CHECK(rel_err(n2 / n1, std::pow(2.0, 0.4)) < 1e-12);
    CHECK_THROWS_AS((void)n_analytic_cp(cp_point(0.0)), SimError);
}

TEST_CASE("analytic sensitivity: prefactor and exponent identities") {
    auto [s, k] = sensitivity_analytic_cp(cp_point(1e-9));
    CHECK(rel_err(k, 0.4 * std::pow(10.0, -1.2)) < 1e-12);
    CHECK(rel_err(k, 0.025238293779207735) < 1e-10);
    // S = K U^(-9/5); at U = 1e-9 that is |dN/dU| = 0.8 N / U = 4.0e14
    CHECK(rel_err(s, k * std::pow(1e-9, -1.8)) < 1e-12);
    CHECK(rel_err(s, 4.0000000000000044e14) < 1e-6);
    auto [s2, k2] = sensitivity_analytic_cp(cp_point(2e-9));
    CHECK(k2 == k);
    CHECK(rel_err(s / s2, std::pow(2.0, 1.8)) < 1e-12);
    CHECK_THROWS_AS((void)sensitivity_analytic_cp(cp_point(0.0)), SimError);

    // d log S / d log U = -9/5 on a log grid
    std::vector<double> us = testutil::logspace(1e-9, 1e-6, 13), ss;
    for (double u : us) ss.push_back(sensitivity_analytic_cp(cp_point(u)).first);
    CHECK(std::abs(loglog_fit(us, ss).first - (-1.8)) < 1e-10);
}

TEST_CASE("numeric sensitivity at the CP tracks the analytic law") {
    SensitivityReport r = sensitivity_numeric(cp_point(1e-9));
    CHECK(rel_err(r.s_numeric, r.s_analytic) < 0.10);
    CHECK(r.fd_consistent);
    CHECK(r.halving_rel_change < 0.01);
    CHECK(r.s_numeric >= 0.0);
    CHECK(r.n_numeric >= 0.0);
    // validity indicator small => the 5% photon-number agreement must hold
    CHECK(r.validity_un_g <= 1e-2);
    CHECK(rel_err(r.n_numeric, r.n_analytic) <= 0.05);
}

TEST_CASE("sensitivity decreases when moving away from the CP") {
    // fixed U, growing deficit G0 - G
    double prev = std::numeric_limits<double>::infinity();
    for (double def : {0.0, 1e-5, 1e-4, 1e-3}) {
        SensitivityReport r = sensitivity_numeric(cp_point(1e-9, 1e-3, 0.25 - def));
        CHECK(r.s_numeric < prev);
        prev = r.s_numeric;
    }
}

TEST_CASE("doubling U at a fixed deficit reduces the sensitivity") {
    for (double u : {1e-8, 1e-7}) {
        double s1 = sensitivity_numeric(cp_point(u, 1e-3, 0.2499)).s_numeric;
        double s2 = sensitivity_numeric(cp_point(2 * u, 1e-3, 0.2499)).s_numeric;
        CHECK(s2 < s1);
    }
}

TEST_CASE("off-resonant flat response") {
    // tiny U, no two-photon drive: N(U) is locally flat
    SensitivityReport r = sensitivity_numeric(cp_point(1e-9, 1e-3, 0.0));
    CHECK(r.s_numeric < 1e-3);
}

TEST_CASE("numeric errors name the failing side") {
    // rel_step = 1 - 1e-16 sends the lower point to U ~ 0 at the CP, where the
    // steady state solve must fail
    CHECK_THROWS_WITH_AS((void)sensitivity_numeric(cp_point(1e-9), 1.0 - 1e-16),
                         doctest::Contains("lower"), SimError);
    CHECK_THROWS_AS((void)sensitivity_numeric(cp_point(0.0)), SimError);
}

TEST_CASE("power-law fits across the acceptance window") {
    std::vector<double> us = testutil::logspace(1e-9, 1e-6, 16), ns, ss;
    for (double u : us) {
        SensitivityReport r = sensitivity_numeric(cp_point(u));
        ns.push_back(r.n_numeric);
        ss.push_back(r.s_numeric);
    }
    auto [n_slope, n_icpt] = loglog_fit(us, ns);
    auto [s_slope, s_icpt] = loglog_fit(us, ss);
    (void)n_icpt;
    CHECK(std::abs(n_slope - (-0.8)) < 0.02);
    CHECK(std::abs(s_slope - (-1.8)) < 0.05);
    // prefactor from the fit within 10% of K
    double k_fit = std::pow(10.0, s_icpt);
    CHECK(rel_err(k_fit, sensitivity_analytic_cp(cp_point(1e-9)).second) < 0.10);
}

TEST_CASE("fig3 surface: CP row slope, interior maximum, degenerate grid") {
    CavityParams base = cp_point(1e-9);
    auto us = testutil::logspace(1e-9, 1e-6, 10);
    std::vector<double> gs = {0.25 - 1e-4, 0.25};
    auto table = fig3_surface(base, us, gs);
    REQUIRE(table.size() == us.size() * gs.size());
    for (const auto& pt : table) CHECK_FALSE(pt.failed);

    // CP row reproduces the analytic overlay: slope -4/5 within 0.02
    std::vector<double> ns;
    for (const auto& pt : table)
        if (pt.g2 == 0.25) ns.push_back(pt.n_mean);
    CHECK(std::abs(loglog_fit(us, ns).first - (-0.8)) < 0.02);

    // below the CP the sensitivity has an interior maximum in U
    std::vector<double> s_below;
    auto us_wide = testutil::logspace(1e-11, 1e-6, 26);
    auto t2 = fig3_surface(base, us_wide, {0.25 - 1e-4});
    for (const auto& pt : t2) s_below.push_back(pt.s_numeric);
    std::size_t imax = 0;
    for (std::size_t i = 0; i < s_below.size(); ++i)
        if (s_below[i] > s_below[imax]) imax = i;
    CHECK(imax > 0);
    CHECK(imax + 1 < s_below.size());

    // single-point grid equals direct calls
    auto t3 = fig3_surface(base, {1e-9}, {0.25});
    REQUIRE(t3.size() == 1);
    CHECK(rel_err(t3[0].n_mean, steady_state_closed_form(base).chosen().n_mean) < 1e-12);
    CHECK(rel_err(t3[0].s_numeric, sensitivity_numeric(base).s_numeric) < 1e-12);
}

TEST_CASE("fig3 surface flags per-point failures without aborting") {
    CavityParams base = cp_point(1e-9);
    base.u_kerr = 0.0;  // U = 0 points at G >= gamma/4 cannot solve
    auto table = fig3_surface(base, {0.0, 1e-9}, {0.25});
    REQUIRE(table.size() == 2);
    CHECK(table[0].failed);
    CHECK_FALSE(table[1].failed);
}
