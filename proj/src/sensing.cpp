#include "kerrcp/sensing.hpp"

#include <cmath>
#include <sstream>

namespace kerrcp {

namespace {

// selected-branch photon number at Kerr coefficient u, tracked from ref
double n_at_u(const CavityParams& p, double u, std::complex<double> ref_alpha,
              const char* side) {
    CavityParams q = p;
    q.u_kerr = u;
    BranchSet set;
    try {
        set = steady_state_closed_form(q, BranchPolicy::Continuity, ref_alpha);
    } catch (const SimError& e) {
        std::ostringstream os;
        os << side << " finite-difference point U = " << u << " failed: " << e.what();
        throw SimError(e.kind(), os.str());
    }
    const SteadyStateBranch& b = set.chosen();
    if (!b.mf_stable) {
        std::ostringstream os;
        os << "no stable branch at the " << side
           << " finite-difference point U = " << u;
        throw SimError(ErrorKind::SolverFailure, os.str());
    }
    return b.n_mean;
}

double central_diff(const CavityParams& p, double h, std::complex<double> ref_alpha) {
    double up = n_at_u(p, p.u_kerr * (1.0 + h), ref_alpha, "upper");
    double dn = n_at_u(p, p.u_kerr * (1.0 - h), ref_alpha, "lower");
    return std::abs(up - dn) / (2.0 * h * p.u_kerr);
}

}  // namespace

double n_analytic_cp(const CavityParams& p) {
    p.validate();
    if (p.u_kerr <= 0.0)
        throw SimError(ErrorKind::DomainError,
                       "scaling law diverges at u_kerr = 0 (requires U > 0)");
    return 0.5 * std::pow(p.gamma, 0.4) * std::pow(p.eps, 0.4) *
           std::pow(p.u_kerr, -0.8);
}

std::pair<double, double> sensitivity_analytic_cp(const CavityParams& p) {
    p.validate();
    if (p.u_kerr <= 0.0)
        throw SimError(ErrorKind::DomainError,
                       "analytic sensitivity diverges at u_kerr = 0 (requires U > 0)");
    double k = 0.4 * std::pow(p.gamma, 0.4) * std::pow(p.eps, 0.4);
    return {k * std::pow(p.u_kerr, -1.8), k};
}

SensitivityReport sensitivity_numeric(const CavityParams& p, double rel_step) {
    p.validate();
    if (p.u_kerr <= 0.0)
        throw SimError(ErrorKind::DomainError,
                       "sensitivity_numeric requires u_kerr > 0");
    if (!(rel_step > 0.0) || rel_step >= 1.0)
        throw SimError(ErrorKind::Validation, "rel_step must be in (0, 1)");

    BranchSet base = steady_state_closed_form(p);
    const SteadyStateBranch& b = base.chosen();

    SensitivityReport r;
    r.u_kerr = p.u_kerr;
    r.n_numeric = b.n_mean;
    r.n_analytic = n_analytic_cp(p);
    auto sa = sensitivity_analytic_cp(p);
    r.s_analytic = sa.first;
    r.k_prefactor = sa.second;
    r.fd_step = rel_step;
    r.validity_un_g = p.u_kerr * b.n_mean / critical_strength(p);

    r.s_numeric = central_diff(p, rel_step, b.alpha);
    double s_half = central_diff(p, rel_step / 2.0, b.alpha);
    r.halving_rel_change =
        std::abs(r.s_numeric - s_half) / std::max(s_half, 1e-300);
    r.fd_consistent = r.halving_rel_change <= 0.01;
    return r;
}

std::vector<SurfacePoint> fig3_surface(const CavityParams& base,
                                       const std::vector<double>& u_grid,
                                       const std::vector<double>& g_grid) {
    if (u_grid.empty() || g_grid.empty())
        throw SimError(ErrorKind::Validation, "fig3_surface grids must be non-empty");
    std::vector<SurfacePoint> out;
    out.reserve(u_grid.size() * g_grid.size());
    for (double g : g_grid) {
        std::complex<double> ref{0.0, 0.0};
        bool have_ref = false;
        for (double u : u_grid) {
            SurfacePoint pt;
            pt.u_kerr = u;
            pt.g2 = g;
            CavityParams q = base;
            q.u_kerr = u;
            q.g2 = g;
            try {
                BranchSet set = have_ref
                    ? steady_state_closed_form(q, BranchPolicy::Continuity, ref)
                    : steady_state_closed_form(q);
                pt.n_mean = set.chosen().n_mean;
                ref = set.chosen().alpha;
                have_ref = true;
                pt.s_numeric = sensitivity_numeric(q).s_numeric;
            } catch (const SimError& e) {
                pt.failed = true;
                pt.error = e.what();
            }
            out.push_back(std::move(pt));
        }
    }
    return out;
}

}  // namespace kerrcp
