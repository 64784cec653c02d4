#include "kerrcp/fluctuations.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "kerrcp/ode.hpp"

namespace kerrcp {

namespace {

using C = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
constexpr C kI{0.0, 1.0};

// coefficients of the correlator system at a fixed branch
struct NoiseSystem {
    double gamma;
    double dpp;   // Delta''
    double gr, gi;  // G'
    double u;

    Vec3 rhs(const Vec3& s) const {
        const double n = s[0], mr = s[1], mi = s[2];
        return Vec3(
            -gamma * n - 4.0 * (gr * mi - gi * mr),
            -gamma * mr + 2.0 * dpp * mi + 2.0 * gi * (2.0 * n + 1.0) +
                2.0 * u * mi * (6.0 * n + 1.0),
            -gamma * mi - 2.0 * dpp * mr - 2.0 * gr * (2.0 * n + 1.0) -
                2.0 * u * mr * (6.0 * n + 1.0));
    }

    Mat3 jac(const Vec3& s) const {
        const double n = s[0], mr = s[1], mi = s[2];
        Mat3 j;
        j << -gamma, 4.0 * gi, -4.0 * gr,
             4.0 * gi + 12.0 * u * mi, -gamma, 2.0 * dpp + 2.0 * u * (6.0 * n + 1.0),
             -4.0 * gr - 12.0 * u * mr, -2.0 * dpp - 2.0 * u * (6.0 * n + 1.0), -gamma;
        return j;
    }
};

NoiseSystem system_of(const SteadyStateBranch& b, const CavityParams& p) {
    return {p.gamma, b.delta_dprime, b.g_prime.real(), b.g_prime.imag(), p.u_kerr};
}

// damped Newton on the 3 real unknowns; returns iterations used
int newton_polish(const NoiseSystem& sys, Vec3& s) {
    int it = 0;
    for (; it < 100; ++it) {
        Vec3 f = sys.rhs(s);
        double fn = f.norm();
        if (fn <= 1e-13 * sys.gamma * std::max(1.0, s.norm())) break;
        Vec3 step = sys.jac(s).partialPivLu().solve(-f);
        double lam = 1.0;
        Vec3 trial;
        for (int k = 0; k < 60; ++k) {
            trial = s + lam * step;
            if (sys.rhs(trial).norm() <= (1.0 - 0.25 * lam) * fn) break;
            lam *= 0.5;
        }
        s = trial;
    }
    return it;
}

}  // namespace

NoiseDerivative noise_dynamics_rhs(const NoiseState& s, const SteadyStateBranch& b,
                                   const CavityParams& p) {
    const C gp = b.g_prime;
    const C m = s.m_anom;
    const C mbar = std::conj(m);  // <da+ da+>
    const double n = s.n_fluct;

    C dn_c = -p.gamma * n - 2.0 * kI * gp * mbar + 2.0 * kI * std::conj(gp) * m;
    if (std::abs(dn_c.imag()) > 1e-12 * std::max(1.0, std::abs(dn_c)))
        throw SimError(ErrorKind::SolverFailure,
                       "dn/dt picked up a non-negligible imaginary residue");
    C dm = (-2.0 * kI * b.delta_dprime - p.gamma) * m -
           2.0 * kI * gp * (2.0 * n + 1.0) -
           2.0 * kI * p.u_kerr * (2.0 * (3.0 * n * m) + m);
    return {dn_c.real(), dm};
}

double physicality_excess(double n, C m) {
    double tol_phys = 1e-6 * (n + 1.0) * (n + 1.0);
    return std::norm(m) - (n * (n + 1.0) + tol_phys);
}

NoiseState noise_steady_state(const SteadyStateBranch& b, const CavityParams& p,
                              double tol, NoiseSolveInfo* info) {
    p.validate();
    auto lam = eigen_fluctuation(p, b);
    double gap = -2.0 * lam.first.real();
    if (!(gap > 0.0)) {
        std::ostringstream os;
        os << "fluctuation-unstable branch (Re lambda_+ = " << lam.first.real()
           << " >= 0): correlators have no steady state";
        throw SimError(ErrorKind::UnstableLinearSystem, os.str());
    }
    double tol_eff = tol > 0.0 ? tol : std::max(1e-7 * gap, 1e-15);

    NoiseSystem sys = system_of(b, p);
    Vec3 s = Vec3::Zero();  // vacuum start
    OdeOptions opt;
    opt.rtol = 1e-8;
    opt.atol = 1e-12;
    opt.h_init = 1e-3 / p.gamma;
    double t_max = 400.0 / gap;
    auto status = integrate_rosenbrock23<3>(
        [&](const Vec3& y) { return sys.rhs(y); },
        [&](const Vec3& y) { return sys.jac(y); }, s, 0.0, t_max, opt,
        [&](double, const Vec3& y, const Vec3& f) {
            return f.norm() < tol_eff * std::max(1.0, y.norm());
        });
    if (!status.stopped) {
        std::ostringstream os;
        os << "correlator integration did not settle by t = " << status.t
           << " (" << status.steps << " steps); state (n, Re m, Im m) = ("
           << s[0] << ", " << s[1] << ", " << s[2] << "), ||rhs|| = "
           << sys.rhs(s).norm();
        throw NonConvergentError(os.str(), C(s[0], 0.0), sys.rhs(s).norm(), status.t);
    }

    Vec3 polished = s;
    int iters = newton_polish(sys, polished);
    double disagreement = (s - polished).norm() / std::max(1.0, polished.norm());
    if (disagreement > 1e-6) {
        std::ostringstream os;
        os << "time march and Newton polish disagree by " << disagreement
           << " relative (march n = " << s[0] << ", newton n = " << polished[0]
           << ")";
        throw SimError(ErrorKind::SolverFailure, os.str());
    }
    if (info) {
        info->t_settle = status.t;
        info->march_steps = status.steps;
        info->newton_iters = iters;
        info->method_disagreement = disagreement;
    }

    NoiseState out;
    out.n_fluct = polished[0];
    out.m_anom = C(polished[1], polished[2]);
    double excess = physicality_excess(out.n_fluct, out.m_anom);
    out.phys_ok = excess <= 0.0;
    out.phys_excess = std::max(excess, 0.0);
    return out;
}

SnrReport snr(const SteadyStateBranch& b, const NoiseState& noise) {
    SnrReport r;
    r.signal = b.n_mean;
    r.noise = noise.n_fluct;
    if (noise.n_fluct <= 0.0) {
        r.infinite = true;
        r.snr_db = std::numeric_limits<double>::infinity();
        return r;
    }
    r.snr_db = 10.0 * std::log10(r.signal / r.noise);
    return r;
}

std::vector<Fig4Row> fig4_curves(const CavityParams& base,
                                 const std::vector<double>& u_grid,
                                 const std::vector<double>& eps_grid) {
    std::vector<Fig4Row> rows;
    rows.reserve(u_grid.size() + eps_grid.size());
    auto eval = [&](char axis, double value) {
        Fig4Row row;
        row.axis = axis;
        row.value = value;
        CavityParams q = base;
        (axis == 'u' ? q.u_kerr : q.eps) = value;
        try {
            BranchSet set = steady_state_closed_form(q);
            const SteadyStateBranch& b = set.chosen();
            NoiseState ns = noise_steady_state(b, q);
            row.alpha2 = b.n_mean;
            row.n_fluct = ns.n_fluct;
            row.snr_db = snr(b, ns).snr_db;
            row.phys_flag = !ns.phys_ok;
        } catch (const SimError& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    };
    for (double u : u_grid) eval('u', u);
    for (double e : eps_grid) eval('e', e);
    return rows;
}

}  // namespace kerrcp
