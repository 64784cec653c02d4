#include "kerrcp/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kerrcp/ode.hpp"
#include "kerrcp/polyroots.hpp"

namespace kerrcp {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

// Newton on the fixed-point equations in (Re alpha, Im alpha). The quintic
// in x = |alpha|^2 is ill-conditioned just above the CP (the broken-symmetry
// partners have nearly equal x and alpha divides by a near-zero denominator),
// but the two fixed points are far apart in alpha-space where the Jacobian
// stays regular.
C refine_alpha(C alpha, const CavityParams& p) {
    double f_prev = std::abs(meanfield_rhs(alpha, p));
    for (int it = 0; it < 40; ++it) {
        double u = alpha.real(), v = alpha.imag();
        double dp = p.delta + 2.0 * p.u_kerr * (u * u + v * v);
        double j11 = -p.gamma / 2.0 + 4.0 * p.u_kerr * u * v;
        double j12 = dp + 4.0 * p.u_kerr * v * v - 2.0 * p.g2;
        double j21 = -dp - 4.0 * p.u_kerr * u * u - 2.0 * p.g2;
        double j22 = -p.gamma / 2.0 - 4.0 * p.u_kerr * u * v;
        C f = meanfield_rhs(alpha, p);
        double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) break;
        double du = (-f.real() * j22 + f.imag() * j12) / det;
        double dv = (-f.imag() * j11 + f.real() * j21) / det;
        C trial = alpha;
        double lam = 1.0;
        for (int k = 0; k < 30; ++k) {
            trial = alpha + lam * C(du, dv);
            if (std::abs(meanfield_rhs(trial, p)) <= f_prev) break;
            lam *= 0.5;
        }
        double f_new = std::abs(meanfield_rhs(trial, p));
        if (f_new >= f_prev && it > 0) break;
        alpha = trial;
        f_prev = f_new;
        if (f_prev <= 1e-14 * std::max(1.0, std::abs(alpha))) break;
    }
    return alpha;
}

SteadyStateBranch make_branch(C alpha, const CavityParams& p) {
    SteadyStateBranch b;
    b.alpha = alpha;
    b.n_mean = std::norm(alpha);
    EffectiveParams eff = effective_params(alpha, p);
    b.delta_prime = eff.delta_prime;
    b.delta_dprime = eff.delta_dprime;
    b.g_prime = eff.g_prime;
    b.residual = std::abs(meanfield_rhs(alpha, p));
    auto verdict = classify(p, b);
    b.mf_stable = verdict.first;
    b.fluct_stable = verdict.second;
    return b;
}

std::size_t select_branch(const std::vector<SteadyStateBranch>& branches,
                          BranchPolicy policy, C ref_alpha) {
    std::size_t best = 0;
    bool found_stable = false;
    double best_key = 0.0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (!branches[i].mf_stable) continue;
        double key = policy == BranchPolicy::Continuity
                         ? std::abs(branches[i].alpha - ref_alpha)
                         : branches[i].n_mean;
        if (!found_stable || key < best_key) {
            best = i;
            best_key = key;
            found_stable = true;
        }
    }
    return found_stable ? best : 0;  // no stable branch: report the lowest
}

// self-consistency polynomial in x = |alpha|^2, highest degree first
std::vector<double> quintic_coeffs(const CavityParams& p) {
    const double a = 2.0 * p.u_kerr;
    const double half = p.gamma / 2.0;
    const double cc = half * half - 4.0 * p.g2 * p.g2;
    const double e2 = p.eps * p.eps;
    const double dd = p.delta;
    const double e = dd * dd + cc;
    return {
        a * a * a * a,
        4.0 * a * a * a * dd,
        a * a * (6.0 * dd * dd + 2.0 * cc),
        4.0 * a * dd * e - e2 * a * a,
        e * e - 2.0 * e2 * a * (dd + 2.0 * p.g2),
        -e2 * (half * half + (dd + 2.0 * p.g2) * (dd + 2.0 * p.g2)),
    };
}

std::vector<SteadyStateBranch> branches_eps_zero(const CavityParams& p) {
    std::vector<SteadyStateBranch> out;
    out.push_back(make_branch(C(0.0, 0.0), p));
    const double half = p.gamma / 2.0;
    const double disc = 4.0 * p.g2 * p.g2 - half * half;
    if (p.u_kerr > 0.0 && disc > 0.0) {
        // |gamma/2 + i Delta'| = 2G fixes Delta', the phase pair follows
        for (double sign : {1.0, -1.0}) {
            double dp = sign * std::sqrt(disc);
            double x = (dp - p.delta) / (2.0 * p.u_kerr);
            if (x <= 0.0) continue;
            C alpha2 = -2.0 * kI * p.g2 * x / C(half, dp);
            C alpha = std::sqrt(alpha2);
            SteadyStateBranch b = make_branch(alpha, p);
            if (b.residual <= kTolRoot * std::max(1.0, std::abs(alpha)))
                out.push_back(b);
        }
    }
    return out;
}

}  // namespace

C meanfield_rhs(C alpha, const CavityParams& p) {
    double dp = p.delta + 2.0 * p.u_kerr * std::norm(alpha);
    return (C(-p.gamma / 2.0, 0.0) - kI * dp) * alpha -
           2.0 * kI * p.g2 * std::conj(alpha) + p.eps;
}

EffectiveParams effective_params(C alpha, const CavityParams& p) {
    double x = std::norm(alpha);
    return {p.delta + 2.0 * p.u_kerr * x, p.delta + 4.0 * p.u_kerr * x,
            p.g2 + p.u_kerr * alpha * alpha};
}

BranchSet steady_state_closed_form(const CavityParams& p, BranchPolicy policy,
                                   C ref_alpha) {
    p.validate();
    const double half = p.gamma / 2.0;

    std::vector<SteadyStateBranch> branches;
    if (p.eps == 0.0) {
        branches = branches_eps_zero(p);
    } else if (p.u_kerr == 0.0) {
        const double d0 = p.delta * p.delta + half * half - 4.0 * p.g2 * p.g2;
        if (d0 <= 0.0) {
            std::ostringstream os;
            os << "linear cavity (U = 0) has no steady state: "
               << "Delta^2 + (gamma/2)^2 - 4 G^2 = " << d0
               << " <= 0 (threshold G = gamma/4 at Delta = 0)";
            throw SimError(ErrorKind::UnstableLinearSystem, os.str());
        }
        C alpha = (C(half, 0.0) - kI * (p.delta + 2.0 * p.g2)) * p.eps / d0;
        branches.push_back(make_branch(alpha, p));
    } else {
        std::vector<double> roots = poly_real_nonneg_roots(quintic_coeffs(p));
        for (double x : roots) {
            double dp = p.delta + 2.0 * p.u_kerr * x;
            double den = dp * dp + half * half - 4.0 * p.g2 * p.g2;
            if (den == 0.0) continue;  // pole; cannot reconstruct alpha
            C alpha = (C(half, 0.0) - kI * (dp + 2.0 * p.g2)) * p.eps / den;
            alpha = refine_alpha(alpha, p);
            SteadyStateBranch b = make_branch(alpha, p);
            if (b.residual > kTolRoot * std::max(1.0, std::abs(alpha))) continue;
            bool duplicate = false;
            for (const auto& other : branches)
                duplicate = duplicate ||
                            std::abs(other.alpha - alpha) <=
                                1e-8 * std::max(1.0, std::abs(alpha));
            if (!duplicate) branches.push_back(b);
        }
        if (branches.empty()) {
            std::ostringstream os;
            os << "no quintic root passed residual verification (tol "
               << kTolRoot << "); raw nonnegative roots:";
            for (double x : roots) os << " " << x;
            throw SimError(ErrorKind::SolverFailure, os.str());
        }
    }

    std::sort(branches.begin(), branches.end(),
              [](const SteadyStateBranch& a, const SteadyStateBranch& b) {
                  return a.n_mean < b.n_mean;
              });
    BranchSet set;
    set.branches = std::move(branches);
    set.selected = select_branch(set.branches, policy, ref_alpha);
    return set;
}

SteadyStateBranch steady_state_time_march(const CavityParams& p, C alpha0,
                                          double t_max, double tol) {
    p.validate();
    if (!(tol > 0.0))
        throw SimError(ErrorKind::Validation, "time march 'tol' must be > 0");
    if (t_max <= 0.0) {
        double rate = std::abs(eigen_meanfield(p, p.delta).first.real());
        t_max = 1e3 * std::max(1.0 / p.gamma, 1.0 / std::max(rate, 1e-4 * p.gamma));
    }

    const double diverge = 1e9 * std::max(1.0, std::abs(alpha0));
    C y = alpha0;
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-14;
    bool blew_up = false;
    auto status = integrate_dp45(
        [&](C a) { return meanfield_rhs(a, p); }, y, 0.0, t_max, opt,
        [&](double, const C& a, const C& f) {
            if (std::abs(a) > diverge) { blew_up = true; return true; }
            return std::abs(f) < tol * std::max(1.0, std::abs(a));
        });

    double resid = std::abs(meanfield_rhs(y, p));
    if (blew_up || !status.stopped) {
        std::ostringstream os;
        os << "mean-field time march did not settle by t = " << status.t
           << (blew_up ? " (amplitude diverging)" : "") << "; |alpha| = "
           << std::abs(y) << ", residual = " << resid;
        throw NonConvergentError(os.str(), y, resid, status.t);
    }
    return make_branch(y, p);
}

}  // namespace kerrcp
