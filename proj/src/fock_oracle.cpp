#include "kerrcp/fock_oracle.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "kerrcp/fluctuations.hpp"
#include "kerrcp/meanfield.hpp"
#include "kerrcp/ode.hpp"

namespace kerrcp {

namespace {

using C = std::complex<double>;
using SpMat = Eigen::SparseMatrix<C>;
using Triplet = Eigen::Triplet<C>;
using DenseC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

// ladder operator in the number basis: a[n-1, n] = sqrt(n)
SpMat ladder(int d) {
    std::vector<Triplet> t;
    t.reserve(d);
    for (int n = 1; n < d; ++n) t.emplace_back(n - 1, n, C(std::sqrt(double(n)), 0.0));
    SpMat a(d, d);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

// sparse Kronecker product (column-major vec convention)
SpMat kron(const SpMat& A, const SpMat& B) {
    SpMat out(A.rows() * B.rows(), A.cols() * B.cols());
    std::vector<Triplet> t;
    t.reserve(std::size_t(A.nonZeros()) * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka)
        for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
            for (int kb = 0; kb < B.outerSize(); ++kb)
                for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
                    t.emplace_back(int(ia.row() * B.rows() + ib.row()),
                                   int(ia.col() * B.cols() + ib.col()),
                                   ia.value() * ib.value());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

SpMat identity(int d) {
    SpMat i(d, d);
    i.setIdentity();
    return i;
}

struct FockOps {
    SpMat a, ad, num, kerr, h;
};

FockOps build_ops(const CavityParams& p, int d) {
    FockOps o;
    o.a = ladder(d);
    o.ad = SpMat(o.a.adjoint());
    o.num = SpMat(o.ad * o.a);
    o.kerr = SpMat(o.ad * o.ad * o.a * o.a);
    const C i{0.0, 1.0};
    o.h = SpMat(p.delta * o.num + p.u_kerr * o.kerr +
                i * p.eps * SpMat(o.ad - o.a) +
                p.g2 * SpMat(SpMat(o.ad * o.ad) + SpMat(o.a * o.a)));
    return o;
}

// vectorized Liouvillian, column-major: vec(A X B) = (B^T kron A) vec(X)
SpMat build_liouvillian(const CavityParams& p, const FockOps& o, int d) {
    const C i{0.0, 1.0};
    SpMat id = identity(d);
    SpMat ht = SpMat(o.h.transpose());
    SpMat at = SpMat(o.a.conjugate());  // (a+)^T with real a
    SpMat numt = SpMat(o.num.transpose());
    SpMat L = SpMat(-i * (kron(id, o.h) - kron(ht, id))) +
              p.gamma * SpMat(kron(at, o.a) - 0.5 * kron(id, o.num) -
                              0.5 * kron(numt, id));
    return L;
}

struct Observables {
    C ea;
    double en;
    C eaa;
    double purity;
    double tail;
    double min_eig;
    double herm_defect;
    double trace_defect;
};

Observables observables_of(DenseC& rho, const FockOps& o, int d) {
    Observables obs;
    obs.trace_defect = std::abs(rho.trace() - C(1.0, 0.0));
    obs.herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    rho = 0.5 * (rho + DenseC(rho.adjoint()));
    rho /= rho.trace().real();
    obs.ea = (DenseC(o.a) * rho).trace();
    obs.en = (DenseC(o.num) * rho).trace().real();
    obs.eaa = (DenseC(SpMat(o.a * o.a)) * rho).trace();
    obs.purity = (rho * rho).trace().real();
    double p_top = rho(d - 1, d - 1).real() + rho(d - 2, d - 2).real();
    obs.tail = p_top;
    Eigen::SelfAdjointEigenSolver<DenseC> es(rho, Eigen::EigenvaluesOnly);
    obs.min_eig = es.eigenvalues().minCoeff();
    return obs;
}

OracleResult result_from(const Observables& obs, int d, double residual) {
    OracleResult r;
    r.expect_a = obs.ea;
    r.expect_n = obs.en;
    r.n_fluct = obs.en - std::norm(obs.ea);
    r.m_anom = obs.eaa - obs.ea * obs.ea;
    r.purity = obs.purity;
    r.tail_mass = obs.tail;
    r.cutoff_used = d;
    r.residual = residual;
    return r;
}

OracleResult solve_at_cutoff(const CavityParams& p, int d) {
    FockOps o = build_ops(p, d);
    SpMat L = build_liouvillian(p, o, d);

    // replace row 0 with the trace constraint Tr rho = 1
    SpMat Lt(L.rows(), L.cols());
    {
        std::vector<Triplet> t;
        t.reserve(L.nonZeros() + d);
        for (int k = 0; k < L.outerSize(); ++k)
            for (SpMat::InnerIterator it(L, k); it; ++it)
                if (it.row() != 0) t.emplace_back(int(it.row()), int(it.col()), it.value());
        for (int i = 0; i < d; ++i) t.emplace_back(0, i * (d + 1), C(1.0, 0.0));
        Lt.setFromTriplets(t.begin(), t.end());
    }
    Lt.makeCompressed();

    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(Lt);
    lu.factorize(Lt);
    if (lu.info() != Eigen::Success)
        throw SimError(ErrorKind::DegenerateNullSpace,
                       "Liouvillian factorization failed (numerically degenerate "
                       "null space or exactly singular trace-constrained system)");
    VecC b = VecC::Zero(d * d);
    b[0] = C(1.0, 0.0);
    VecC x = lu.solve(b);

    // residual against the unmodified Liouvillian flags a bogus null vector
    double resid = (L * x).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff());
    DenseC rho = Eigen::Map<DenseC>(x.data(), d, d);
    Observables obs = observables_of(rho, o, d);
    if (resid > 1e-7 * p.gamma * d) {
        std::ostringstream os;
        os << "steady-state null vector residual " << resid
           << " too large at cutoff " << d
           << " (non-unique null space or ill-conditioned regime)";
        throw SimError(ErrorKind::DegenerateNullSpace, os.str());
    }
    if (obs.herm_defect > 1e-8 || obs.min_eig < -1e-8 || obs.trace_defect > 1e-8) {
        std::ostringstream os;
        os << "solved state violates density-matrix invariants: herm defect "
           << obs.herm_defect << ", min eigenvalue " << obs.min_eig
           << ", trace defect " << obs.trace_defect;
        throw SimError(ErrorKind::SolverFailure, os.str());
    }
    return result_from(obs, d, resid);
}

}  // namespace

void FockConfig::validate() const {
    if (cutoff < 2)
        throw SimError(ErrorKind::Validation, "FockConfig.cutoff must be >= 2");
    if (!(tail_tol > 0.0) || tail_tol > 1e-2)
        throw SimError(ErrorKind::Validation, "FockConfig.tail_tol must be in (0, 1e-2]");
    if (hard_cap < cutoff)
        throw SimError(ErrorKind::Validation, "FockConfig.hard_cap must be >= cutoff");
}

OracleResult lindblad_steady_state(const CavityParams& p, const FockConfig& cfg) {
    p.validate();
    cfg.validate();
    int d = cfg.cutoff;
    bool have_prev = false;
    double prev_n = 0.0;
    for (;;) {
        OracleResult r = solve_at_cutoff(p, d);
        if (r.tail_mass <= cfg.tail_tol) return r;
        if (have_prev &&
            std::abs(r.expect_n - prev_n) < 1e-6 * std::max(std::abs(r.expect_n), 1e-300))
            return r;
        if (!cfg.auto_grow || 2 * d > cfg.hard_cap) {
            std::ostringstream os;
            os << "regime too hot for oracle: tail mass " << r.tail_mass
               << " > tail_tol " << cfg.tail_tol << " at cutoff " << d
               << (cfg.auto_grow ? " (hard cap reached)" : " (auto_grow off)");
            throw SimError(ErrorKind::OracleInfeasible, os.str());
        }
        prev_n = r.expect_n;
        have_prev = true;
        d *= 2;
    }
}

OracleResult lindblad_propagate(const CavityParams& p, int cutoff, double t_max,
                                double settle_tol) {
    p.validate();
    if (cutoff < 2)
        throw SimError(ErrorKind::Validation, "cutoff must be >= 2");
    const int d = cutoff;
    FockOps o = build_ops(p, d);
    SpMat L = build_liouvillian(p, o, d);

    VecC y = VecC::Zero(d * d);
    y[0] = C(1.0, 0.0);  // vacuum |0><0|
    OdeOptions opt;
    opt.rtol = 1e-11;
    opt.atol = 1e-14;
    opt.h_init = 1e-3 / p.gamma;
    auto status = integrate_dp45(
        [&](const VecC& v) { return VecC(L * v); }, y, 0.0, t_max, opt,
        [&](double, const VecC&, const VecC& f) { return f.norm() < settle_tol; });
    double resid = (L * y).cwiseAbs().maxCoeff();
    if (!status.stopped) {
        std::ostringstream os;
        os << "Lindblad propagation did not settle by t = " << status.t
           << "; ||L rho|| = " << resid;
        throw NonConvergentError(os.str(), C(resid, 0.0), resid, status.t);
    }
    DenseC rho = Eigen::Map<DenseC>(y.data(), d, d);
    Observables obs = observables_of(rho, o, d);
    return result_from(obs, d, resid);
}

DiscrepancyReport compare_with_meanfield(const CavityParams& p, const FockConfig& cfg) {
    DiscrepancyReport rep;
    rep.oracle = lindblad_steady_state(p, cfg);

    BranchSet set = steady_state_closed_form(p);
    const SteadyStateBranch& b = set.chosen();
    NoiseState ns = noise_steady_state(b, p);

    rep.mf_alpha = b.alpha;
    rep.mf_n_fluct = ns.n_fluct;
    rep.mf_n_total = b.n_mean + ns.n_fluct;  // <a+ a> = |alpha|^2 + <da+ da>
    rep.mf_m_anom = ns.m_anom;

    auto rel = [](double num, double den) { return num / std::max(std::abs(den), 1e-9); };
    rep.rel_a = rel(std::abs(rep.mf_alpha - rep.oracle.expect_a),
                    std::abs(rep.oracle.expect_a));
    rep.rel_n_total = rel(std::abs(rep.mf_n_total - rep.oracle.expect_n),
                          rep.oracle.expect_n);
    rep.rel_n_fluct = rel(std::abs(rep.mf_n_fluct - rep.oracle.n_fluct),
                          rep.oracle.n_fluct);
    rep.rel_m_anom = rel(std::abs(rep.mf_m_anom - rep.oracle.m_anom),
                         std::abs(rep.oracle.m_anom));
    rep.u_over_gamma = p.u_kerr / p.gamma;
    rep.validity_un_g = p.g2 > 0.0 ? p.u_kerr * b.n_mean / p.g2 : 0.0;
    return rep;
}

}  // namespace kerrcp
