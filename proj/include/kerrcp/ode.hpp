#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include <Eigen/Dense>

namespace kerrcp {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    double h_init = 1e-4;
    double h_min = 1e-14;
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 500000000;
};

struct OdeStatus {
    bool stopped = false;  // stop predicate fired (vs t_end / step budget reached)
    double t = 0.0;
    std::size_t steps = 0;
};

namespace detail {
inline double state_norm(double x) { return std::abs(x); }
inline double state_norm(const std::complex<double>& x) { return std::abs(x); }
template <typename Derived>
double state_norm(const Eigen::MatrixBase<Derived>& x) { return x.norm(); }
}  // namespace detail

/// Adaptive embedded Dormand-Prince 5(4) with FSAL and PI step control.
/// Integrates y' = rhs(y) (autonomous) from t0; stops when stop(t, y, f) is
/// true after an accepted step, or when t reaches t_end.
template <class State, class Rhs, class StopFn>
OdeStatus integrate_dp45(Rhs&& rhs, State& y, double t0, double t_end,
                         const OdeOptions& opt, StopFn&& stop) {
    using detail::state_norm;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - bhat, for the embedded 4th-order error estimate
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    double h = std::min(opt.h_init, opt.h_max);
    State k1 = rhs(y);
    double prev_err = 1.0;
    OdeStatus st;
    for (st.steps = 0; st.steps < opt.max_steps; ++st.steps) {
        if (t >= t_end) { st.t = t; return st; }
        h = std::min(h, t_end - t);
        State k2 = rhs(State(y + h * (a21 * k1)));
        State k3 = rhs(State(y + h * (a31 * k1 + a32 * k2)));
        State k4 = rhs(State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        State k5 = rhs(State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        State k6 = rhs(State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        State ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        State k7 = rhs(ynew);
        State errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double scale = opt.atol + opt.rtol * std::max(state_norm(y), state_norm(ynew));
        double err = state_norm(errv) / scale;
        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            if (stop(t, y, k1)) { st.stopped = true; st.t = t; return st; }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                         std::pow(prev_err, 0.4 / 5.0);
            h = std::min(h * std::clamp(fac, 0.2, 5.0), opt.h_max);
            prev_err = std::max(err, 1e-10);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -1.0 / 5.0), 0.1, 1.0);
        }
        if (h < opt.h_min) { st.t = t; return st; }
    }
    st.t = t;
    return st;
}

/// Linearly-implicit Rosenbrock 2(3) pair (ode23s scheme), L-stable.
/// For small stiff systems with an analytic Jacobian; the step size is free
/// to grow to the slow-manifold scale, so relaxation problems whose settling
/// horizon is ~1e9 fast timescales stay cheap.
///
/// State is a fixed-size Eigen vector; jac(y) returns the matching matrix.
template <int N, class Rhs, class Jac, class StopFn>
OdeStatus integrate_rosenbrock23(Rhs&& rhs, Jac&& jac,
                                 Eigen::Matrix<double, N, 1>& y, double t0,
                                 double t_end, const OdeOptions& opt,
                                 StopFn&& stop) {
    using Vec = Eigen::Matrix<double, N, 1>;
    using Mat = Eigen::Matrix<double, N, N>;
    const double d = 1.0 / (2.0 + std::sqrt(2.0));
    const double e32 = 6.0 + std::sqrt(2.0);

    double t = t0;
    double h = std::min(opt.h_init, opt.h_max);
    OdeStatus st;
    Vec f0 = rhs(y);
    for (st.steps = 0; st.steps < opt.max_steps; ++st.steps) {
        if (t >= t_end) { st.t = t; return st; }
        h = std::min(h, t_end - t);
        Mat w = Mat::Identity() - h * d * jac(y);
        Eigen::PartialPivLU<Mat> lu(w);
        Vec k1 = lu.solve(f0);
        Vec f1 = rhs(Vec(y + 0.5 * h * k1));
        Vec k2 = lu.solve(Vec(f1 - k1)) + k1;
        Vec ynew = y + h * k2;
        Vec f2 = rhs(ynew);
        Vec k3 = lu.solve(Vec(f2 - e32 * (k2 - f1) - 2.0 * (k1 - f0)));
        Vec errv = (h / 6.0) * (k1 - 2.0 * k2 + k3);
        double scale = opt.atol + opt.rtol * std::max(y.norm(), ynew.norm());
        double err = errv.norm() / scale;
        if (err <= 1.0) {
            t += h;
            y = ynew;
            f0 = f2;
            if (stop(t, y, f0)) { st.stopped = true; st.t = t; return st; }
            h = std::min(h * std::clamp(0.9 * std::pow(std::max(err, 1e-12), -1.0 / 3.0), 0.2, 8.0),
                         opt.h_max);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -1.0 / 3.0), 0.1, 1.0);
        }
        if (h < opt.h_min) { st.t = t; return st; }
    }
    st.t = t;
    return st;
}

}  // namespace kerrcp
