#include "kerrcp/polyroots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace kerrcp {

namespace {

using C = std::complex<double>;

C poly_eval(const std::vector<double>& c, C x) {
    C v = 0.0;
    for (double ck : c) v = v * x + ck;
    return v;
}

C poly_deriv_eval(const std::vector<double>& c, C x) {
    const int n = static_cast<int>(c.size()) - 1;
    C v = 0.0;
    for (int i = 0; i < n; ++i) v = v * x + c[i] * double(n - i);
    return v;
}

}  // namespace

std::vector<C> poly_roots(const std::vector<double>& coeffs_in) {
    std::vector<double> c = coeffs_in;
    // strip exact leading zeros (degree collapse, e.g. U == 0)
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == 0.0) ++lead;
    c.erase(c.begin(), c.begin() + lead);
    if (c.size() <= 1) return {};

    const int n = static_cast<int>(c.size()) - 1;
    if (n == 1) return {C(-c[1] / c[0])};

    // balance: solve in y = x/s so the companion entries stay O(1)
    double s = 1.0;
    if (c[n] != 0.0)
        s = std::pow(std::abs(c[n] / c[0]), 1.0 / n);
    if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;

    std::vector<double> b(c.size());
    double pw = 1.0;
    for (int i = n; i >= 0; --i) {
        b[i] = c[i] * pw;  // coefficient of y^(n-i)
        pw *= s;
    }

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(0, i) = -b[i + 1] / b[0];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);

    std::vector<C> roots;
    roots.reserve(n);
    for (int i = 0; i < n; ++i) {
        C x = es.eigenvalues()[i] * s;
        // Newton polish on the original polynomial
        for (int it = 0; it < 4; ++it) {
            C f = poly_eval(c, x);
            C df = poly_deriv_eval(c, x);
            if (std::abs(df) == 0.0) break;
            C step = f / df;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            if (std::abs(step) > 0.5 * std::max(1.0, std::abs(x))) break;
            x -= step;
        }
        roots.push_back(x);
    }
    return roots;
}

std::vector<double> poly_real_nonneg_roots(const std::vector<double>& coeffs) {
    std::vector<double> out;
    for (const C& r : poly_roots(coeffs)) {
        if (std::abs(r.imag()) > 1e-8 * std::max(1.0, std::abs(r))) continue;
        double x = r.real();
        if (x < -1e-12) continue;
        out.push_back(std::max(x, 0.0));
    }
    std::sort(out.begin(), out.end());
    // merge near-duplicates (companion can split a multiple root)
    std::vector<double> merged;
    for (double x : out) {
        if (!merged.empty() && x - merged.back() <= 1e-9 * std::max(1.0, x)) continue;
        merged.push_back(x);
    }
    return merged;
}

}  // namespace kerrcp
