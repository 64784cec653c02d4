#pragma once

#include <complex>
#include <vector>

namespace kerrcp {

/// All complex roots of a real-coefficient polynomial
///   c[0]*x^n + c[1]*x^(n-1) + ... + c[n]
/// via a variable-rescaled companion matrix plus Newton polishing.
/// Exact leading zeros reduce the degree; coefficients spanning many orders
/// of magnitude (the regime here: c ratios ~1e28) are handled by solving in
/// the scaled variable y = x / s with s = (|c_n|/|c_0|)^(1/n).
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs);

/// Real nonnegative roots only: |Im| <= 1e-8 * max(1, |root|) accepted,
/// values >= -1e-12 clamped to zero, near-duplicates merged.
std::vector<double> poly_real_nonneg_roots(const std::vector<double>& coeffs);

}  // namespace kerrcp
