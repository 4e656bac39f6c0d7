#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace swingfreq::series {

/// Truncated power-series arithmetic on coefficient vectors c[0..n-1]
/// representing sum c[i]*x^i. All operands of a binary operation must share
/// the same length; results have that length. Exact to rounding at any order,
/// unlike high-order finite differences.
using Coeffs = std::vector<double>;

/// Cauchy product truncated to the common length.
Coeffs multiply(const Coeffs& a, const Coeffs& b);

/// base^alpha for real alpha; requires base[0] > 0.
Coeffs power(const Coeffs& base, double alpha);

/// (sin(a), cos(a)) for a series with a[0] == 0, by the ODE recurrence.
std::pair<Coeffs, Coeffs> sin_cos(const Coeffs& a);

/// Series of 2*arcsin(k*x): odd coefficients 2*C(2m,m)/(4^m*(2m+1))*k^(2m+1).
Coeffs arcsin_scaled(double k, std::size_t n);

/// Series of sqrt(1 - x^2).
Coeffs sqrt_one_minus_sq(std::size_t n);

/// Series of 1/sqrt(1 - k^2*x^2): even coefficients C(2m,m)/4^m * k^(2m).
Coeffs inv_sqrt_one_minus_k2sq(double k, std::size_t n);

}  // namespace swingfreq::series
