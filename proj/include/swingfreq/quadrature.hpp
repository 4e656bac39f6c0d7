#pragma once

#include <functional>

namespace swingfreq {

/// Quadrature rule selector for the half-period integrals.
enum class QuadRule {
    gauss_legendre,  ///< adaptive 15-point Gauss-Legendre panels (default)
    simpson,         ///< adaptive Simpson using analytic endpoint values
};

struct QuadOptions {
    QuadRule rule = QuadRule::gauss_legendre;
    double rel_tol = 1e-10;     ///< target relative tolerance of the integral
    long max_evals = 1 << 20;   ///< integrand-evaluation cap before giving up
};

/// Integrates f over [a, b] with adaptive 15-point Gauss-Legendre panels.
/// Interior nodes only: the endpoints are never sampled, so f may be
/// undefined (0/0) there. Panel error is estimated by halving. Throws
/// ConvergenceError when the evaluation cap is exceeded.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-10, long max_evals = 1 << 20);

/// Integrates f over [a, b] with adaptive Simpson refinement. The endpoint
/// values fa and fb are supplied by the caller (analytic limits where the
/// raw expression is 0/0). Throws ConvergenceError at the evaluation cap.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fb, double rel_tol = 1e-10, long max_evals = 1 << 20);

}  // namespace swingfreq
