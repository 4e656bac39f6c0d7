#include "swingfreq/quadrature.hpp"

#include <cmath>
#include <utility>

#include "swingfreq/errors.hpp"

namespace swingfreq {
namespace {

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr int kGlPoints = 15;
constexpr double kGlNode[kGlPoints] = {
    -0.9879925180204854285, -0.9372733924007059043, -0.8482065834104272162,
    -0.7244177313601700474, -0.5709721726085388475, -0.3941513470775633699,
    -0.2011940939974345223, 0.0,                    0.2011940939974345223,
    0.3941513470775633699,  0.5709721726085388475,  0.7244177313601700474,
    0.8482065834104272162,  0.9372733924007059043,  0.9879925180204854285};
constexpr double kGlWeight[kGlPoints] = {
    0.03075324199611726835, 0.07036604748810812471, 0.107159220467171935,
    0.1395706779261543144,  0.1662692058169939336,  0.186161000015562211,
    0.1984314853271115765,  0.2025782419255612729,  0.1984314853271115765,
    0.186161000015562211,   0.1662692058169939336,  0.1395706779261543144,
    0.107159220467171935,   0.07036604748810812471, 0.03075324199611726835};

double gl15(const std::function<double(double)>& f, double a, double b, long& evals,
            long max_evals) {
    evals += kGlPoints;
    if (evals > max_evals) throw ConvergenceError("quadrature evaluation cap exceeded");
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < kGlPoints; ++i) acc += kGlWeight[i] * f(mid + half * kGlNode[i]);
    return acc * half;
}

double gl_refine(const std::function<double(double)>& f, double a, double b, double whole,
                 double abs_tol, long& evals, long max_evals, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl15(f, a, mid, evals, max_evals);
    const double right = gl15(f, mid, b, evals, max_evals);
    const double split = left + right;
    if (std::abs(split - whole) <= abs_tol || depth >= 48) return split;
    return gl_refine(f, a, mid, left, 0.5 * abs_tol, evals, max_evals, depth + 1) +
           gl_refine(f, mid, b, right, 0.5 * abs_tol, evals, max_evals, depth + 1);
}

double simpson_sum(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_refine(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double abs_tol, long& evals,
                      long max_evals, int depth) {
    evals += 2;
    if (evals > max_evals) throw ConvergenceError("quadrature evaluation cap exceeded");
    const double mid = 0.5 * (a + b);
    const double flm = f(0.5 * (a + mid));
    const double frm = f(0.5 * (mid + b));
    const double left = simpson_sum(fa, flm, fm, a, mid);
    const double right = simpson_sum(fm, frm, fb, mid, b);
    const double split = left + right;
    // Richardson factor 15 for Simpson halving.
    if (std::abs(split - whole) <= 15.0 * abs_tol || depth >= 48)
        return split + (split - whole) / 15.0;
    return simpson_refine(f, a, mid, fa, flm, fm, left, 0.5 * abs_tol, evals, max_evals,
                          depth + 1) +
           simpson_refine(f, mid, b, fm, frm, fb, right, 0.5 * abs_tol, evals, max_evals,
                          depth + 1);
}

}  // namespace

double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double rel_tol, long max_evals) {
    long evals = 0;
    const double whole = gl15(f, a, b, evals, max_evals);
    const double scale = std::max(std::abs(whole), 1e-300);
    return gl_refine(f, a, b, whole, rel_tol * scale, evals, max_evals, 0);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double rel_tol, long max_evals) {
    // Uniform composite bootstrap before refining: a single 3-point estimate
    // can land beside a narrow feature (or on a node of an oscillatory
    // integrand) and yield a near-zero magnitude scale, which would drive
    // every panel to the evaluation cap.
    constexpr int kPanels = 8;
    long evals = 0;
    double x[2 * kPanels + 1];
    double y[2 * kPanels + 1];
    const double h = (b - a) / (2 * kPanels);
    x[0] = a;
    y[0] = fa;
    x[2 * kPanels] = b;
    y[2 * kPanels] = fb;
    for (int i = 1; i < 2 * kPanels; ++i) {
        if (++evals > max_evals) throw ConvergenceError("quadrature evaluation cap exceeded");
        x[i] = a + h * i;
        y[i] = f(x[i]);
    }
    double scale = 0.0;
    for (int i = 0; i < kPanels; ++i)
        scale += std::abs(simpson_sum(y[2 * i], y[2 * i + 1], y[2 * i + 2], x[2 * i],
                                      x[2 * i + 2]));
    scale = std::max(scale, 1e-300);
    const double panel_tol = rel_tol * scale / kPanels;
    double sum = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double panel =
            simpson_sum(y[2 * i], y[2 * i + 1], y[2 * i + 2], x[2 * i], x[2 * i + 2]);
        sum += simpson_refine(f, x[2 * i], x[2 * i + 2], y[2 * i], y[2 * i + 1],
                              y[2 * i + 2], panel, panel_tol, evals, max_evals, 0);
    }
    return sum;
}

}  // namespace swingfreq
