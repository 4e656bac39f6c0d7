#include "swingfreq/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swingfreq/series.hpp"

namespace swingfreq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double left_wall(const SmibParams& p) { return -(kPi + 2.0 * p.delta0); }

// One side of the oscillation after the s = sin(phi) substitution. The lower
// side is the mirror image of the upper one under (x, delta0) -> (-x, -delta0),
// so both share this struct with d0 = +-delta0 and amp = |turning angle|.
struct HalfSide {
    double k;         // sin(amp/2), in (0, 1)
    double amp;       // side amplitude, positive
    double d0;        // signed equilibrium angle of the mirrored problem
    double two_beta;

    // Integrand at phi in [0, pi/2). Evaluated through q = (amp - delta)/2,
    // which keeps the energy bracket free of catastrophic cancellation down
    // to amplitudes of 1e-4 and below.
    double eval(double phi) const {
        const double s = std::sin(phi), c = std::cos(phi);
        const double r = std::sqrt(1.0 - k * k * s * s);
        const double q = std::asin(k * c * c / (r + s * std::sqrt(1.0 - k * k)));
        const double h = 0.5 * (amp - q);
        const double br = 4.0 * std::sin(q) * std::cos(h + d0) * std::sin(h) -
                          2.0 * std::sin(d0) * (q - std::sin(q));
        if (!(br > 0.0))
            throw DomainError("half-period integrand: energy bracket not positive");
        return 2.0 * k * c / (std::sqrt(two_beta * br) * r);
    }

    // Analytic limit of eval as phi -> pi/2, where the raw form is 0/0.
    double limit() const {
        const double g = std::sin(amp + d0) - std::sin(d0);
        if (!(g > 0.0))
            throw DomainError("half-period integrand: energy bracket not positive");
        return 2.0 * std::sqrt(k) / std::sqrt(two_beta * std::cos(0.5 * amp) * g);
    }
};

HalfSide make_upper(const SmibParams& p, double delta_max) {
    if (!(delta_max > 0.0) || !(delta_max < barrier_deviation(p)))
        throw DomainError("delta_max must lie in (0, pi - 2*delta0)");
    return {std::sin(0.5 * delta_max), delta_max, p.delta0, 2.0 * beta(p)};
}

HalfSide make_lower(const SmibParams& p, double delta_min) {
    if (!(delta_min < 0.0) || !(delta_min > left_wall(p)))
        throw DomainError("delta_min must lie in (-(pi + 2*delta0), 0)");
    return {std::sin(-0.5 * delta_min), -delta_min, -p.delta0, 2.0 * beta(p)};
}

double half_period(const HalfSide& side, const QuadOptions& opt) {
    auto f = [&side](double phi) { return side.eval(phi); };
    if (opt.rule == QuadRule::simpson)
        return 2.0 * adaptive_simpson(f, 0.0, kHalfPi, side.eval(0.0), side.limit(),
                                      opt.rel_tol, opt.max_evals);
    return 2.0 * adaptive_gauss_legendre(f, 0.0, kHalfPi, opt.rel_tol, opt.max_evals);
}

void check_phi(double phi) {
    if (!(phi >= 0.0) || !(phi <= kHalfPi))
        throw DomainError("phi must lie in [0, pi/2]");
}

// Solves potential_energy(x) == target on one side of the well: bisection to
// a 1e-10 bracket, then Newton polish on the energy residual.
double solve_turning_angle(const SmibParams& p, double target, bool positive_side) {
    double lo, hi;
    if (positive_side) {
        lo = 0.0;
        hi = barrier_deviation(p) - 1e-12;
    } else {
        lo = left_wall(p) + 1e-12;
        hi = 0.0;
    }
    auto res = [&](double x) { return potential_energy(p, x) - target; };
    double flo = res(lo), fhi = res(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) {
        // Target within rounding of the barrier energy; the root is at the
        // bracket edge.
        return positive_side ? hi : lo;
    }
    const double lo0 = lo, hi0 = hi;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = res(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    double best = x, best_res = std::abs(res(x));
    for (int i = 0; i < 4 && best_res > 0.0; ++i) {
        const double d = p.Pmax * (std::sin(p.delta0 + x) - std::sin(p.delta0));
        if (d == 0.0) break;
        const double next = x - res(x) / d;
        if (!(next > lo0) || !(next < hi0)) break;
        x = next;
        const double r = std::abs(res(x));
        if (r < best_res) {
            best = x;
            best_res = r;
        }
    }
    return best;
}

double grid_value(double eps, double step, int i) { return eps + step * i; }

struct PointResult {
    std::optional<FaPoint> point;
    std::string warning;
};

PointResult eval_grid_point(const SmibParams& p, double delta_max, const FaMethod& method,
                            const QuadOptions& opt) {
    PointResult out;
    try {
        const double delta_min = conjugate_extreme(p, delta_max);
        const OscillationBounds b{delta_max, delta_min};
        double f;
        if (method.kind == FaMethod::Kind::series) {
            SeriesDiagnostics diag;
            f = power_series_frequency(p, b, method.n_terms, &diag);
            if (diag.tail_warning)
                out.warning = "series tail ratio " + std::to_string(diag.tail_ratio) +
                              " at delta_max=" + std::to_string(delta_max);
        } else {
            f = oscillation_frequency(p, b, opt);
        }
        out.point = FaPoint{b.oa(), f};
    } catch (const std::exception& e) {
        out.warning =
            "dropped grid point delta_max=" + std::to_string(delta_max) + ": " + e.what();
    }
    return out;
}

FaCurve assemble_curve(const SmibParams& p, const std::vector<PointResult>& results) {
    FaCurve curve;
    curve.params_snapshot = p;
    for (const auto& r : results) {
        if (r.point) curve.points.push_back(*r.point);
        if (!r.warning.empty()) curve.warnings.push_back(r.warning);
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const FaPoint& a, const FaPoint& b) { return a.oa < b.oa; });
    const double dmin_lim = solve_turning_angle(p, critical_energy(p), false);
    curve.oa_limit = 0.5 * (barrier_deviation(p) - dmin_lim);
    return curve;
}

void check_sweep_args(const SmibParams& p, int n_points, double& eps, double& step) {
    p.validate();
    if (n_points < 2) throw std::invalid_argument("fa_curve needs n_points >= 2");
    eps = 1e-3;
    const double range = barrier_deviation(p) - 2.0 * eps;
    if (!(range > 0.0))
        throw DomainError("sweep range empty: delta0 too close to pi/2");
    step = range / (n_points - 1);
}

#ifdef _OPENMP
int thread_cap() {
    int nt = omp_get_max_threads();
    if (const char* env = std::getenv("SWINGFREQ_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0 && v < nt) nt = static_cast<int>(v);
    }
    return nt < 1 ? 1 : nt;
}
#endif

}  // namespace

std::string FaMethod::name() const {
    if (kind == Kind::series) return "series(" + std::to_string(n_terms) + ")";
    return "quadrature";
}

void validate_bounds(const SmibParams& p, const OscillationBounds& b) {
    p.validate();
    if (!std::isfinite(b.delta_max) || !std::isfinite(b.delta_min))
        throw DomainError("oscillation bounds must be finite");
    if (!(b.delta_min <= 0.0) || !(b.delta_max >= 0.0))
        throw DomainError("oscillation bounds must satisfy delta_min <= 0 <= delta_max");
    if (!(b.delta_max < barrier_deviation(p)))
        throw DomainError("delta_max must stay below the barrier pi - 2*delta0");
    if (!(b.delta_min > left_wall(p)))
        throw DomainError("delta_min must stay above -(pi + 2*delta0)");
    const double mismatch =
        std::abs(potential_energy(p, b.delta_max) - potential_energy(p, b.delta_min));
    if (mismatch > 1e-9)
        throw DomainError("oscillation bounds are not energy-consistent");
}

double integrand_upper(const SmibParams& p, double delta_max, double phi) {
    p.validate();
    check_phi(phi);
    const HalfSide side = make_upper(p, delta_max);
    return phi == kHalfPi ? side.limit() : side.eval(phi);
}

double integrand_lower(const SmibParams& p, double delta_min, double phi) {
    p.validate();
    check_phi(phi);
    const HalfSide side = make_lower(p, delta_min);
    return phi == kHalfPi ? side.limit() : side.eval(phi);
}

double integrand_upper_limit(const SmibParams& p, double delta_max) {
    p.validate();
    return make_upper(p, delta_max).limit();
}

double integrand_lower_limit(const SmibParams& p, double delta_min) {
    p.validate();
    return make_lower(p, delta_min).limit();
}

double half_period_upper(const SmibParams& p, double delta_max, const QuadOptions& opt) {
    p.validate();
    return half_period(make_upper(p, delta_max), opt);
}

double half_period_lower(const SmibParams& p, double delta_min, const QuadOptions& opt) {
    p.validate();
    return half_period(make_lower(p, delta_min), opt);
}

double oscillation_frequency(const SmibParams& p, const OscillationBounds& b,
                             const QuadOptions& opt) {
    validate_bounds(p, b);
    if (b.delta_max == 0.0 || b.delta_min == 0.0) return natural_frequency(p);
    return 1.0 / (half_period(make_upper(p, b.delta_max), opt) +
                  half_period(make_lower(p, b.delta_min), opt));
}

OscillationBounds extreme_points(const SmibParams& p, const SystemState& init) {
    p.validate();
    if (!std::isfinite(init.delta_dev) || !std::isfinite(init.speed_dev_rad))
        throw DomainError("initial state must be finite");
    const double energy =
        kinetic_energy(p, init.speed_dev_rad) + potential_energy(p, init.delta_dev);
    if (energy >= critical_energy(p))
        throw InstabilityError("unstable: energy exceeds critical");
    if (energy <= 0.0) return {0.0, 0.0};
    return {solve_turning_angle(p, energy, true), solve_turning_angle(p, energy, false)};
}

double conjugate_extreme(const SmibParams& p, double delta_max) {
    p.validate();
    if (!(delta_max > 0.0) || !(delta_max < barrier_deviation(p)))
        throw DomainError("delta_max must lie in (0, pi - 2*delta0)");
    return solve_turning_angle(p, potential_energy(p, delta_max), false);
}

SeriesApprox series_coefficients(const SmibParams& p, const OscillationBounds& b,
                                 int n_terms) {
    validate_bounds(p, b);
    if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
    if (!(b.delta_max > 0.0) || !(b.delta_min < 0.0))
        throw DomainError("series coefficients need a nondegenerate oscillation");

    const double two_beta = 2.0 * beta(p);
    const std::size_t n = static_cast<std::size_t>(n_terms);
    const double sd = std::sin(p.delta0), cd = std::cos(p.delta0);

    auto integrand_coeffs = [&](double turning, bool lower) {
        const double k = lower ? -std::sin(0.5 * turning) : std::sin(0.5 * turning);
        const auto angle = series::arcsin_scaled(k, n);
        const auto [sin_a, cos_a] = series::sin_cos(angle);
        series::Coeffs br(n);
        for (std::size_t i = 0; i < n; ++i)
            br[i] = cd * cos_a[i] - sd * sin_a[i] + sd * angle[i];
        br[0] -= std::cos(turning + p.delta0) + turning * sd;
        for (auto& x : br) x *= two_beta;
        auto f = series::multiply(series::multiply(series::power(br, -0.5),
                                                   series::sqrt_one_minus_sq(n)),
                                  series::inv_sqrt_one_minus_k2sq(k, n));
        for (auto& x : f) x *= 2.0 * k;
        return f;
    };

    SeriesApprox out;
    out.n_terms = n_terms;
    out.coefficients_upper = integrand_coeffs(b.delta_max, false);
    out.coefficients_lower = integrand_coeffs(b.delta_min, true);
    return out;
}

double power_series_frequency(const SmibParams& p, const OscillationBounds& b, int n_terms,
                              SeriesDiagnostics* diag) {
    validate_bounds(p, b);
    if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
    if (diag) *diag = {};
    if (b.delta_max == 0.0 || b.delta_min == 0.0) return natural_frequency(p);

    const SeriesApprox sa = series_coefficients(p, b, n_terms);
    double wallis_prev = kHalfPi, wallis = 1.0;  // W_0, W_1
    double sum = 0.0, last = 0.0;
    double sign = 1.0;
    for (int i = 0; i < n_terms; ++i) {
        double w;
        if (i == 0) {
            w = wallis_prev;
        } else if (i == 1) {
            w = wallis;
        } else {
            const double next = wallis_prev * (i - 1) / static_cast<double>(i);
            wallis_prev = wallis;
            wallis = next;
            w = next;
        }
        last = 2.0 * (sa.coefficients_upper[i] + sign * sa.coefficients_lower[i]) * w;
        sum += last;
        sign = -sign;
    }
    if (!(sum > 0.0)) throw DomainError("series partial sum not positive");
    if (diag) {
        diag->tail_ratio = std::abs(last) / sum;
        diag->tail_warning = diag->tail_ratio > 1e-6;
    }
    return 1.0 / sum;
}

double closed_form_frequency_n1(const SmibParams& p, const OscillationBounds& b) {
    validate_bounds(p, b);
    if (b.delta_max == 0.0 || b.delta_min == 0.0) return natural_frequency(p);
    const double m2_max = potential_energy(p, b.delta_max) / p.Pmax;
    const double m2_min = potential_energy(p, b.delta_min) / p.Pmax;
    if (!(m2_max > 0.0) || !(m2_min > 0.0))
        throw DomainError("closed form: non-positive radicand in m(x)");
    const double denom = std::sin(0.5 * b.delta_max) / std::sqrt(m2_max) +
                         std::sin(-0.5 * b.delta_min) / std::sqrt(m2_min);
    return std::sqrt(beta(p)) / (std::sqrt(2.0) * kPi * denom);
}

FaCurve fa_curve_serial(const SmibParams& p, int n_points, const FaMethod& method,
                        const QuadOptions& opt) {
    double eps, step;
    check_sweep_args(p, n_points, eps, step);
    std::vector<PointResult> results(n_points);
    for (int i = 0; i < n_points; ++i)
        results[i] = eval_grid_point(p, grid_value(eps, step, i), method, opt);
    return assemble_curve(p, results);
}

FaCurve fa_curve(const SmibParams& p, int n_points, const FaMethod& method,
                 const QuadOptions& opt) {
#ifdef _OPENMP
    double eps, step;
    check_sweep_args(p, n_points, eps, step);
    std::vector<PointResult> results(n_points);
    const int nt = thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < n_points; ++i)
        results[i] = eval_grid_point(p, grid_value(eps, step, i), method, opt);
    return assemble_curve(p, results);
#else
    return fa_curve_serial(p, n_points, method, opt);
#endif
}

}  // namespace swingfreq
