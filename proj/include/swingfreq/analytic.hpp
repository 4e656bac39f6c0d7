#pragma once

#include <string>
#include <vector>

#include "swingfreq/quadrature.hpp"
#include "swingfreq/smib.hpp"

namespace swingfreq {

/// Turning points of one conservative oscillation: delta_min <= 0 <= delta_max
/// with equal potential energy on both sides.
struct OscillationBounds {
    double delta_max = 0.0;
    double delta_min = 0.0;

    /// Oscillation amplitude (delta_max - delta_min)/2.
    double oa() const { return 0.5 * (delta_max - delta_min); }
};

/// Checks range invariants and the equal-energy condition (within 1e-9
/// per-unit, loose enough for round-tripped solver output). Throws
/// DomainError on violation.
void validate_bounds(const SmibParams& p, const OscillationBounds& b);

/// One sample of the frequency-amplitude characteristic.
struct FaPoint {
    double oa = 0.0;  ///< amplitude (rad)
    double f = 0.0;   ///< oscillation frequency (Hz)
};

/// Frequency evaluation method for the F-A sweep.
struct FaMethod {
    enum class Kind { quadrature, series };
    Kind kind = Kind::quadrature;
    int n_terms = 8;  ///< series order when kind == series

    std::string name() const;  ///< "quadrature" or "series(N)"
};

/// Frequency-amplitude curve: samples sorted by increasing amplitude plus the
/// stability-limit amplitude where the frequency trends to zero.
struct FaCurve {
    std::vector<FaPoint> points;
    double oa_limit = 0.0;
    SmibParams params_snapshot;
    std::vector<std::string> warnings;  ///< dropped grid points, series tail notes
};

/// Taylor coefficients of the upper/lower half-period integrands in s = sin(phi)
/// about 0. The leading coefficient equals the integrand at phi = 0.
struct SeriesApprox {
    int n_terms = 0;
    std::vector<double> coefficients_upper;
    std::vector<double> coefficients_lower;
};

/// Convergence bookkeeping for the truncated series sum.
struct SeriesDiagnostics {
    double tail_ratio = 0.0;   ///< |last retained term| / |partial sum|
    bool tail_warning = false; ///< tail_ratio above 1e-6, truncation suspect
};

// ==== half-period integrands =============================================

/// Upper-half integrand after the s = sin(phi) substitution, evaluated at
/// phi in [0, pi/2]; k = sin(delta_max/2). At phi = pi/2 the removable
/// singularity is replaced by its analytic limit. Throws DomainError when
/// the energy bracket is not positive at an interior phi.
double integrand_upper(const SmibParams& p, double delta_max, double phi);

/// Lower-half integrand magnitude with k = -sin(delta_min/2) > 0; phi is the
/// normalized integration variable |phi| in [0, pi/2].
double integrand_lower(const SmibParams& p, double delta_min, double phi);

/// Analytic phi -> pi/2 limits of the integrands (exposed for testing).
double integrand_upper_limit(const SmibParams& p, double delta_max);
double integrand_lower_limit(const SmibParams& p, double delta_min);

// ==== half periods and oscillation frequency =============================

/// Time spent above the equilibrium in one cycle:
/// 2 * integral of integrand_upper over [0, pi/2].
double half_period_upper(const SmibParams& p, double delta_max,
                         const QuadOptions& opt = {});

/// Time spent below the equilibrium in one cycle.
double half_period_lower(const SmibParams& p, double delta_min,
                         const QuadOptions& opt = {});

/// Oscillation frequency 1/(T_upper + T_lower) (Hz). Degenerate zero-width
/// bounds return natural_frequency.
double oscillation_frequency(const SmibParams& p, const OscillationBounds& b,
                             const QuadOptions& opt = {});

// ==== turning points ======================================================

/// Turning points reached from an initial state, by energy conservation:
/// speed_dev^2 = 2*beta*[cos(delta0+dd0) - cos(delta0+x) + (dd0-x)*sin(delta0)]
/// solved for x on each side of 0 (bisection then Newton polish, energy
/// residual below 1e-12). Throws InstabilityError when the initial energy
/// reaches critical_energy.
OscillationBounds extreme_points(const SmibParams& p, const SystemState& init);

/// The unique delta_min < 0 with the same potential energy as delta_max.
double conjugate_extreme(const SmibParams& p, double delta_max);

// ==== power-series approximation ==========================================

/// Taylor coefficients of both integrands in s about 0, by truncated
/// power-series arithmetic (exact to rounding at any order).
SeriesApprox series_coefficients(const SmibParams& p, const OscillationBounds& b,
                                 int n_terms);

/// Frequency from the order-N truncated series: term i contributes
/// 2*(c_upper[i] + (-1)^i * c_lower[i]) * W_i with Wallis W_i. Fills *diag
/// (when given) with the tail check; the warning threshold is 1e-6 of the
/// running sum.
double power_series_frequency(const SmibParams& p, const OscillationBounds& b,
                              int n_terms, SeriesDiagnostics* diag = nullptr);

/// One-term closed form:
/// sqrt(beta)/(sqrt(2)*pi) / (sin(dmax/2)/m(dmax) + sin(-dmin/2)/m(dmin)),
/// m(x) = sqrt(cos(delta0) - cos(delta0+x) - x*sin(delta0)). Identical to
/// power_series_frequency with n_terms = 1.
double closed_form_frequency_n1(const SmibParams& p, const OscillationBounds& b);

// ==== F-A curve ===========================================================

/// Sweeps delta_max uniformly over [1e-3, pi - 2*delta0 - 1e-3] at n_points
/// grid values, pairing each with its conjugate minimum. Failed grid points
/// are dropped with a warning, never interpolated. oa_limit is evaluated at
/// the barrier energy. Evaluates grid points in parallel when OpenMP is
/// available (SWINGFREQ_THREADS caps the thread count); the result is
/// bit-identical to fa_curve_serial regardless of thread count.
FaCurve fa_curve(const SmibParams& p, int n_points, const FaMethod& method = {},
                 const QuadOptions& opt = {});

/// Single-thread reference implementation of the same sweep.
FaCurve fa_curve_serial(const SmibParams& p, int n_points, const FaMethod& method = {},
                        const QuadOptions& opt = {});

}  // namespace swingfreq
