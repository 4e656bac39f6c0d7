#pragma once

#include <optional>
#include <vector>

#include "swingfreq/analytic.hpp"
#include "swingfreq/sim.hpp"

namespace swingfreq {

/// Externally measured angle time series. Sampling may be non-uniform but
/// times must be strictly increasing and at least 8 samples long.
struct MeasuredSeries {
    std::vector<double> t;
    std::vector<double> angle;
    std::optional<double> steady_state;  ///< resolved offset (rad), if known

    /// Throws DomainError on length mismatch, fewer than 8 samples, or
    /// non-increasing times.
    void validate() const;
};

/// How to resolve the steady-state offset of a measured series.
struct SteadyStateMethod {
    bool is_supplied = false;
    double value = 0.0;

    static SteadyStateMethod trailing_cycle_mean() { return {false, 0.0}; }
    static SteadyStateMethod supplied(double v) { return {true, v}; }
};

/// One measured cycle point with its analytic prediction.
struct ComparisonEntry {
    CyclePoint point;
    double predicted_f = 0.0;
    double rel_err = 0.0;  ///< |of - predicted_f| / predicted_f
};

/// Overlay of measured cycle points on an analytic F-A curve. Points whose
/// amplitude falls outside the curve's range are listed separately and do
/// not enter the summary.
struct FaComparison {
    std::vector<ComparisonEntry> entries;
    std::vector<CyclePoint> out_of_range;
    double max_rel_err = 0.0;
    double mean_rel_err = 0.0;

    bool empty() const { return entries.empty(); }
};

/// Steady-state angle estimate. trailing_cycle_mean returns the time-weighted
/// mean over the last full cycle (between the last two same-type extrema);
/// a numerically constant series returns its value directly. Throws
/// DomainError when no full trailing cycle is detectable.
double estimate_steady_state(const MeasuredSeries& series,
                             const SteadyStateMethod& method =
                                 SteadyStateMethod::trailing_cycle_mean());

/// Per-cycle (t_mid, oa, of) estimates of the series, after subtracting the
/// resolved steady state. Requires series.steady_state to be set. Fewer than
/// two extrema yield an empty list.
std::vector<CyclePoint> measured_fa_points(const MeasuredSeries& series);

/// Predicts f at each point's amplitude by monotone piecewise-linear
/// interpolation of the curve; never extrapolates. Throws DomainError when
/// the curve has no points.
FaComparison compare_to_curve(const std::vector<CyclePoint>& points, const FaCurve& curve);

}  // namespace swingfreq
