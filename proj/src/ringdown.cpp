#include "swingfreq/ringdown.hpp"

#include <algorithm>
#include <cmath>

#include "swingfreq/errors.hpp"

namespace swingfreq {
namespace {

// Integral of the piecewise-linear interpolant of (t, y) over [a, b], which
// must lie inside [t.front(), t.back()].
double integrate_linear(const std::vector<double>& t, const std::vector<double>& y,
                        double a, double b) {
    auto value_at = [&](double x) {
        const auto it = std::lower_bound(t.begin(), t.end(), x);
        if (it == t.begin()) return y.front();
        if (it == t.end()) return y.back();
        const std::size_t i = static_cast<std::size_t>(it - t.begin());
        const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
        return y[i - 1] + w * (y[i] - y[i - 1]);
    };
    double acc = 0.0;
    double prev_t = a, prev_y = value_at(a);
    const auto first = std::upper_bound(t.begin(), t.end(), a);
    for (auto it = first; it != t.end() && *it < b; ++it) {
        const std::size_t i = static_cast<std::size_t>(it - t.begin());
        acc += 0.5 * (prev_y + y[i]) * (t[i] - prev_t);
        prev_t = t[i];
        prev_y = y[i];
    }
    acc += 0.5 * (prev_y + value_at(b)) * (b - prev_t);
    return acc;
}

bool numerically_constant(const std::vector<double>& y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    return (*hi - *lo) <= 1e-12 * std::max(1.0, std::abs(mean));
}

}  // namespace

void MeasuredSeries::validate() const {
    if (t.size() != angle.size()) throw DomainError("measured series: t/angle length mismatch");
    if (t.size() < 8) throw DomainError("measured series needs at least 8 samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw DomainError("measured series: times must be strictly increasing");
}

double estimate_steady_state(const MeasuredSeries& series, const SteadyStateMethod& method) {
    if (method.is_supplied) return method.value;
    series.validate();

    const auto extrema = detect_extrema(series.t, series.angle);
    // The last full cycle runs between the last two same-type extrema.
    for (std::size_t k = extrema.size(); k-- > 1;) {
        for (std::size_t j = k; j-- > 0;) {
            if (extrema[j].is_max != extrema[k].is_max) continue;
            const double a = extrema[j].t, b = extrema[k].t;
            return integrate_linear(series.t, series.angle, a, b) / (b - a);
        }
        break;  // only the trailing cycle is of interest
    }
    if (numerically_constant(series.angle)) {
        double mean = 0.0;
        for (double v : series.angle) mean += v;
        return mean / static_cast<double>(series.angle.size());
    }
    throw DomainError("insufficient data: no full trailing cycle detectable");
}

std::vector<CyclePoint> measured_fa_points(const MeasuredSeries& series) {
    series.validate();
    if (!series.steady_state)
        throw DomainError("steady state must be resolved before extracting cycle points");
    std::vector<double> centered(series.angle.size());
    for (std::size_t i = 0; i < centered.size(); ++i)
        centered[i] = series.angle[i] - *series.steady_state;
    return cycle_points(detect_extrema(series.t, centered), 0.0);
}

FaComparison compare_to_curve(const std::vector<CyclePoint>& points, const FaCurve& curve) {
    if (curve.points.empty()) throw DomainError("comparison needs a nonempty F-A curve");
    FaComparison out;
    const auto& cp = curve.points;
    for (const auto& point : points) {
        if (point.oa < cp.front().oa || point.oa > cp.back().oa) {
            out.out_of_range.push_back(point);
            continue;
        }
        const auto it =
            std::lower_bound(cp.begin(), cp.end(), point.oa,
                             [](const FaPoint& fp, double oa) { return fp.oa < oa; });
        double predicted;
        if (it == cp.begin()) {
            predicted = it->f;
        } else {
            const auto prev = it - 1;
            const double w = (point.oa - prev->oa) / (it->oa - prev->oa);
            predicted = prev->f + w * (it->f - prev->f);
        }
        const double rel = std::abs(point.of - predicted) / predicted;
        out.entries.push_back({point, predicted, rel});
        out.max_rel_err = std::max(out.max_rel_err, rel);
        out.mean_rel_err += rel;
    }
    if (!out.entries.empty()) out.mean_rel_err /= static_cast<double>(out.entries.size());
    return out;
}

}  // namespace swingfreq
