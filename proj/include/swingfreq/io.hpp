#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swingfreq/analytic.hpp"
#include "swingfreq/ringdown.hpp"
#include "swingfreq/sim.hpp"

namespace swingfreq {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Six significant digits with trailing zeros kept (printed frequencies).
std::string format_sig6(double v);

/// Writes content to path atomically: temp file in the same directory, then
/// rename. Either the complete file appears or nothing changes. Throws
/// IoError on filesystem failure.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// Trajectory CSV: header "t,<col1>,...", rows in full round-trip precision.
std::string trajectory_csv(const Trajectory& traj);

/// Parses trajectory CSV; requires a leading "t" column with a uniform step.
/// Throws ParseError (with line number) on malformed input.
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Reads a measured series from CSV with "t" and "delta" columns located by
/// header name; extra columns are ignored; non-uniform sampling accepted.
MeasuredSeries read_measured_csv(const std::filesystem::path& path);

/// F-A curve CSV: header "oa_rad,f_hz", then points, then the trailing
/// metadata comment "# oa_limit_rad=<value> method=<m>".
std::string fa_csv(const FaCurve& curve, const FaMethod& method);

/// Parses F-A curve CSV (points must be strictly increasing in oa; the
/// metadata comment fills oa_limit when present).
FaCurve read_fa_csv(const std::filesystem::path& path);

/// Cycle-point CSV: header "t_mid,oa_rad,of_hz".
std::string cycles_csv(const std::vector<CyclePoint>& points);

/// Comparison CSV: header "t_mid,oa_rad,of_hz,predicted_f_hz,rel_err";
/// out-of-range points are not rows (they are reported separately).
std::string comparison_csv(const FaComparison& cmp);

/// Equivalent-angle CSV: header "t,delta_eq".
std::string equivalent_csv(const std::vector<double>& t, const std::vector<double>& delta_eq);

/// Minimal SVG line chart of an F-A curve: axes, ticks, one polyline.
std::string fa_svg(const FaCurve& curve);

}  // namespace swingfreq
