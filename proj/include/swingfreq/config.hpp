#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "swingfreq/analytic.hpp"
#include "swingfreq/quadrature.hpp"
#include "swingfreq/smib.hpp"

namespace swingfreq {

/// One run's worth of settings. Defaults reproduce the reference study
/// system (H=3 s, D=1, omega0=120*pi rad/s, Pmax=1.3, delta0=0.8 rad).
/// File contents are always radians and seconds; the degrees flag only
/// changes how command-line angles are parsed and printed.
struct RunConfig {
    SmibParams system;
    std::optional<SystemState> init;

    double sim_dt = 1e-4;     ///< integration step (s)
    double sim_t_end = 10.0;  ///< simulated span (s)

    int fa_n_points = 200;
    FaMethod fa_method;
    QuadRule quad_rule = QuadRule::gauss_legendre;

    std::filesystem::path out_trajectory = "trajectory.csv";
    std::filesystem::path out_cycles = "cycles.csv";
    std::filesystem::path out_fa = "fa.csv";
    std::filesystem::path out_comparison = "comparison.csv";
    std::filesystem::path out_equivalent = "equivalent.csv";
    bool svg = false;      ///< also emit an SVG chart next to the F-A CSV
    bool degrees = false;  ///< CLI angles in degrees instead of radians
};

/// The built-in defaults (reference study system).
RunConfig default_config();

/// Loads a JSON config. Recognized sections and keys:
///   system: h, d, omega0, pmax, delta0            (radians)
///   init:   delta_rad or delta_deg (exactly one), ddelta_rad_s
///   sim:    dt, t_end
///   fa:     n_points, method ("quadrature"|"series"), n_terms,
///           quadrature ("gauss-legendre"|"simpson")
///   io:     trajectory, cycles, fa, comparison, equivalent, svg, degrees
/// Unknown keys are rejected. Content problems throw std::invalid_argument
/// (usage error); an unreadable file throws IoError.
RunConfig load_config(const std::filesystem::path& path);

/// Canned study scenarios: 1 -> D=1, delta_dev 30 deg; 2 -> D=1, 60 deg;
/// 3 -> D=3, 60 deg; all with ddelta(0) = 2 rad/s. Throws
/// std::invalid_argument for any other number.
void apply_case(RunConfig& cfg, int case_no);

/// Parses "quadrature" or "series"; throws std::invalid_argument otherwise.
FaMethod::Kind parse_method(const std::string& text);

/// Parses "gauss-legendre" (alias "gl") or "simpson"; throws
/// std::invalid_argument otherwise.
QuadRule parse_quad_rule(const std::string& text);

}  // namespace swingfreq
