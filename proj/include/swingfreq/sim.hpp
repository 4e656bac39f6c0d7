#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "swingfreq/smib.hpp"

namespace swingfreq {

/// Uniformly sampled time series: one named column per stored signal, all of
/// equal length, sample i taken at t0 + i*dt.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t n_samples() const { return columns.empty() ? 0 : columns.front().size(); }
    double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    bool has_column(const std::string& name) const;
    /// Throws std::invalid_argument for an unknown name.
    const std::vector<double>& column(const std::string& name) const;
};

/// Interpolated extremum of a sampled signal.
struct Extremum {
    double t = 0.0;
    double value = 0.0;
    bool is_max = false;
};

/// One per-cycle estimate from two adjacent extrema: oscillation amplitude,
/// oscillation frequency, and the midpoint time they refer to.
struct CyclePoint {
    double t_mid = 0.0;
    double oa = 0.0;
    double of = 0.0;
};

/// Classical reduced-network multi-machine model: constant internal voltages
/// E behind the reduced admittance (G, B); swing dynamics per machine.
/// Mechanical powers are fixed at the initial electrical powers.
struct MultiMachineCase {
    std::vector<double> H;           ///< inertia constants (s)
    std::vector<double> D;           ///< damping coefficients (per-unit)
    std::vector<double> E;           ///< internal voltage magnitudes (per-unit)
    std::vector<double> delta_init;  ///< initial angles (rad)
    std::vector<double> speed_init;  ///< initial angle rates (rad/s)
    std::vector<std::vector<double>> G;  ///< conductance matrix (per-unit)
    std::vector<std::vector<double>> B;  ///< susceptance matrix (per-unit)
    double omega0 = 0.0;             ///< synchronous frequency (rad/s)

    std::size_t size() const { return H.size(); }
    /// Throws DomainError unless all vectors/matrices agree in dimension,
    /// H > 0, omega0 > 0.
    void validate() const;
};

/// Electrical power of machine i at the given angle vector.
double multimachine_power(const MultiMachineCase& c, const std::vector<double>& delta,
                          std::size_t i);

/// Energy function of the lossless (G = 0) system: kinetic sum plus coupling
/// potential minus mechanical work. Constant along zero-damping trajectories.
double multimachine_energy(const MultiMachineCase& c, const std::vector<double>& delta,
                           const std::vector<double>& speed);

/// Integrates the deviation swing equation with fixed-step classical
/// fourth-order Runge-Kutta; returns columns "delta" (rad) and "speed"
/// (rad/s). Throws DivergenceError when |delta_dev| exceeds 10*pi.
Trajectory simulate_smib(const SmibParams& p, const SystemState& init, double dt,
                         double t_end);

/// Same integrator for the multi-machine case; columns "delta_1".."delta_n"
/// and "speed_1".."speed_n". Divergence when any machine moves 10*pi away
/// from its initial angle.
Trajectory simulate_multimachine(const MultiMachineCase& c, double dt, double t_end);

/// Interior extrema of a sampled signal, each localized by a quadratic fit
/// through the three samples around a strict discrete peak. Handles
/// non-uniform time grids. Plateaus are not extrema.
std::vector<Extremum> detect_extrema(const std::vector<double>& t,
                                     const std::vector<double>& y);

/// Convenience overload over a trajectory column.
std::vector<Extremum> detect_extrema(const Trajectory& traj, const std::string& column);

/// Per-cycle estimates from each adjacent extremum pair: of = 1/(2*dt_pair)
/// (adjacent extrema span a half period), oa = |v1 - v2|/2, t_mid = midpoint.
/// steady_state only shifts reported levels; oa and of are differences and
/// do not depend on it.
std::vector<CyclePoint> cycle_points(const std::vector<Extremum>& extrema,
                                     double steady_state = 0.0);

/// Machine column paired with its inertia constant, for grouping.
using MachineWeight = std::pair<std::string, double>;

/// Inertia-weighted equivalent angle difference between two disjoint machine
/// groups, per sample. Throws std::invalid_argument for an empty group or an
/// unknown column.
std::vector<double> equivalent_angle(const Trajectory& traj,
                                     const std::vector<MachineWeight>& group_a,
                                     const std::vector<MachineWeight>& group_b);

}  // namespace swingfreq
