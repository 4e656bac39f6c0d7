#pragma once

#include "swingfreq/errors.hpp"

namespace swingfreq {

/// Single-machine-infinite-bus model constants. Angles in radians, time in
/// seconds, powers and energies in per-unit on the machine base.
struct SmibParams {
    double H = 3.0;           ///< inertia constant (s)
    double D = 1.0;           ///< damping torque coefficient (per-unit)
    double omega0 = 0.0;      ///< synchronous electrical frequency (rad/s)
    double Pmax = 1.3;        ///< maximum power transfer (per-unit)
    double delta0 = 0.8;      ///< steady-state rotor angle (rad), in [0, pi/2)

    /// Throws DomainError unless H > 0, omega0 > 0, Pmax > 0 and
    /// 0 <= delta0 < pi/2 (stable equilibrium on the rising power curve).
    void validate() const;
};

/// Instantaneous deviation state: angle deviation (rad) and its time
/// derivative (rad/s). The per-unit speed deviation is speed_dev_rad/omega0.
struct SystemState {
    double delta_dev = 0.0;
    double speed_dev_rad = 0.0;
};

/// Acceleration coefficient Pmax*omega0/(2H) (rad/s^2).
double beta(const SmibParams& p);

/// Electrical power Pmax*sin(delta0 + delta_dev) (per-unit).
double electrical_power(const SmibParams& p, double delta_dev);

/// Kinetic energy of the deviation motion, speed_dev_rad^2 * H/omega0
/// (per-unit).
double kinetic_energy(const SmibParams& p, double speed_dev_rad);

/// Potential energy relative to the equilibrium,
/// Pmax*(cos(delta0) - cos(delta0 + delta_dev) - delta_dev*sin(delta0));
/// zero at delta_dev = 0 by construction (per-unit).
double potential_energy(const SmibParams& p, double delta_dev);

/// Small-signal oscillation frequency sqrt(beta*cos(delta0))/(2*pi) (Hz).
/// Throws DomainError when cos(delta0) <= 0.
double natural_frequency(const SmibParams& p);

/// Potential energy at the barrier delta_dev = pi - 2*delta0, the escape
/// threshold of the well (per-unit).
double critical_energy(const SmibParams& p);

/// Angle deviation of the right-hand barrier, pi - 2*delta0 (rad).
double barrier_deviation(const SmibParams& p);

}  // namespace swingfreq
