#include "swingfreq/smib.hpp"

#include <cmath>
#include <numbers>

namespace swingfreq {

void SmibParams::validate() const {
    if (!(H > 0.0) || !std::isfinite(H)) throw DomainError("H must be positive");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be positive");
    if (!(Pmax > 0.0) || !std::isfinite(Pmax)) throw DomainError("Pmax must be positive");
    if (!std::isfinite(D)) throw DomainError("D must be finite");
    if (!(delta0 >= 0.0) || !(delta0 < std::numbers::pi / 2))
        throw DomainError("delta0 must lie in [0, pi/2)");
}

double beta(const SmibParams& p) {
    return p.Pmax * p.omega0 / (2.0 * p.H);
}

double electrical_power(const SmibParams& p, double delta_dev) {
    return p.Pmax * std::sin(p.delta0 + delta_dev);
}

double kinetic_energy(const SmibParams& p, double speed_dev_rad) {
    return speed_dev_rad * speed_dev_rad * p.H / p.omega0;
}

double potential_energy(const SmibParams& p, double delta_dev) {
    return p.Pmax * (std::cos(p.delta0) - std::cos(p.delta0 + delta_dev) -
                     delta_dev * std::sin(p.delta0));
}

double natural_frequency(const SmibParams& p) {
    const double c = std::cos(p.delta0);
    if (!(c > 0.0)) throw DomainError("no stable linearized mode: cos(delta0) <= 0");
    return std::sqrt(beta(p) * c) / (2.0 * std::numbers::pi);
}

double critical_energy(const SmibParams& p) {
    return potential_energy(p, barrier_deviation(p));
}

double barrier_deviation(const SmibParams& p) {
    return std::numbers::pi - 2.0 * p.delta0;
}

}  // namespace swingfreq
