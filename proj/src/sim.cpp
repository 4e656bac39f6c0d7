#include "swingfreq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swingfreq {
namespace {

constexpr double kEscape = 10.0 * std::numbers::pi;

long step_count(double dt, double t_end) {
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (!(t_end > dt)) throw DomainError("t_end must exceed dt");
    return std::lround(t_end / dt);
}

}  // namespace

bool Trajectory::has_column(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& Trajectory::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw std::invalid_argument("unknown column: " + name);
}

void MultiMachineCase::validate() const {
    const std::size_t n = H.size();
    if (n == 0) throw DomainError("multi-machine case needs at least one machine");
    if (D.size() != n || E.size() != n || delta_init.size() != n || speed_init.size() != n)
        throw DomainError("multi-machine vectors must agree in length");
    if (G.size() != n || B.size() != n)
        throw DomainError("admittance matrices must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
        if (G[i].size() != n || B[i].size() != n)
            throw DomainError("admittance matrices must be n x n");
        if (!(H[i] > 0.0)) throw DomainError("all inertia constants must be positive");
    }
    if (!(omega0 > 0.0)) throw DomainError("omega0 must be positive");
}

double multimachine_power(const MultiMachineCase& c, const std::vector<double>& delta,
                          std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double d = delta[i] - delta[j];
        acc += c.E[i] * c.E[j] * (c.G[i][j] * std::cos(d) + c.B[i][j] * std::sin(d));
    }
    return acc;
}

double multimachine_energy(const MultiMachineCase& c, const std::vector<double>& delta,
                           const std::vector<double>& speed) {
    const std::size_t n = c.size();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += c.H[i] * speed[i] * speed[i] / c.omega0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e -= c.E[i] * c.E[j] * c.B[i][j] * std::cos(delta[i] - delta[j]);
    for (std::size_t i = 0; i < n; ++i)
        e -= multimachine_power(c, c.delta_init, i) * delta[i];
    return e;
}

Trajectory simulate_smib(const SmibParams& p, const SystemState& init, double dt,
                         double t_end) {
    p.validate();
    const long n = step_count(dt, t_end);
    const double b = beta(p);
    const double damp = p.D / (2.0 * p.H);
    const double sin_d0 = std::sin(p.delta0);

    auto accel = [&](double x, double v) {
        return -damp * v - b * (std::sin(p.delta0 + x) - sin_d0);
    };

    Trajectory traj;
    traj.dt = dt;
    traj.names = {"delta", "speed"};
    traj.columns.assign(2, {});
    traj.columns[0].reserve(n + 1);
    traj.columns[1].reserve(n + 1);

    double x = init.delta_dev, v = init.speed_dev_rad;
    traj.columns[0].push_back(x);
    traj.columns[1].push_back(v);
    for (long s = 0; s < n; ++s) {
        const double k1x = v, k1v = accel(x, v);
        const double k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
        const double k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
        const double k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(std::abs(x) <= kEscape))
            throw DivergenceError("lost synchronism: |delta_dev| exceeded 10*pi at t=" +
                                      std::to_string((s + 1) * dt),
                                  (s + 1) * dt);
        traj.columns[0].push_back(x);
        traj.columns[1].push_back(v);
    }
    return traj;
}

Trajectory simulate_multimachine(const MultiMachineCase& c, double dt, double t_end) {
    c.validate();
    const long n_steps = step_count(dt, t_end);
    const std::size_t n = c.size();

    std::vector<double> pm(n);
    for (std::size_t i = 0; i < n; ++i) pm[i] = multimachine_power(c, c.delta_init, i);

    // State layout: delta[0..n-1], speed[0..n-1].
    auto deriv = [&](const std::vector<double>& s, std::vector<double>& ds) {
        const std::vector<double> delta(s.begin(), s.begin() + n);
        for (std::size_t i = 0; i < n; ++i) {
            ds[i] = s[n + i];
            const double pe = multimachine_power(c, delta, i);
            ds[n + i] =
                c.omega0 / (2.0 * c.H[i]) * (pm[i] - pe - c.D[i] * s[n + i] / c.omega0);
        }
    };

    Trajectory traj;
    traj.dt = dt;
    for (std::size_t i = 0; i < n; ++i) traj.names.push_back("delta_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) traj.names.push_back("speed_" + std::to_string(i + 1));
    traj.columns.assign(2 * n, {});
    for (auto& col : traj.columns) col.reserve(n_steps + 1);

    std::vector<double> state(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        state[i] = c.delta_init[i];
        state[n + i] = c.speed_init[i];
    }
    auto record = [&]() {
        for (std::size_t i = 0; i < 2 * n; ++i) traj.columns[i].push_back(state[i]);
    };
    record();

    std::vector<double> k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), tmp(2 * n);
    for (long s = 0; s < n_steps; ++s) {
        deriv(state, k1);
        for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
        deriv(tmp, k2);
        for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
        deriv(tmp, k3);
        for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = state[i] + dt * k3[i];
        deriv(tmp, k4);
        for (std::size_t i = 0; i < 2 * n; ++i)
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (std::size_t i = 0; i < n; ++i)
            if (!(std::abs(state[i] - c.delta_init[i]) <= kEscape))
                throw DivergenceError("lost synchronism: machine " + std::to_string(i + 1) +
                                          " moved 10*pi from start at t=" +
                                          std::to_string((s + 1) * dt),
                                      (s + 1) * dt);
        record();
    }
    return traj;
}

std::vector<Extremum> detect_extrema(const std::vector<double>& t,
                                     const std::vector<double>& y) {
    if (t.size() != y.size()) throw std::invalid_argument("time/value length mismatch");
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        const bool is_max = y[i] > y[i - 1] && y[i] > y[i + 1];
        const bool is_min = y[i] < y[i - 1] && y[i] < y[i + 1];
        if (!is_max && !is_min) continue;
        // Quadratic through the three samples in Newton form; vertex of the
        // parabola refines both time and value.
        const double f01 = (y[i] - y[i - 1]) / (t[i] - t[i - 1]);
        const double f12 = (y[i + 1] - y[i]) / (t[i + 1] - t[i]);
        const double f012 = (f12 - f01) / (t[i + 1] - t[i - 1]);
        if (f012 == 0.0) continue;
        const double tv = 0.5 * (t[i - 1] + t[i]) - f01 / (2.0 * f012);
        if (!(tv >= t[i - 1]) || !(tv <= t[i + 1])) continue;
        const double value = y[i - 1] + f01 * (tv - t[i - 1]) + f012 * (tv - t[i - 1]) * (tv - t[i]);
        if (!out.empty() && !(tv > out.back().t)) continue;
        out.push_back({tv, value, is_max});
    }
    return out;
}

std::vector<Extremum> detect_extrema(const Trajectory& traj, const std::string& column) {
    const auto& y = traj.column(column);
    std::vector<double> t(y.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.time(i);
    return detect_extrema(t, y);
}

std::vector<CyclePoint> cycle_points(const std::vector<Extremum>& extrema,
                                     double /*steady_state*/) {
    std::vector<CyclePoint> out;
    for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
        const double dt_pair = extrema[i + 1].t - extrema[i].t;
        if (!(dt_pair > 0.0)) continue;
        out.push_back({0.5 * (extrema[i].t + extrema[i + 1].t),
                       0.5 * std::abs(extrema[i].value - extrema[i + 1].value),
                       1.0 / (2.0 * dt_pair)});
    }
    return out;
}

std::vector<double> equivalent_angle(const Trajectory& traj,
                                     const std::vector<MachineWeight>& group_a,
                                     const std::vector<MachineWeight>& group_b) {
    if (group_a.empty() || group_b.empty())
        throw std::invalid_argument("both machine groups must be nonempty");
    auto weighted_mean = [&](const std::vector<MachineWeight>& group, std::size_t sample) {
        double num = 0.0, den = 0.0;
        for (const auto& [name, inertia] : group) {
            num += traj.column(name)[sample] * inertia;
            den += inertia;
        }
        return num / den;
    };
    std::vector<double> out(traj.n_samples());
    for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = weighted_mean(group_a, s) - weighted_mean(group_b, s);
    return out;
}

}  // namespace swingfreq
