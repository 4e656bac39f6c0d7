#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "swingfreq/analytic.hpp"
#include "swingfreq/errors.hpp"
#include "swingfreq/sim.hpp"
#include "swingfreq/smib.hpp"

using namespace swingfreq;

namespace {

constexpr double kPi = std::numbers::pi;

SmibParams study_params(double damping = 1.0) {
    SmibParams p;
    p.omega0 = 120.0 * kPi;
    p.D = damping;
    return p;
}

MultiMachineCase two_machine_case(double rel_speed) {
    MultiMachineCase c;
    c.H = {6.5, 6.175};
    c.D = {0.0, 0.0};
    c.E = {1.0, 1.0};
    c.delta_init = {0.5, 0.0};
    // Split the relative speed so the inertia center stays fixed.
    const double total = c.H[0] + c.H[1];
    c.speed_init = {rel_speed * c.H[1] / total, -rel_speed * c.H[0] / total};
    c.G = {{0.0, 0.0}, {0.0, 0.0}};
    c.B = {{0.0, 1.2}, {1.2, 0.0}};
    c.omega0 = 120.0 * kPi;
    return c;
}

/// SMIB equivalent of two_machine_case: series inertia, line susceptance as
/// the power limit, the initial relative angle as the equilibrium.
SmibParams two_machine_equivalent() {
    SmibParams p;
    p.H = 6.5 * 6.175 / (6.5 + 6.175);
    p.D = 0.0;
    p.omega0 = 120.0 * kPi;
    p.Pmax = 1.2;
    p.delta0 = 0.5;
    return p;
}

double smib_energy(const SmibParams& p, double delta_dev, double speed_dev) {
    return kinetic_energy(p, speed_dev) + potential_energy(p, delta_dev);
}

}  // namespace

// ==== SMIB integration ====================================================

TEST_CASE("equilibrium initial state stays put") {
    const SmibParams p = study_params();
    const Trajectory traj = simulate_smib(p, SystemState{0.0, 0.0}, 1e-3, 0.5);
    const auto& delta = traj.column("delta");
    const auto& speed = traj.column("speed");
    for (std::size_t i = 0; i < traj.n_samples(); ++i) {
        CHECK(std::fabs(delta[i]) < 1e-14);
        CHECK(std::fabs(speed[i]) < 1e-12);
    }
}

TEST_CASE("zero-damping energy is conserved to 1e-8 over 10 s") {
    const SmibParams p = study_params(0.0);
    const Trajectory traj = simulate_smib(p, SystemState{kPi / 6.0, 2.0}, 1e-4, 10.0);
    const auto& delta = traj.column("delta");
    const auto& speed = traj.column("speed");
    const double e0 = smib_energy(p, delta[0], speed[0]);
    double max_drift = 0.0;
    for (std::size_t i = 0; i < traj.n_samples(); ++i)
        max_drift = std::max(max_drift, std::fabs(smib_energy(p, delta[i], speed[i]) - e0));
    CHECK(max_drift < 1e-8);
}

TEST_CASE("small-signal cycle frequency matches the natural frequency") {
    const SmibParams p = study_params(0.0);
    const Trajectory traj = simulate_smib(p, SystemState{1e-4, 0.0}, 1e-4, 3.0);
    const auto cycles = cycle_points(detect_extrema(traj, "delta"));
    REQUIRE(cycles.size() >= 4);
    for (const auto& cp : cycles)
        CHECK(cp.of == doctest::Approx(natural_frequency(p)).epsilon(1e-5));
}

TEST_CASE("integrator converges at fourth order") {
    const SmibParams p = study_params();
    const SystemState init{kPi / 6.0, 2.0};
    const auto end_delta = [&](double dt) {
        const Trajectory t = simulate_smib(p, init, dt, 1.0);
        return t.column("delta").back();
    };
    const double ref = end_delta(1e-6);
    const double err_coarse = std::fabs(end_delta(4e-3) - ref);
    const double err_fine = std::fabs(end_delta(2e-3) - ref);
    REQUIRE(err_fine > 1e-14);  // above roundoff, the ratio is meaningful
    CHECK(err_coarse / err_fine > 10.0);
    CHECK(err_coarse / err_fine < 26.0);
}

TEST_CASE("divergence carries the escape time") {
    const SmibParams p = study_params();
    try {
        (void)simulate_smib(p, SystemState{0.0, 8.0}, 1e-4, 5.0);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.time > 0.0);
        CHECK(e.time <= 5.0);
        CHECK(std::string(e.what()).find("t=") != std::string::npos);
    }
}

TEST_CASE("step validation") {
    const SmibParams p = study_params();
    CHECK_THROWS_AS((void)simulate_smib(p, SystemState{}, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)simulate_smib(p, SystemState{}, 1e-3, 1e-4), DomainError);
}

TEST_CASE("simulation output is deterministic") {
    const SmibParams p = study_params();
    const Trajectory a = simulate_smib(p, SystemState{kPi / 6.0, 2.0}, 1e-3, 2.0);
    const Trajectory b = simulate_smib(p, SystemState{kPi / 6.0, 2.0}, 1e-3, 2.0);
    REQUIRE(a.n_samples() == b.n_samples());
    for (std::size_t i = 0; i < a.n_samples(); ++i)
        CHECK(a.column("delta")[i] == b.column("delta")[i]);
}

TEST_CASE("trajectory column access") {
    const SmibParams p = study_params();
    const Trajectory traj = simulate_smib(p, SystemState{0.1, 0.0}, 1e-3, 0.1);
    CHECK(traj.has_column("delta"));
    CHECK(traj.has_column("speed"));
    CHECK_FALSE(traj.has_column("delta_1"));
    CHECK_THROWS_AS((void)traj.column("nope"), std::invalid_argument);
    CHECK(traj.time(0) == 0.0);
    CHECK(traj.time(10) == doctest::Approx(0.01).epsilon(1e-15));
}

// ==== extremum detection and cycle points =================================

TEST_CASE("sinusoid extrema are localized by the quadratic fit") {
    const double f0 = 1.2;
    std::vector<double> t, y;
    for (int i = 0; i <= 3000; ++i) {
        t.push_back(1e-3 * i);
        y.push_back(0.7 * std::sin(2.0 * kPi * f0 * 1e-3 * i) + 0.2);
    }
    const auto ext = detect_extrema(t, y);
    REQUIRE(ext.size() >= 6);
    for (const auto& e : ext) {
        // Peaks of 0.2 + 0.7 sin(2 pi f0 t): t = (k + 1/4)/f0 or (k + 3/4)/f0.
        const double phase = e.t * f0 - std::floor(e.t * f0);
        if (e.is_max) {
            CHECK(std::fabs(phase - 0.25) < 1e-5 * f0);
            CHECK(e.value == doctest::Approx(0.9).epsilon(1e-6));
        } else {
            CHECK(std::fabs(phase - 0.75) < 1e-5 * f0);
            CHECK(e.value == doctest::Approx(-0.5).epsilon(1e-6));
        }
    }
}

TEST_CASE("monotone and constant signals have no extrema") {
    std::vector<double> t, ramp, flat;
    for (int i = 0; i < 100; ++i) {
        t.push_back(0.1 * i);
        ramp.push_back(2.0 * i);
        flat.push_back(1.0);
    }
    CHECK(detect_extrema(t, ramp).empty());
    CHECK(detect_extrema(t, flat).empty());
    CHECK_THROWS_AS((void)detect_extrema(std::vector<double>{1.0}, flat),
                    std::invalid_argument);
}

TEST_CASE("cycle points of a pure sinusoid recover f0 and amplitude") {
    const double f0 = 0.9;
    std::vector<double> t, y;
    for (int i = 0; i <= 5000; ++i) {
        t.push_back(1e-3 * i);
        y.push_back(0.42 * std::cos(2.0 * kPi * f0 * 1e-3 * i));
    }
    const auto cps = cycle_points(detect_extrema(t, y));
    REQUIRE(cps.size() >= 5);
    for (const auto& cp : cps) {
        CHECK(cp.of == doctest::Approx(f0).epsilon(1e-6));
        CHECK(cp.oa == doctest::Approx(0.42).epsilon(1e-6));
    }
    // One extremum pair per point, midpoint timing.
    const auto ext = detect_extrema(t, y);
    CHECK(cps.size() == ext.size() - 1);
    CHECK(cps[0].t_mid == doctest::Approx(0.5 * (ext[0].t + ext[1].t)).epsilon(1e-12));
    // The steady-state argument does not move amplitudes or frequencies.
    const auto shifted = cycle_points(ext, 0.3);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        CHECK(shifted[i].oa == cps[i].oa);
        CHECK(shifted[i].of == cps[i].of);
    }
}

TEST_CASE("damped case amplitudes decrease monotonically") {
    const SmibParams p = study_params(1.0);
    const Trajectory traj = simulate_smib(p, SystemState{kPi / 3.0, 2.0}, 1e-4, 10.0);
    const auto cps = cycle_points(detect_extrema(traj, "delta"));
    REQUIRE(cps.size() >= 10);
    for (std::size_t i = 1; i < cps.size(); ++i) CHECK(cps[i].oa < cps[i - 1].oa);
}

// ==== multi-machine =======================================================

TEST_CASE("two-machine relative motion matches the equivalent SMIB analytics") {
    const SmibParams eq = two_machine_equivalent();
    CHECK(eq.H == doctest::Approx(3.1666666666666667).epsilon(1e-15));
    CHECK(natural_frequency(eq) == doctest::Approx(1.2600974520032803).epsilon(1e-12));

    const OscillationBounds b = extreme_points(eq, SystemState{0.0, 2.0});
    CHECK(b.delta_max == doctest::Approx(0.25953933561084182).epsilon(1e-11));
    CHECK(b.delta_min == doctest::Approx(-0.24771759451972268).epsilon(1e-11));
    const double f_pred = oscillation_frequency(eq, b);
    CHECK(f_pred == doctest::Approx(1.252473990599159).epsilon(1e-10));

    const MultiMachineCase c = two_machine_case(2.0);
    const Trajectory traj = simulate_multimachine(c, 1e-4, 4.0);
    const auto rel = equivalent_angle(traj, {{"delta_1", 6.5}}, {{"delta_2", 6.175}});
    std::vector<double> t(traj.n_samples());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.time(i);
    const auto cps = cycle_points(detect_extrema(t, rel));
    REQUIRE(cps.size() >= 6);
    for (const auto& cp : cps) CHECK(cp.of == doctest::Approx(f_pred).epsilon(5e-3));
}

TEST_CASE("identical machines swing antisymmetrically") {
    MultiMachineCase c;
    c.H = {3.0, 3.0};
    c.D = {0.5, 0.5};
    c.E = {1.0, 1.0};
    c.delta_init = {0.4, -0.4};
    c.speed_init = {1.0, -1.0};
    c.G = {{0.0, 0.0}, {0.0, 0.0}};
    c.B = {{0.0, 0.8}, {0.8, 0.0}};
    c.omega0 = 120.0 * kPi;
    const Trajectory traj = simulate_multimachine(c, 1e-3, 2.0);
    const auto& d1 = traj.column("delta_1");
    const auto& d2 = traj.column("delta_2");
    for (std::size_t i = 0; i < traj.n_samples(); i += 50)
        CHECK(std::fabs(d1[i] + d2[i]) < 1e-12);
}

TEST_CASE("four-machine lossless energy function is conserved") {
    MultiMachineCase c;
    c.H = {6.5, 6.5, 6.175, 6.175};
    c.D = {0.0, 0.0, 0.0, 0.0};
    c.E = {1.0, 1.0, 1.0, 1.0};
    c.delta_init = {0.2, 0.15, -0.1, -0.05};
    c.speed_init = {0.5, -0.3, 0.2, -0.4};
    c.G.assign(4, std::vector<double>(4, 0.0));
    c.B = {{0.0, 5.0, 0.5, 0.5},
           {5.0, 0.0, 0.5, 0.5},
           {0.5, 0.5, 0.0, 5.0},
           {0.5, 0.5, 5.0, 0.0}};
    c.omega0 = 120.0 * kPi;
    const Trajectory traj = simulate_multimachine(c, 1e-4, 10.0);
    std::vector<double> delta(4), speed(4);
    const auto energy_at = [&](std::size_t i) {
        for (std::size_t m = 0; m < 4; ++m) {
            delta[m] = traj.columns[m][i];
            speed[m] = traj.columns[4 + m][i];
        }
        return multimachine_energy(c, delta, speed);
    };
    const double e0 = energy_at(0);
    double max_drift = 0.0;
    for (std::size_t i = 0; i < traj.n_samples(); ++i)
        max_drift = std::max(max_drift, std::fabs(energy_at(i) - e0));
    CHECK(max_drift < 1e-8);
}

TEST_CASE("multi-machine case validation") {
    MultiMachineCase c = two_machine_case(1.0);
    c.H.pop_back();
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = two_machine_case(1.0);
    c.B[0].pop_back();
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = two_machine_case(1.0);
    c.H[0] = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

// ==== equivalent angle ====================================================

TEST_CASE("equivalent angle is the difference of weighted group means") {
    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = 0.5;
    traj.names = {"delta_1", "delta_2", "delta_3"};
    traj.columns = {{0.9, 0.9}, {0.3, 0.3}, {0.1, 0.2}};
    const auto eq =
        equivalent_angle(traj, {{"delta_1", 2.0}, {"delta_2", 1.0}}, {{"delta_3", 7.0}});
    REQUIRE(eq.size() == 2);
    CHECK(eq[0] == doctest::Approx(0.7 - 0.1).epsilon(1e-12));
    CHECK(eq[1] == doctest::Approx(0.7 - 0.2).epsilon(1e-12));

    // Shifting every machine by a constant leaves the difference unchanged.
    Trajectory shifted = traj;
    for (auto& col : shifted.columns)
        for (auto& v : col) v += 3.7;
    const auto eq2 =
        equivalent_angle(shifted, {{"delta_1", 2.0}, {"delta_2", 1.0}}, {{"delta_3", 7.0}});
    for (std::size_t i = 0; i < eq.size(); ++i)
        CHECK(eq2[i] == doctest::Approx(eq[i]).epsilon(1e-12));
}

TEST_CASE("equivalent angle argument errors") {
    Trajectory traj;
    traj.names = {"delta_1", "delta_2"};
    traj.columns = {{0.1}, {0.2}};
    traj.dt = 1.0;
    CHECK_THROWS_AS((void)equivalent_angle(traj, {}, {{"delta_2", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)equivalent_angle(traj, {{"delta_9", 1.0}}, {{"delta_2", 1.0}}),
                    std::invalid_argument);
}
