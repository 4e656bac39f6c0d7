#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swingfreq/analytic.hpp"
#include "swingfreq/config.hpp"
#include "swingfreq/errors.hpp"
#include "swingfreq/io.hpp"
#include "swingfreq/ringdown.hpp"
#include "swingfreq/sim.hpp"
#include "swingfreq/smib.hpp"

namespace {

using namespace swingfreq;
namespace fs = std::filesystem;

double to_rad(double v, bool degrees) { return degrees ? v * std::numbers::pi / 180.0 : v; }
double from_rad(double v, bool degrees) { return degrees ? v * 180.0 / std::numbers::pi : v; }

/// Outputs must land in an existing directory; checked before compute.
void check_writable(const fs::path& p) {
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    if (!fs::exists(dir) || !fs::is_directory(dir))
        throw IoError("output directory does not exist: " + dir.string());
}

void check_readable(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open: " + p.string());
}

/// Parses "name=weight,name=weight,..." into machine/inertia pairs.
std::vector<MachineWeight> parse_group(const std::string& text, const std::string& flag) {
    std::vector<MachineWeight> group;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument(flag + ": expected name=weight, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string wtext = item.substr(eq + 1);
        char* end = nullptr;
        const double w = std::strtod(wtext.c_str(), &end);
        if (end != wtext.c_str() + wtext.size() || wtext.empty())
            throw std::invalid_argument(flag + ": bad weight '" + wtext + "'");
        group.emplace_back(name, w);
        pos = comma + 1;
    }
    return group;
}

struct GlobalFlags {
    std::string config_path;
    bool degrees = false;
    double h = 0.0, d = 0.0, omega0 = 0.0, pmax = 0.0, delta0 = 0.0;
    int case_no = 0;
    CLI::Option* opt_h = nullptr;
    CLI::Option* opt_d = nullptr;
    CLI::Option* opt_omega0 = nullptr;
    CLI::Option* opt_pmax = nullptr;
    CLI::Option* opt_delta0 = nullptr;
    CLI::Option* opt_case = nullptr;
    CLI::Option* opt_config = nullptr;
    CLI::Option* opt_degrees = nullptr;
};

/// Defaults, then config file, then --case, then individual flags.
RunConfig resolve_config(const GlobalFlags& g) {
    RunConfig cfg = default_config();
    if (g.opt_config->count()) cfg = load_config(g.config_path);
    if (g.opt_degrees->count()) cfg.degrees = true;
    if (g.opt_case->count()) apply_case(cfg, g.case_no);
    if (g.opt_h->count()) cfg.system.H = g.h;
    if (g.opt_d->count()) cfg.system.D = g.d;
    if (g.opt_omega0->count()) cfg.system.omega0 = g.omega0;
    if (g.opt_pmax->count()) cfg.system.Pmax = g.pmax;
    if (g.opt_delta0->count()) cfg.system.delta0 = to_rad(g.delta0, cfg.degrees);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic oscillation frequency of the classical machine/infinite-bus swing model"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    g.opt_config = app.add_option("--config", g.config_path, "JSON configuration file");
    g.opt_degrees = app.add_flag("--degrees", g.degrees,
                                 "command-line angles in degrees (files stay in radians)");
    g.opt_h = app.add_option("--H", g.h, "inertia constant (s)");
    g.opt_d = app.add_option("--D", g.d, "damping coefficient (per-unit)");
    g.opt_omega0 = app.add_option("--omega0", g.omega0, "synchronous frequency (rad/s)");
    g.opt_pmax = app.add_option("--pmax", g.pmax, "maximum power transfer (per-unit)");
    g.opt_delta0 = app.add_option("--delta0", g.delta0, "steady-state rotor angle");
    g.opt_case = app.add_option("--case", g.case_no, "canned scenario 1|2|3")
                     ->check(CLI::Range(1, 3));

    auto* sub_nat = app.add_subcommand("natural-freq", "print the small-signal frequency (Hz)");

    auto* sub_ext = app.add_subcommand("extremes", "print delta_max delta_min oa for an initial state");
    double ext_delta = 0.0, ext_speed = 0.0;
    auto* ext_opt_delta = sub_ext->add_option("--delta-dev", ext_delta, "initial angle deviation");
    auto* ext_opt_speed = sub_ext->add_option("--speed-dev", ext_speed, "initial rate (rad/s)");

    auto* sub_freq = app.add_subcommand("frequency", "print the oscillation frequency at one amplitude");
    double fr_dmax = 0.0, fr_dmin = 0.0;
    std::string fr_method, fr_quad;
    int fr_terms = 0;
    auto* fr_opt_dmax = sub_freq->add_option("--delta-max", fr_dmax, "upper turning point");
    auto* fr_opt_dmin = sub_freq->add_option("--delta-min", fr_dmin,
                                             "lower turning point (default: equal-energy conjugate)");
    auto* fr_opt_method = sub_freq->add_option("--method", fr_method, "quadrature|series");
    auto* fr_opt_terms = sub_freq->add_option("--n-terms", fr_terms, "series order");
    auto* fr_opt_quad = sub_freq->add_option("--quadrature", fr_quad, "gauss-legendre|simpson");

    auto* sub_fa = app.add_subcommand("fa-curve", "write the frequency-amplitude curve CSV");
    int fa_points = 0;
    std::string fa_method, fa_quad, fa_out;
    int fa_terms = 0;
    bool fa_svg_flag = false;
    auto* fa_opt_points = sub_fa->add_option("--n-points", fa_points, "grid size");
    auto* fa_opt_method = sub_fa->add_option("--method", fa_method, "quadrature|series");
    auto* fa_opt_terms = sub_fa->add_option("--n-terms", fa_terms, "series order");
    auto* fa_opt_quad = sub_fa->add_option("--quadrature", fa_quad, "gauss-legendre|simpson");
    auto* fa_opt_out = sub_fa->add_option("--out", fa_out, "output CSV path");
    sub_fa->add_flag("--svg", fa_svg_flag, "also write an SVG chart next to the CSV");

    auto* sub_sim = app.add_subcommand("simulate", "integrate the swing equation, write trajectory + cycles");
    double sim_dt = 0.0, sim_tend = 0.0, sim_delta = 0.0, sim_speed = 0.0;
    std::string sim_traj_out, sim_cycles_out;
    auto* sim_opt_dt = sub_sim->add_option("--dt", sim_dt, "integration step (s)");
    auto* sim_opt_tend = sub_sim->add_option("--t-end", sim_tend, "simulated span (s)");
    auto* sim_opt_delta = sub_sim->add_option("--delta-dev", sim_delta, "initial angle deviation");
    auto* sim_opt_speed = sub_sim->add_option("--speed-dev", sim_speed, "initial rate (rad/s)");
    auto* sim_opt_traj = sub_sim->add_option("--traj-out", sim_traj_out, "trajectory CSV path");
    auto* sim_opt_cycles = sub_sim->add_option("--cycles-out", sim_cycles_out, "cycles CSV path");

    auto* sub_ana = app.add_subcommand("analyze", "compare measured ringdown cycles against an F-A curve");
    std::string ana_input, ana_curve, ana_out;
    double ana_ss = 0.0;
    sub_ana->add_option("--input", ana_input, "measured CSV with t,delta columns")->required();
    auto* ana_opt_curve = sub_ana->add_option("--curve", ana_curve,
                                              "F-A curve CSV (default: computed from config)");
    auto* ana_opt_ss = sub_ana->add_option("--steady-state", ana_ss,
                                           "steady-state angle (default: trailing-cycle mean)");
    auto* ana_opt_out = sub_ana->add_option("--out", ana_out, "comparison CSV path");

    auto* sub_agg = app.add_subcommand("aggregate", "inertia-weighted equivalent angle of two machine groups");
    std::string agg_input, agg_a, agg_b, agg_out;
    sub_agg->add_option("--input", agg_input, "trajectory CSV")->required();
    sub_agg->add_option("--group-a", agg_a, "e.g. delta_1=6.5,delta_2=6.5")->required();
    sub_agg->add_option("--group-b", agg_b, "e.g. delta_3=6.175,delta_4=6.175")->required();
    auto* agg_opt_out = sub_agg->add_option("--out", agg_out, "equivalent-angle CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg = resolve_config(g);
        QuadOptions qopt;
        qopt.rule = cfg.quad_rule;

        if (app.got_subcommand(sub_nat)) {
            cfg.system.validate();
            std::cout << format_sig6(natural_frequency(cfg.system)) << "\n";
            return 0;
        }

        if (app.got_subcommand(sub_ext)) {
            cfg.system.validate();
            if (!cfg.init && !ext_opt_delta->count() && !ext_opt_speed->count())
                throw std::invalid_argument(
                    "extremes needs an initial state (--delta-dev/--speed-dev, --case, or "
                    "config init)");
            SystemState init = cfg.init.value_or(SystemState{});
            if (ext_opt_delta->count()) init.delta_dev = to_rad(ext_delta, cfg.degrees);
            if (ext_opt_speed->count()) init.speed_dev_rad = ext_speed;
            const OscillationBounds b = extreme_points(cfg.system, init);
            std::cout << format_sig6(from_rad(b.delta_max, cfg.degrees)) << " "
                      << format_sig6(from_rad(b.delta_min, cfg.degrees)) << " "
                      << format_sig6(from_rad(b.oa(), cfg.degrees)) << "\n";
            return 0;
        }

        if (app.got_subcommand(sub_freq)) {
            cfg.system.validate();
            if (fr_opt_method->count()) cfg.fa_method.kind = parse_method(fr_method);
            if (fr_opt_terms->count()) cfg.fa_method.n_terms = fr_terms;
            if (fr_opt_quad->count()) qopt.rule = parse_quad_rule(fr_quad);
            OscillationBounds b;
            if (fr_opt_dmax->count()) {
                b.delta_max = to_rad(fr_dmax, cfg.degrees);
                b.delta_min = fr_opt_dmin->count() ? to_rad(fr_dmin, cfg.degrees)
                              : b.delta_max == 0.0 ? 0.0
                                                   : conjugate_extreme(cfg.system, b.delta_max);
                validate_bounds(cfg.system, b);
            } else if (cfg.init) {
                b = extreme_points(cfg.system, *cfg.init);
            } else {
                throw std::invalid_argument(
                    "frequency needs --delta-max or an initial state (config init or --case)");
            }
            double f = 0.0;
            if (cfg.fa_method.kind == FaMethod::Kind::series) {
                SeriesDiagnostics diag;
                f = power_series_frequency(cfg.system, b, cfg.fa_method.n_terms, &diag);
                if (diag.tail_warning)
                    std::fprintf(stderr,
                                 "warning: series tail ratio %.3g above 1e-6, result may be "
                                 "truncated early\n",
                                 diag.tail_ratio);
            } else {
                f = oscillation_frequency(cfg.system, b, qopt);
            }
            std::cout << format_sig6(f) << "\n";
            return 0;
        }

        if (app.got_subcommand(sub_fa)) {
            cfg.system.validate();
            if (fa_opt_points->count()) cfg.fa_n_points = fa_points;
            if (fa_opt_method->count()) cfg.fa_method.kind = parse_method(fa_method);
            if (fa_opt_terms->count()) cfg.fa_method.n_terms = fa_terms;
            if (fa_opt_quad->count()) qopt.rule = parse_quad_rule(fa_quad);
            if (fa_opt_out->count()) cfg.out_fa = fa_out;
            const bool want_svg = fa_svg_flag || cfg.svg;
            check_writable(cfg.out_fa);
            fs::path svg_path = cfg.out_fa;
            svg_path.replace_extension(".svg");
            if (want_svg) check_writable(svg_path);

            const FaCurve curve = fa_curve(cfg.system, cfg.fa_n_points, cfg.fa_method, qopt);
            for (const auto& w : curve.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            if (curve.points.empty()) throw DomainError("every sweep point failed");
            atomic_write_text(cfg.out_fa, fa_csv(curve, cfg.fa_method));
            if (want_svg) atomic_write_text(svg_path, fa_svg(curve));
            return 0;
        }

        if (app.got_subcommand(sub_sim)) {
            cfg.system.validate();
            if (sim_opt_dt->count()) cfg.sim_dt = sim_dt;
            if (sim_opt_tend->count()) cfg.sim_t_end = sim_tend;
            if (sim_opt_traj->count()) cfg.out_trajectory = sim_traj_out;
            if (sim_opt_cycles->count()) cfg.out_cycles = sim_cycles_out;
            SystemState init = cfg.init.value_or(SystemState{});
            bool have_init = cfg.init.has_value();
            if (sim_opt_delta->count()) {
                init.delta_dev = to_rad(sim_delta, cfg.degrees);
                have_init = true;
            }
            if (sim_opt_speed->count()) {
                init.speed_dev_rad = sim_speed;
                have_init = true;
            }
            if (!have_init)
                throw std::invalid_argument(
                    "simulate needs an initial state (config init, --case, or --delta-dev/--speed-dev)");
            check_writable(cfg.out_trajectory);
            check_writable(cfg.out_cycles);

            const Trajectory traj = simulate_smib(cfg.system, init, cfg.sim_dt, cfg.sim_t_end);
            const auto cycles = cycle_points(detect_extrema(traj, "delta"));
            atomic_write_text(cfg.out_trajectory, trajectory_csv(traj));
            atomic_write_text(cfg.out_cycles, cycles_csv(cycles));
            if (cycles.empty())
                std::fprintf(stderr, "warning: no oscillation cycles detected\n");
            return 0;
        }

        if (app.got_subcommand(sub_ana)) {
            if (ana_opt_out->count()) cfg.out_comparison = ana_out;
            check_readable(ana_input);
            if (ana_opt_curve->count()) check_readable(ana_curve);
            check_writable(cfg.out_comparison);

            MeasuredSeries series = read_measured_csv(ana_input);
            if (ana_opt_ss->count())
                series.steady_state = to_rad(ana_ss, cfg.degrees);
            else
                series.steady_state = estimate_steady_state(series, SteadyStateMethod::trailing_cycle_mean());
            const auto points = measured_fa_points(series);

            FaCurve curve;
            if (ana_opt_curve->count()) {
                curve = read_fa_csv(ana_curve);
            } else {
                cfg.system.validate();
                curve = fa_curve(cfg.system, cfg.fa_n_points, cfg.fa_method, qopt);
                for (const auto& w : curve.warnings)
                    std::fprintf(stderr, "warning: %s\n", w.c_str());
            }
            const FaComparison cmp = compare_to_curve(points, curve);
            if (!cmp.out_of_range.empty())
                std::fprintf(stderr, "warning: %zu cycle points outside the curve amplitude range\n",
                             cmp.out_of_range.size());
            atomic_write_text(cfg.out_comparison, comparison_csv(cmp));
            return 0;
        }

        if (app.got_subcommand(sub_agg)) {
            if (agg_opt_out->count()) cfg.out_equivalent = agg_out;
            const auto group_a = parse_group(agg_a, "--group-a");
            const auto group_b = parse_group(agg_b, "--group-b");
            check_readable(agg_input);
            check_writable(cfg.out_equivalent);

            const Trajectory traj = read_trajectory_csv(agg_input);
            const auto eq = equivalent_angle(traj, group_a, group_b);
            std::vector<double> t(traj.n_samples());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.time(i);
            atomic_write_text(cfg.out_equivalent, equivalent_csv(t, eq));
            return 0;
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
