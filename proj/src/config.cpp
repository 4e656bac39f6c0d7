#include "swingfreq/config.hpp"

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "swingfreq/errors.hpp"

namespace swingfreq {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& section,
                  std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw std::invalid_argument("config section '" + section + "' must be an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known)
            throw std::invalid_argument(
                "unknown config key: " +
                (section.empty() ? item.key() : section + "." + item.key()));
    }
}

double get_number(const json& j, const std::string& name) {
    if (!j.is_number()) throw std::invalid_argument("config key " + name + " must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& name) {
    if (!j.is_number_integer())
        throw std::invalid_argument("config key " + name + " must be an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& name) {
    if (!j.is_string()) throw std::invalid_argument("config key " + name + " must be a string");
    return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& name) {
    if (!j.is_boolean()) throw std::invalid_argument("config key " + name + " must be a boolean");
    return j.get<bool>();
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    cfg.system.omega0 = 120.0 * std::numbers::pi;
    return cfg;
}

FaMethod::Kind parse_method(const std::string& text) {
    if (text == "quadrature") return FaMethod::Kind::quadrature;
    if (text == "series") return FaMethod::Kind::series;
    throw std::invalid_argument("method must be 'quadrature' or 'series', got '" + text + "'");
}

QuadRule parse_quad_rule(const std::string& text) {
    if (text == "gauss-legendre" || text == "gl") return QuadRule::gauss_legendre;
    if (text == "simpson") return QuadRule::simpson;
    throw std::invalid_argument("quadrature must be 'gauss-legendre' or 'simpson', got '" +
                                text + "'");
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    require_keys(root, "", {"system", "init", "sim", "fa", "io"});

    RunConfig cfg = default_config();
    if (root.contains("system")) {
        const json& s = root["system"];
        require_keys(s, "system", {"h", "d", "omega0", "pmax", "delta0"});
        if (s.contains("h")) cfg.system.H = get_number(s["h"], "system.h");
        if (s.contains("d")) cfg.system.D = get_number(s["d"], "system.d");
        if (s.contains("omega0")) cfg.system.omega0 = get_number(s["omega0"], "system.omega0");
        if (s.contains("pmax")) cfg.system.Pmax = get_number(s["pmax"], "system.pmax");
        if (s.contains("delta0")) cfg.system.delta0 = get_number(s["delta0"], "system.delta0");
    }
    if (root.contains("init")) {
        const json& s = root["init"];
        require_keys(s, "init", {"delta_rad", "delta_deg", "ddelta_rad_s"});
        const bool has_rad = s.contains("delta_rad");
        const bool has_deg = s.contains("delta_deg");
        if (has_rad == has_deg)
            throw std::invalid_argument("init needs exactly one of delta_rad/delta_deg");
        SystemState st;
        st.delta_dev = has_rad
                           ? get_number(s["delta_rad"], "init.delta_rad")
                           : get_number(s["delta_deg"], "init.delta_deg") *
                                 std::numbers::pi / 180.0;
        if (s.contains("ddelta_rad_s"))
            st.speed_dev_rad = get_number(s["ddelta_rad_s"], "init.ddelta_rad_s");
        cfg.init = st;
    }
    if (root.contains("sim")) {
        const json& s = root["sim"];
        require_keys(s, "sim", {"dt", "t_end"});
        if (s.contains("dt")) cfg.sim_dt = get_number(s["dt"], "sim.dt");
        if (s.contains("t_end")) cfg.sim_t_end = get_number(s["t_end"], "sim.t_end");
    }
    if (root.contains("fa")) {
        const json& s = root["fa"];
        require_keys(s, "fa", {"n_points", "method", "n_terms", "quadrature"});
        if (s.contains("n_points")) cfg.fa_n_points = get_int(s["n_points"], "fa.n_points");
        if (s.contains("method"))
            cfg.fa_method.kind = parse_method(get_string(s["method"], "fa.method"));
        if (s.contains("n_terms")) cfg.fa_method.n_terms = get_int(s["n_terms"], "fa.n_terms");
        if (s.contains("quadrature"))
            cfg.quad_rule = parse_quad_rule(get_string(s["quadrature"], "fa.quadrature"));
    }
    if (root.contains("io")) {
        const json& s = root["io"];
        require_keys(s, "io",
                     {"trajectory", "cycles", "fa", "comparison", "equivalent", "svg", "degrees"});
        if (s.contains("trajectory"))
            cfg.out_trajectory = get_string(s["trajectory"], "io.trajectory");
        if (s.contains("cycles")) cfg.out_cycles = get_string(s["cycles"], "io.cycles");
        if (s.contains("fa")) cfg.out_fa = get_string(s["fa"], "io.fa");
        if (s.contains("comparison"))
            cfg.out_comparison = get_string(s["comparison"], "io.comparison");
        if (s.contains("equivalent"))
            cfg.out_equivalent = get_string(s["equivalent"], "io.equivalent");
        if (s.contains("svg")) cfg.svg = get_bool(s["svg"], "io.svg");
        if (s.contains("degrees")) cfg.degrees = get_bool(s["degrees"], "io.degrees");
    }
    return cfg;
}

void apply_case(RunConfig& cfg, int case_no) {
    SystemState st;
    st.speed_dev_rad = 2.0;
    switch (case_no) {
        case 1:
            cfg.system.D = 1.0;
            st.delta_dev = std::numbers::pi / 6.0;
            break;
        case 2:
            cfg.system.D = 1.0;
            st.delta_dev = std::numbers::pi / 3.0;
            break;
        case 3:
            cfg.system.D = 3.0;
            st.delta_dev = std::numbers::pi / 3.0;
            break;
        default:
            throw std::invalid_argument("case must be 1, 2 or 3, got " +
                                        std::to_string(case_no));
    }
    cfg.init = st;
}

}  // namespace swingfreq
