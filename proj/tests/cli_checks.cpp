// Black-box checks of the swingfreq command-line interface: printed values,
// exit codes, error channels and file outputs, run against a scratch
// directory. Usage: cli_checks <swingfreq-binary> <scratch-dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path g_cli;
fs::path g_scratch;
int g_total = 0;
int g_failed = 0;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

RunResult run(const std::string& args) {
    const fs::path out_file = g_scratch / "run_stdout.txt";
    const fs::path err_file = g_scratch / "run_stderr.txt";
    const std::string cmd = "cd '" + g_scratch.string() + "' && '" + g_cli.string() +
                            "' " + args + " > '" + out_file.string() + "' 2> '" +
                            err_file.string() + "'";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = (status == -1) ? -1 : WEXITSTATUS(status);
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

void check_impl(bool ok, const char* what, int line) {
    ++g_total;
    if (!ok) {
        ++g_failed;
        std::printf("[FAIL] cli_checks.cpp:%d: %s\n", line, what);
    }
}

#define CHECK(cond) check_impl(static_cast<bool>(cond), #cond, __LINE__)

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

double first_number(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

long count_lines(const std::string& s) {
    long n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: cli_checks <swingfreq-binary> <scratch-dir>\n");
        return 2;
    }
    g_cli = fs::absolute(argv[1]);
    g_scratch = fs::absolute(argv[2]);
    fs::remove_all(g_scratch);
    fs::create_directories(g_scratch);

    // ---- natural-freq ----------------------------------------------------
    {
        RunResult r = run("natural-freq");
        CHECK(r.code == 0);
        CHECK(r.out == "1.20062\n");

        r = run("--H 0.5 --omega0 1 --pmax 39.478417604357434 --delta0 0 natural-freq");
        CHECK(r.code == 0);
        CHECK(r.out == "1.00000\n");

        r = run("--degrees --delta0 89.9 natural-freq");
        CHECK(r.code == 0);
        CHECK(first_number(r.out) > 0.0);
        CHECK(first_number(r.out) < 0.1);

        r = run("--delta0 1.6 natural-freq");  // beyond the stable range
        CHECK(r.code == 2);
        CHECK(!r.err.empty());
    }

    // ---- extremes ----------------------------------------------------------
    {
        RunResult r = run("extremes --case 1");
        CHECK(r.code == 0);
        CHECK(r.out == "0.616965 -0.502009 0.559487\n");

        r = run("--degrees extremes --case 1");
        CHECK(r.code == 0);
        CHECK(near(first_number(r.out), 35.3496, 1e-3));

        r = run("extremes --delta-dev 0 --speed-dev 0");
        CHECK(r.code == 0);
        CHECK(r.out == "0.00000 0.00000 0.00000\n");

        r = run("extremes --delta-dev 0 --speed-dev 7");
        CHECK(r.code == 2);
        CHECK(r.err.find("unstable: energy exceeds critical") != std::string::npos);

        r = run("extremes");  // no initial state from any source
        CHECK(r.code == 1);
    }

    // ---- frequency ---------------------------------------------------------
    {
        RunResult r = run("frequency --delta-max 0");
        CHECK(r.code == 0);
        CHECK(r.out == "1.20062\n");

        r = run("frequency --delta-max 0.61696453223538628");
        CHECK(r.code == 0);
        CHECK(r.out == "1.13029\n");

        r = run("frequency --delta-max 0.61696453223538628 --quadrature simpson");
        CHECK(r.code == 0);
        CHECK(r.out == "1.13029\n");

        r = run("frequency --method series --n-terms 4 --delta-max 0.3");
        CHECK(r.code == 0);
        CHECK(r.out == "1.18627\n");

        r = run("frequency --method series --n-terms 1 --delta-max 0.3");
        CHECK(r.code == 0);
        CHECK(r.err.find("series tail") != std::string::npos);

        r = run("frequency --delta-max 2.0");  // beyond the barrier
        CHECK(r.code == 2);
    }

    // ---- fa-curve ----------------------------------------------------------
    {
        RunResult r = run("fa-curve --n-points 2 --out tiny.csv");
        CHECK(r.code == 0);
        const std::string text = slurp(g_scratch / "tiny.csv");
        CHECK(count_lines(text) == 4);  // header, 2 points, metadata comment
        CHECK(text.rfind("oa_rad,f_hz\n", 0) == 0);
        CHECK(text.find("# oa_limit_rad=") != std::string::npos);

        r = run("fa-curve --n-points 5 --svg --out charted.csv");
        CHECK(r.code == 0);
        CHECK(slurp(g_scratch / "charted.svg").find("<polyline") != std::string::npos);

        r = run("fa-curve --n-points 1 --out bad.csv");
        CHECK(r.code == 1);
    }

    // ---- simulate ----------------------------------------------------------
    {
        RunResult r = run("simulate --case 1 --t-end 2 --traj-out traj.csv "
                          "--cycles-out cyc.csv");
        CHECK(r.code == 0);
        CHECK(slurp(g_scratch / "traj.csv").rfind("t,delta,speed\n", 0) == 0);
        CHECK(count_lines(slurp(g_scratch / "cyc.csv")) > 3);

        r = run("simulate --delta-dev 0 --speed-dev 0 --t-end 1 --traj-out eq.csv "
                "--cycles-out eqc.csv");
        CHECK(r.code == 0);
        CHECK(slurp(g_scratch / "eqc.csv") == "t_mid,oa_rad,of_hz\n");
        CHECK(!r.err.empty());  // warns that no cycles were detected

        r = run("simulate --delta-dev 0 --speed-dev 8 --t-end 5 --traj-out d.csv "
                "--cycles-out dc.csv");
        CHECK(r.code == 2);
        CHECK(r.err.find("t=") != std::string::npos);
        CHECK(!fs::exists(g_scratch / "d.csv"));  // no partial outputs

        r = run("simulate --case 1 --dt 0 --t-end 1 --traj-out x.csv --cycles-out y.csv");
        CHECK(r.code == 2);
    }

    // ---- analyze -----------------------------------------------------------
    {
        RunResult r = run("fa-curve --n-points 100 --out fa.csv");
        CHECK(r.code == 0);
        r = run("analyze --input traj.csv --curve fa.csv --out cmp.csv");
        CHECK(r.code == 0);
        const std::string cmp = slurp(g_scratch / "cmp.csv");
        CHECK(cmp.rfind("t_mid,oa_rad,of_hz,predicted_f_hz,rel_err\n", 0) == 0);
        CHECK(count_lines(cmp) > 3);

        // Without --curve the curve is computed from the (default) config.
        r = run("analyze --input traj.csv --steady-state 0 --out cmp2.csv");
        CHECK(r.code == 0);

        spit(g_scratch / "empty.csv", "");
        r = run("analyze --input empty.csv --curve fa.csv --out z.csv");
        CHECK(r.code == 3);

        r = run("analyze --input no_such.csv --curve fa.csv --out z.csv");
        CHECK(r.code == 3);

        // Curve that covers none of the measured amplitudes: warned, not fatal.
        spit(g_scratch / "far.csv", "oa_rad,f_hz\n0.4,1.1\n0.5,1.05\n");
        std::string small = "t,delta\n";
        for (int i = 0; i < 400; ++i) {
            char row[64];
            std::snprintf(row, sizeof row, "%.3f,%.6f\n", 0.01 * i,
                          0.05 * std::sin(2.0 * 3.14159265358979 * 1.2 * 0.01 * i));
            small += row;
        }
        spit(g_scratch / "small.csv", small);
        r = run("analyze --input small.csv --steady-state 0 --curve far.csv --out oor.csv");
        CHECK(r.code == 0);
        CHECK(slurp(g_scratch / "oor.csv") == "t_mid,oa_rad,of_hz,predicted_f_hz,rel_err\n");
        CHECK(r.err.find("outside the curve amplitude range") != std::string::npos);
    }

    // ---- aggregate ---------------------------------------------------------
    {
        spit(g_scratch / "mm4.csv",
             "t,delta_1,delta_2,delta_3,delta_4\n"
             "0,1,1,0,0\n0.5,1,1,0,0\n1,1,1,0,0\n");
        RunResult r = run("aggregate --input mm4.csv --group-a delta_1=6.5,delta_2=6.5 "
                          "--group-b delta_3=6.175,delta_4=6.175 --out agg.csv");
        CHECK(r.code == 0);
        CHECK(slurp(g_scratch / "agg.csv") == "t,delta_eq\n0,1\n0.5,1\n1,1\n");

        r = run("aggregate --input mm4.csv --group-a delta_9=1 --group-b delta_2=1 "
                "--out agg2.csv");
        CHECK(r.code == 1);

        r = run("aggregate --input mm4.csv --group-a delta_1=x --group-b delta_2=1 "
                "--out agg3.csv");
        CHECK(r.code == 1);
    }

    // ---- config file -------------------------------------------------------
    {
        spit(g_scratch / "run.json",
             R"({"init": {"delta_rad": 0.52359877559829882, "ddelta_rad_s": 2.0}})");
        RunResult r = run("--config run.json frequency");
        CHECK(r.code == 0);
        CHECK(r.out == "1.13029\n");

        // Flags override the config file.
        r = run("--config run.json frequency --delta-max 0");
        CHECK(r.code == 0);
        CHECK(r.out == "1.20062\n");

        spit(g_scratch / "deg.json", R"({"io": {"degrees": true}})");
        r = run("--config deg.json extremes --case 1");
        CHECK(r.code == 0);
        CHECK(near(first_number(r.out), 35.3496, 1e-3));

        spit(g_scratch / "bad_key.json", R"({"system": {"inertia": 3.0}})");
        r = run("--config bad_key.json natural-freq");
        CHECK(r.code == 1);
        CHECK(r.err.find("unknown config key") != std::string::npos);

        spit(g_scratch / "two_deltas.json",
             R"({"init": {"delta_rad": 0.5, "delta_deg": 30.0, "ddelta_rad_s": 2.0}})");
        r = run("--config two_deltas.json extremes");
        CHECK(r.code == 1);

        r = run("--config no_such.json natural-freq");
        CHECK(r.code == 3);
    }

    // ---- top-level usage ---------------------------------------------------
    {
        RunResult r = run("");
        CHECK(r.code == 1);

        r = run("--no-such-flag natural-freq");
        CHECK(r.code == 1);

        r = run("--case 4 natural-freq");
        CHECK(r.code == 1);

        r = run("--help");
        CHECK(r.code == 0);
        CHECK(r.out.find("natural-freq") != std::string::npos);
    }

    std::printf("cli_checks: %d checks, %d failed\n", g_total, g_failed);
    return g_failed == 0 ? 0 : 1;
}
