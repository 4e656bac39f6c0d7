// Benchmark: serial vs parallel F-A sweep, plus an equality check. Not a
// ctest; run manually, e.g.  fa_bench [n_points]  (default 2000).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "swingfreq/analytic.hpp"

using namespace swingfreq;

namespace {

double seconds_for(FaCurve (*sweep)(const SmibParams&, int, const FaMethod&, const QuadOptions&),
                   const SmibParams& p, int n_points, FaCurve& out) {
    const auto start = std::chrono::steady_clock::now();
    out = sweep(p, n_points, FaMethod{}, QuadOptions{});
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int n_points = 2000;
    if (argc > 1) n_points = std::atoi(argv[1]);
    if (n_points < 2) {
        std::fprintf(stderr, "usage: fa_bench [n_points >= 2]\n");
        return 1;
    }

    SmibParams p;
    p.omega0 = 120.0 * std::numbers::pi;

    FaCurve serial, parallel;
    const double t_serial = seconds_for(&fa_curve_serial, p, n_points, serial);
    const double t_parallel = seconds_for(&fa_curve, p, n_points, parallel);

    bool identical = serial.points.size() == parallel.points.size();
    if (identical) {
        for (std::size_t i = 0; i < serial.points.size(); ++i) {
            if (serial.points[i].oa != parallel.points[i].oa ||
                serial.points[i].f != parallel.points[i].f) {
                identical = false;
                break;
            }
        }
    }

    std::printf("n_points   %d\n", n_points);
    std::printf("serial     %.3f s\n", t_serial);
    std::printf("parallel   %.3f s\n", t_parallel);
    std::printf("speedup    %.2fx\n", t_parallel > 0.0 ? t_serial / t_parallel : 0.0);
    std::printf("identical  %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
