#include "swingfreq/series.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace swingfreq::series {

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    Coeffs c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + i < n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

Coeffs power(const Coeffs& base, double alpha) {
    const std::size_t n = base.size();
    if (n == 0) return {};
    if (!(base[0] > 0.0)) throw std::invalid_argument("series power needs base[0] > 0");
    Coeffs g(n, 0.0);
    g[0] = std::pow(base[0], alpha);
    for (std::size_t m = 1; m < n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= m; ++k)
            acc += ((alpha + 1.0) * static_cast<double>(k) - static_cast<double>(m)) *
                   base[k] * g[m - k];
        g[m] = acc / (static_cast<double>(m) * base[0]);
    }
    return g;
}

std::pair<Coeffs, Coeffs> sin_cos(const Coeffs& a) {
    const std::size_t n = a.size();
    Coeffs s(n, 0.0), c(n, 0.0);
    if (n == 0) return {s, c};
    assert(a[0] == 0.0);
    c[0] = 1.0;
    // s' = a'*c, c' = -a'*s, integrated coefficient by coefficient.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double sp = 0.0, cp = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            const double da = static_cast<double>(j + 1) * a[j + 1];
            sp += da * c[i - j];
            cp += da * s[i - j];
        }
        s[i + 1] = sp / static_cast<double>(i + 1);
        c[i + 1] = -cp / static_cast<double>(i + 1);
    }
    return {s, c};
}

Coeffs arcsin_scaled(double k, std::size_t n) {
    Coeffs a(n, 0.0);
    double central = 1.0;  // C(2m,m)/4^m
    double kpow = k;
    for (std::size_t m = 0; 2 * m + 1 < n; ++m) {
        if (m > 0) {
            const double dm = static_cast<double>(m);
            central *= (2.0 * dm - 1.0) / (2.0 * dm);
            kpow *= k * k;
        }
        a[2 * m + 1] = 2.0 * central / (2.0 * static_cast<double>(m) + 1.0) * kpow;
    }
    return a;
}

Coeffs sqrt_one_minus_sq(std::size_t n) {
    Coeffs c(n, 0.0);
    double coef = 1.0;  // binom(1/2,m)*(-1)^m
    for (std::size_t m = 0; 2 * m < n; ++m) {
        if (m > 0) coef *= (2.0 * static_cast<double>(m) - 3.0) / (2.0 * static_cast<double>(m));
        c[2 * m] = coef;
    }
    return c;
}

Coeffs inv_sqrt_one_minus_k2sq(double k, std::size_t n) {
    Coeffs c(n, 0.0);
    double coef = 1.0;  // C(2m,m)/4^m * k^(2m)
    for (std::size_t m = 0; 2 * m < n; ++m) {
        if (m > 0) {
            const double dm = static_cast<double>(m);
            coef *= (2.0 * dm - 1.0) / (2.0 * dm) * k * k;
        }
        c[2 * m] = coef;
    }
    return c;
}

}  // namespace swingfreq::series
