// Reference computations used only by the tests. None of these call into the
// library's numerical paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

namespace oracle {

/// Fifth-order Richardson-extrapolated central difference in long double.
inline long double derivative(const std::function<long double(long double)>& f, long double x,
                              long double h = 1e-4L) {
    auto d = [&](long double s) { return (f(x + s) - f(x - s)) / (2 * s); };
    return (4 * d(h / 2) - d(h)) / 3;
}

/// Composite Simpson rule with n (even) panels.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, int n) {
    const long double h = (b - a) / n;
    long double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4 : 2);
    }
    return sum * h / 3;
}

/// Binomial pmf by log-gamma in long double.
inline long double binomial_pmf(std::int64_t n, std::int64_t k, long double p) {
    if (p == 0) return k == 0 ? 1 : 0;
    if (p == 1) return k == n ? 1 : 0;
    const long double log_pmf = std::lgamma(static_cast<long double>(n + 1)) -
                                std::lgamma(static_cast<long double>(k + 1)) -
                                std::lgamma(static_cast<long double>(n - k + 1)) +
                                k * std::log(p) + (n - k) * std::log1p(-p);
    return std::exp(log_pmf);
}

/// Exact standard deviation of g(n/N) for n ~ Bin(N, p), by enumerating every outcome.
inline double exact_sd(const std::function<long double(long double)>& g, std::int64_t runs,
                       long double p) {
    long double mean = 0;
    long double second = 0;
    for (std::int64_t k = 0; k <= runs; ++k) {
        const long double w = binomial_pmf(runs, k, p);
        const long double v = g(static_cast<long double>(k) / runs);
        mean += w * v;
        second += w * v * v;
    }
    return static_cast<double>(std::sqrt(second - mean * mean));
}

inline long double canonical_chi(long double p) {
    return std::asin(2 * p - 1) + std::numbers::pi_v<long double> / 2;
}

/// Round half to even at the given number of decimals.
inline double round_half_even(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::nearbyint(x * scale) / scale;
}

}  // namespace oracle
