#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// library, so each frozen value is checked against an independent route.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;

// Composite Simpson on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

// int_0^inf e^{-x} ln x dx, after x = e^s.
inline double exp_log_integral() {
    return simpson([](double s) { return s * std::exp(s - std::exp(s)); }, -50.0, 5.0, 200000);
}

// Gamma(z) = int_0^inf e^{-x} x^{z-1} dx, after x = e^s.
inline double gamma_by_quadrature(double z) {
    return simpson([z](double s) { return std::exp(z * s - std::exp(s)); }, -60.0 / z, 5.0, 200000);
}

inline BigInt big_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// min{d >= 1 : 2 C(n-d, m) <= C(n, m)} in exact integer arithmetic.
inline unsigned exact_rank_bigint(unsigned n, unsigned m) {
    const BigInt total = big_binomial(n, m);
    for (unsigned d = 1;; ++d) {
        if (2 * big_binomial(n - d, m) <= total) return d;
    }
}

// Ranks (1 = largest) of the maxima of all m-subsets of {1..n}, via bitmasks.
inline std::vector<unsigned> subset_max_ranks(unsigned n, unsigned m) {
    std::vector<unsigned> ranks;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) != m) continue;
        ranks.push_back(static_cast<unsigned>(__builtin_ctz(mask)) + 1);
    }
    std::sort(ranks.begin(), ranks.end());
    return ranks;
}

// Median rank of subset maxima: position ceil(count/2) of the ascending rank list.
inline unsigned bruteforce_median_rank(unsigned n, unsigned m) {
    const auto ranks = subset_max_ranks(n, m);
    return ranks[(ranks.size() + 1) / 2 - 1];
}

}  // namespace oracle
