#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace maxmedian {

// Rank of the practical Max-Median index: ceil(n / m), the order statistic an arm
// with n pulls reports when the least-pulled arm has m pulls. Requires 1 <= m <= n.
std::uint64_t max_median_rank(std::uint64_t n, std::uint64_t m);

// Increasing map h used to sharpen the rank to ceil(n / h(m)).
//
// SqrtOverLog is sqrt(x)/ln(x) for x >= e and 1 on [1, e); ln 1 = 0 makes the raw
// formula undefined at the first pull. Identity (h(x) = x) reproduces the plain
// Max-Median rank and is what the config name "none" selects.
class Mollifier {
public:
    enum class Kind { SqrtOverLog, Identity };

    constexpr Mollifier() = default;
    constexpr explicit Mollifier(Kind kind) : kind_(kind) {}

    static constexpr Mollifier sqrt_over_log() { return Mollifier(Kind::SqrtOverLog); }
    static constexpr Mollifier identity() { return Mollifier(Kind::Identity); }

    // Accepts "sqrt-over-log" and "none"; throws ConfigError otherwise.
    static Mollifier from_name(std::string_view name);

    // Requires x >= 1; the result is >= 1.
    double operator()(double x) const;

    Kind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept;

    friend bool operator==(Mollifier, Mollifier) = default;

private:
    Kind kind_ = Kind::SqrtOverLog;
};

// clamp(ceil(n / h(m)), 1, n). Requires 1 <= m <= n.
std::uint64_t mollified_rank(std::uint64_t n, std::uint64_t m, const Mollifier& h);

// Rank l of the median of the maxima over all m-subsets of n ordered rewards:
//   l = min{ d >= 1 : C(n-d, m) <= C(n, m) / 2 }.
// The binomial ratio is accumulated as prod_i (n-d-i)/(n-i), so any n fits.
std::uint64_t exact_median_rank(std::uint64_t n, std::uint64_t m);

// ceil(n (1 - 2^{-1/m})), an upper bound on exact_median_rank(n, m).
std::uint64_t rank_upper_bound(std::uint64_t n, std::uint64_t m);

// Enumerates every m-subset of values, takes each subset maximum and returns the
// ceil(count/2)-th largest of those maxima. Oracle for exact_median_rank; limited
// to |values| <= 20 (throws PreconditionError beyond).
double subset_maxima_median_bruteforce(std::span<const double> values, std::size_t m);

// Exact C(n, k); throws RangeError when the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace maxmedian
