#include "maxmedian/index.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "maxmedian/error.hpp"

namespace maxmedian {

namespace {

void require_rank_args(std::uint64_t n, std::uint64_t m, const char* op) {
    if (m < 1 || m > n) {
        throw PreconditionError(std::string(op) + ": need 1 <= m <= n (got n=" +
                                std::to_string(n) + ", m=" + std::to_string(m) + ")");
    }
}

// Slack for treating C(n-d,m)/C(n,m) == 1/2 as a tie despite rounding in the product.
constexpr double kHalfTieSlack = 1e-12;

__extension__ using u128 = unsigned __int128;

}  // namespace

std::uint64_t max_median_rank(std::uint64_t n, std::uint64_t m) {
    require_rank_args(n, m, "max_median_rank");
    return (n + m - 1) / m;
}

Mollifier Mollifier::from_name(std::string_view name) {
    if (name == "sqrt-over-log") return sqrt_over_log();
    if (name == "none") return identity();
    throw ConfigError("mollifier", "unknown mollifier '" + std::string(name) + "'");
}

double Mollifier::operator()(double x) const {
    if (!(x >= 1.0)) throw PreconditionError("mollifier: argument must be >= 1");
    switch (kind_) {
        case Kind::SqrtOverLog:
            if (x < std::exp(1.0)) return 1.0;
            return std::sqrt(x) / std::log(x);
        case Kind::Identity:
            return x;
    }
    return x;
}

std::string_view Mollifier::name() const noexcept {
    return kind_ == Kind::SqrtOverLog ? "sqrt-over-log" : "none";
}

std::uint64_t mollified_rank(std::uint64_t n, std::uint64_t m, const Mollifier& h) {
    require_rank_args(n, m, "mollified_rank");
    if (h.kind() == Mollifier::Kind::Identity) return max_median_rank(n, m);
    const double raw = std::ceil(static_cast<double>(n) / h(static_cast<double>(m)));
    if (!(raw >= 1.0)) return 1;
    if (raw >= static_cast<double>(n)) return n;
    return static_cast<std::uint64_t>(raw);
}

std::uint64_t exact_median_rank(std::uint64_t n, std::uint64_t m) {
    require_rank_args(n, m, "exact_median_rank");
    // ratio == C(n-d, m) / C(n, m), updated by C(n-d,m)/C(n-d+1,m) = (n-d+1-m)/(n-d+1).
    long double ratio = 1.0L;
    for (std::uint64_t d = 1; d <= n - m; ++d) {
        const auto top = static_cast<long double>(n - d + 1 - m);
        const auto bottom = static_cast<long double>(n - d + 1);
        ratio *= top / bottom;
        if (ratio <= 0.5L * (1.0L + kHalfTieSlack)) return d;
    }
    // C(m-1, m) = 0.
    return n - m + 1;
}

std::uint64_t rank_upper_bound(std::uint64_t n, std::uint64_t m) {
    require_rank_args(n, m, "rank_upper_bound");
    const double frac = 1.0 - std::pow(2.0, -1.0 / static_cast<double>(m));
    const double v = std::ceil(static_cast<double>(n) * frac);
    return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(v), 1, n);
}

double subset_maxima_median_bruteforce(std::span<const double> values, std::size_t m) {
    const std::size_t n = values.size();
    if (n > 20) throw PreconditionError("subset_maxima_median_bruteforce: at most 20 values");
    if (m < 1 || m > n) throw PreconditionError("subset_maxima_median_bruteforce: need 1 <= m <= n");

    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
    std::vector<double> maxima;
    do {
        double best = -INFINITY;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) best = std::max(best, values[i]);
        }
        maxima.push_back(best);
    } while (std::prev_permutation(pick.begin(), pick.end()));

    const std::size_t pos = (maxima.size() + 1) / 2;  // ceil(count/2)-th largest
    std::nth_element(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(pos - 1),
                     maxima.end(), std::greater<>{});
    return maxima[pos - 1];
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > UINT64_MAX) {
            throw RangeError("binomial: C(" + std::to_string(n) + ", " + std::to_string(k) +
                             ") overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace maxmedian
