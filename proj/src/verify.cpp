#include "maxmedian/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "maxmedian/distributions.hpp"
#include "maxmedian/error.hpp"
#include "maxmedian/index.hpp"
#include "maxmedian/order_stats.hpp"
#include "maxmedian/policies.hpp"
#include "maxmedian/rng.hpp"
#include "maxmedian/simulator.hpp"

namespace maxmedian {

namespace {

using CheckFn = CheckResult (*)(const VerifyOptions&);

CheckResult result(std::string_view name, bool ok, const std::ostringstream& detail) {
    return {std::string(name), ok, detail.str()};
}

// Trapezoid rule on the real line after x = e^s; the integrand decays doubly
// exponentially on the right and exponentially on the left.
double integrate_log_scale(const std::function<double(double)>& f, double lo, double hi) {
    const double h = 1e-3;
    const auto n = static_cast<std::size_t>((hi - lo) / h);
    double sum = 0.5 * (f(lo) + f(hi));
    for (std::size_t i = 1; i < n; ++i) sum += f(lo + static_cast<double>(i) * h);
    return sum * h;
}

// -int_0^inf e^{-x} ln x dx
double euler_gamma_by_quadrature() {
    return -integrate_log_scale([](double s) { return std::exp(s - std::exp(s)) * s; }, -40.0, 5.0);
}

CheckResult check_median_rank(const VerifyOptions&) {
    std::size_t cases = 0, bad = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(n - i);
        for (std::size_t m = 1; m <= n; ++m) {
            ++cases;
            const auto l = exact_median_rank(n, m);
            if (subset_maxima_median_bruteforce(values, m) != values[l - 1]) ++bad;
        }
    }
    std::ostringstream d;
    d << cases << " (n,m) cases, " << bad << " mismatches";
    return result("median-rank", bad == 0 && cases == 78, d);
}

CheckResult check_binomial_identity(const VerifyOptions&) {
    std::size_t checked = 0, bad = 0;
    for (std::uint64_t n = 1; n <= 30; ++n) {
        for (std::uint64_t m = 1; m <= n; ++m) {
            std::uint64_t partial = 0;
            for (std::uint64_t d = 1; d <= n - m; ++d) {
                partial += binomial(n - d, m - 1);
                ++checked;
                if (partial != binomial(n, m) - binomial(n - d, m)) ++bad;
            }
        }
    }
    std::ostringstream d;
    d << checked << " (n,m,d) triples, " << bad << " failures";
    return result("binomial-identity", bad == 0, d);
}

CheckResult check_rank_bounds(const VerifyOptions&) {
    std::size_t bad_upper = 0, bad_two = 0;
    for (std::uint64_t n = 1; n <= 200; ++n) {
        for (std::uint64_t m = 1; m <= n; ++m) {
            const auto l = exact_median_rank(n, m);
            if (l < 1 || l > n || l > rank_upper_bound(n, m)) ++bad_upper;
            if (l > (2 * n + m - 1) / m) ++bad_two;
        }
    }
    std::ostringstream d;
    d << "n<=200: " << bad_upper << " violations of ceil(n(1-2^{-1/m})), " << bad_two
      << " of ceil(2n/m)";
    return result("rank-bounds", bad_upper == 0 && bad_two == 0, d);
}

CheckResult check_mollifier_growth(const VerifyOptions&) {
    const Mollifier h = Mollifier::sqrt_over_log();
    bool ok = true;
    double prev_ratio = INFINITY, prev_h = 0.0;
    for (double x = 1e2; x <= 1e6; x *= 10.0) {
        const double ratio = h(x) / (x / std::log(x));
        ok = ok && ratio < prev_ratio && h(x) > prev_h;
        prev_ratio = ratio;
        prev_h = h(x);
    }
    // Nondecreasing on the integers past the e^2 dip.
    for (int m = 8; m <= 100000; ++m) ok = ok && h(m + 1.0) >= h(static_cast<double>(m));
    std::ostringstream d;
    d << "h(1e6)/(1e6/ln 1e6) = " << prev_ratio << ", h(1e6) = " << prev_h;
    return result("mollifier-growth", ok, d);
}

CheckResult check_archive_oracle(const VerifyOptions& opt) {
    UniformStream rng(derive_seed(opt.seed, 1, StreamRole::Oracle));
    RewardArchive archive;
    std::vector<double> all;
    for (int i = 0; i < 10000; ++i) {
        const double x = sample(DistributionSpec::gaussian(0.0, 1.0), rng.next());
        archive.insert(x);
        all.push_back(x);
    }
    std::sort(all.begin(), all.end(), std::greater<>{});
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto zeta = 1 + static_cast<std::size_t>(rng.next() * 10000.0);
        if (archive.select(zeta) != all[zeta - 1]) ++bad;
    }
    std::ostringstream d;
    d << "10^4 inserts, 100 ranks, " << bad << " mismatches";
    return result("archive-oracle", bad == 0, d);
}

CheckResult check_inverse_consistency(const VerifyOptions&) {
    const std::array specs = {DistributionSpec::pareto(1.0, 2.0), DistributionSpec::pareto(2.5, 1.3),
                              DistributionSpec::shifted_exponential(1.0, 1.0),
                              DistributionSpec::shifted_exponential(3.0, 0.7)};
    double worst = 0.0;
    for (const auto& s : specs) {
        for (int i = 1; i <= 9; ++i) {
            const double u = 0.1 * i;
            worst = std::max(worst, std::abs(survival(s, sample(s, u)) - u));
        }
    }
    std::ostringstream d;
    d << "max |survival(sample(u)) - u| = " << worst;
    return result("inverse-consistency", worst <= 1e-12, d);
}

double ks_statistic(const DistributionSpec& spec, UniformStream& rng, std::size_t n) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = sample(spec, rng.next());
    std::sort(xs.begin(), xs.end());
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(spec, xs[i]);
        dmax = std::max({dmax, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return dmax;
}

CheckResult check_sampler_ks(const VerifyOptions& opt) {
    const std::array specs = {DistributionSpec::pareto(1.0, 2.0), DistributionSpec::pareto(2.0, 1.5),
                              DistributionSpec::shifted_exponential(1.0, 1.0),
                              DistributionSpec::shifted_exponential(2.0, 1.5),
                              DistributionSpec::gaussian(1.0, 2.0)};
    const std::size_t n = 100000;
    const double critical = 1.63 / std::sqrt(static_cast<double>(n));
    bool ok = true;
    std::ostringstream d;
    d << "critical " << critical << ";";
    for (std::size_t i = 0; i < specs.size(); ++i) {
        UniformStream rng(derive_seed(opt.seed, 100 + i, StreamRole::Oracle));
        const double ks = ks_statistic(specs[i], rng, n);
        ok = ok && ks < critical;
        d << ' ' << describe(specs[i]) << " D=" << ks;
    }
    return result("sampler-ks", ok, d);
}

CheckResult check_order_stat_concentration(const VerifyOptions& opt) {
    const auto spec = DistributionSpec::shifted_exponential(1.0, 1.0);
    const std::size_t n = 100000, mn = 100, j = (n + mn - 1) / mn;
    int hits = 0;
    std::vector<double> xs(n);
    for (std::uint64_t r = 0; r < 100; ++r) {
        UniformStream rng(derive_seed(opt.seed, 200 + r, StreamRole::Oracle));
        for (auto& x : xs) x = sample(spec, rng.next());
        std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(j - 1), xs.end(),
                         std::greater<>{});
        if (std::abs(xs[j - 1] - std::log(static_cast<double>(mn))) <= 0.5) ++hits;
    }
    std::ostringstream d;
    d << hits << "/100 repetitions within 0.5 of ln 100";
    return result("order-stat-concentration", hits >= 99, d);
}

ExperimentConfig single_arm(const DistributionSpec& spec, std::uint64_t seed) {
    ExperimentConfig c;
    c.arms = {spec, spec};
    c.best_arm = 0;
    c.master_seed = seed;
    return c;
}

CheckResult check_exp_max_constant(const VerifyOptions& opt) {
    const double gamma = euler_gamma_by_quadrature();
    const std::uint64_t t = 10000, reps = 10000;
    const auto est = estimate_oracle_max(
        single_arm(DistributionSpec::shifted_exponential(1.0, 1.0), opt.seed), t, reps);
    const double target = std::log(static_cast<double>(t)) + gamma;
    const bool ok = std::abs(est.mean - target) <= 4.0 * est.standard_error &&
                    std::abs(gamma - std::numbers::egamma) < 1e-9;
    std::ostringstream d;
    d << "quadrature gamma " << gamma << "; MC " << est.mean << " vs ln t + gamma " << target
      << " (4 SE = " << 4.0 * est.standard_error << ")";
    return result("exp-max-constant", ok, d);
}

CheckResult check_oracle_crosscheck(const VerifyOptions& opt) {
    const std::array specs = {DistributionSpec::shifted_exponential(1.0, 1.0),
                              DistributionSpec::shifted_exponential(1.0, 2.0),
                              DistributionSpec::pareto(1.0, 3.0), DistributionSpec::pareto(1.0, 4.0)};
    bool ok = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto est = estimate_oracle_max(single_arm(specs[i], opt.seed + i), 10000, 2000);
        const double rel = std::abs(est.mean / *est.analytic - 1.0);
        ok = ok && rel < 0.05;
        d << ' ' << describe(specs[i]) << " rel.err=" << rel;
    }
    return result("oracle-crosscheck", ok, d);
}

CheckResult check_pareto_max_scale(const VerifyOptions& opt) {
    const auto est = estimate_oracle_max(single_arm(DistributionSpec::pareto(1.0, 3.0), opt.seed),
                                         1000, 10000);
    const double target = std::tgamma(2.0 / 3.0) * 10.0;
    const double rel = std::abs(est.mean / target - 1.0);
    std::ostringstream d;
    d << "MC " << est.mean << " vs Gamma(2/3)*10 = " << target << ", rel.err " << rel;
    return result("pareto-max-scale", rel < 0.05, d);
}

CheckResult check_min_pulls_bound(const VerifyOptions& opt) {
    ExperimentConfig c;
    c.name = "min-pulls";
    for (double l : {1.0, 1.5, 2.0}) c.arms.push_back(DistributionSpec::shifted_exponential(1.0, l));
    c.best_arm = 0;
    c.schedule = EpsilonSchedule::power(0.5);
    c.horizon = 10000;
    c.trajectories = 100;
    c.checkpoints = {c.horizon};
    c.master_seed = opt.seed;
    const double xi = 3.0 * 2.0 + 1.0;
    double eps_sum = 0.0;
    for (std::uint64_t d = 1; d <= c.horizon; ++d) eps_sum += epsilon(c.schedule, d);
    int ok_runs = 0;
    for (std::uint64_t r = 0; r < c.trajectories; ++r) {
        const auto rec = run_trajectory(c, r);
        if (static_cast<double>(rec.min_pulls.back()) >= eps_sum / xi) ++ok_runs;
    }
    std::ostringstream d;
    d << ok_runs << "/100 runs with m(T) >= " << eps_sum / xi;
    return result("min-pulls-bound", ok_runs >= 95, d);
}

CheckResult check_randomization_law(const VerifyOptions& opt) {
    bool ok = true;
    std::ostringstream d;
    const std::array<std::pair<std::size_t, double>, 2> cases = {{{2, 0.5}, {5, 0.1}}};
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto [arms, eps] = cases[c];
        PolicyState state(arms, PolicySpec::max_median(), EpsilonSchedule::harmonic(),
                          Mollifier::identity(), derive_seed(opt.seed, c, StreamRole::Policy));
        // Arm 0 gets the single largest reward so it holds the unique argmax.
        for (std::size_t k = 0; k < arms; ++k) state.update(k, k == 0 ? 10.0 : 1.0 / (k + 1.0));
        std::vector<double> counts(arms, 0.0);
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            const double u = state.stream().next();
            const double v = state.stream().next();
            counts[state.choose_arm(eps, u, v)] += 1.0;
        }
        double chi2 = 0.0;
        for (std::size_t k = 0; k < arms; ++k) {
            const double p = (k == 0 ? 1.0 - eps : 0.0) + eps / arms;
            const double expected = p * draws;
            chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
        }
        const boost::math::chi_squared dist(static_cast<double>(arms - 1));
        const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
        ok = ok && chi2 < critical;
        d << " K=" << arms << " eps=" << eps << " chi2=" << chi2 << " (crit " << critical << ")";
    }
    return result("randomization-law", ok, d);
}

CheckResult check_transform_invariance(const VerifyOptions& opt) {
    auto c = preset("exp10");
    c.horizon = 2000;
    c.checkpoints = {2000};
    c.master_seed = opt.seed;
    int identical = 0;
    for (std::uint64_t r = 0; r < 10; ++r) {
        const auto plain = run_trajectory(c, r);
        const auto mapped = run_trajectory(c, r, [](double x) { return std::exp(x); });
        if (plain.chosen == mapped.chosen) ++identical;
    }
    std::ostringstream d;
    d << identical << "/10 trajectories with identical arm sequences under x -> e^x";
    return result("transform-invariance", identical == 10, d);
}

CheckResult check_index_consistency(const VerifyOptions& opt) {
    auto c = preset("poly1");
    c.trajectories = 200;
    c.checkpoints = {1000, 2500, 5000};
    c.master_seed = opt.seed;
    const auto s = run_batch(c);
    const double f1 = s.rows[0].best_index_lead_frac, f2 = s.rows[1].best_index_lead_frac,
                 f3 = s.rows[2].best_index_lead_frac;
    std::ostringstream d;
    d << "best index strictly largest in " << f1 << ", " << f2 << ", " << f3
      << " of trajectories at t = 1000, 2500, 5000";
    return result("index-consistency", f2 >= f1 - 0.03 && f3 >= f2 - 0.03, d);
}

CheckResult check_determinism(const VerifyOptions& opt) {
    auto c = preset("poly1");
    c.trajectories = 16;
    c.horizon = 1000;
    c.checkpoints = default_checkpoints(c.horizon);
    c.master_seed = opt.seed;
    const auto a = run_trajectories(c, 1);
    const auto b = run_trajectories(c, 4);
    const auto again = run_trajectory(c, 3);
    std::ostringstream d;
    d << "16 trajectories, 1 vs 4 workers";
    return result("determinism", a == b && again == a[3], d);
}

struct NamedCheck {
    std::string_view name;
    CheckFn fn;
};

constexpr std::array<NamedCheck, 16> kChecks = {{
    {"median-rank", check_median_rank},
    {"binomial-identity", check_binomial_identity},
    {"rank-bounds", check_rank_bounds},
    {"mollifier-growth", check_mollifier_growth},
    {"archive-oracle", check_archive_oracle},
    {"inverse-consistency", check_inverse_consistency},
    {"sampler-ks", check_sampler_ks},
    {"order-stat-concentration", check_order_stat_concentration},
    {"exp-max-constant", check_exp_max_constant},
    {"pareto-max-scale", check_pareto_max_scale},
    {"oracle-crosscheck", check_oracle_crosscheck},
    {"min-pulls-bound", check_min_pulls_bound},
    {"randomization-law", check_randomization_law},
    {"transform-invariance", check_transform_invariance},
    {"index-consistency", check_index_consistency},
    {"determinism", check_determinism},
}};

constexpr auto kNames = [] {
    std::array<std::string_view, kChecks.size()> names{};
    for (std::size_t i = 0; i < kChecks.size(); ++i) names[i] = kChecks[i].name;
    return names;
}();

}  // namespace

std::span<const std::string_view> verification_check_names() { return kNames; }

CheckResult run_check(std::string_view name, const VerifyOptions& options) {
    for (const auto& c : kChecks) {
        if (c.name == name) return c.fn(options);
    }
    throw ConfigError("only", "unknown check '" + std::string(name) + "'");
}

std::vector<CheckResult> run_verification(std::span<const std::string> only,
                                          const VerifyOptions& options) {
    std::vector<CheckResult> out;
    if (only.empty()) {
        for (const auto& c : kChecks) out.push_back(c.fn(options));
    } else {
        for (const auto& name : only) out.push_back(run_check(name, options));
    }
    return out;
}

}  // namespace maxmedian
