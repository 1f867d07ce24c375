// Acceptance runner: one [PASS]/[FAIL] line per criterion, exit 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "maxmedian/cli.hpp"
#include "maxmedian/distributions.hpp"
#include "maxmedian/index.hpp"
#include "maxmedian/order_stats.hpp"
#include "maxmedian/policies.hpp"
#include "maxmedian/rng.hpp"
#include "maxmedian/simulator.hpp"
#include "oracles.hpp"

using namespace maxmedian;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

constexpr std::uint64_t kSeed = 20220101;

Outcome median_rank_oracle() {
    const auto start = Clock::now();
    int cases = 0, mismatches = 0;
    for (unsigned n = 1; n <= 12; ++n) {
        std::vector<double> values(n);
        for (unsigned i = 0; i < n; ++i) values[i] = 100.0 - 3.0 * i;
        for (unsigned m = 1; m <= n; ++m) {
            ++cases;
            const auto rank = exact_median_rank(n, m);
            const bool ok = rank == oracle::bruteforce_median_rank(n, m) &&
                            subset_maxima_median_bruteforce(values, m) == values[rank - 1];
            if (!ok) ++mismatches;
        }
    }
    const double elapsed = seconds_since(start);
    return {cases == 78 && mismatches == 0 && elapsed < 5.0,
            fmt("%d cases, %d mismatches, %.3f s (limit 5 s)", cases, mismatches, elapsed)};
}

Outcome binomial_identity() {
    int triples = 0, failures = 0;
    for (unsigned n = 1; n <= 30; ++n) {
        for (unsigned m = 1; m <= n; ++m) {
            for (unsigned d = 1; d <= n; ++d) {
                ++triples;
                oracle::BigInt lhs = 0;
                for (unsigned i = 1; i <= d; ++i) lhs += oracle::big_binomial(n - i, m - 1);
                const oracle::BigInt rhs = oracle::big_binomial(n, m) - oracle::big_binomial(n - d, m);
                std::uint64_t lib_lhs = 0;
                for (unsigned i = 1; i <= d; ++i) lib_lhs += binomial(n - i, m - 1);
                const std::uint64_t lib_rhs = binomial(n, m) - binomial(n - d, m);
                if (lhs != rhs || lib_lhs != lib_rhs || oracle::BigInt(lib_rhs) != rhs) ++failures;
            }
        }
    }
    return {failures == 0, fmt("%d (n,m,d) triples, %d failures", triples, failures)};
}

Outcome rank_bounds() {
    int pairs = 0, upper = 0, coarse = 0, crosscheck = 0;
    for (unsigned n = 1; n <= 200; ++n) {
        for (unsigned m = 1; m <= n; ++m) {
            ++pairs;
            const auto l = exact_median_rank(n, m);
            if (l > rank_upper_bound(n, m)) ++upper;
            if (l > (2ULL * n + m - 1) / m) ++coarse;
            if (n <= 60 && l != oracle::exact_rank_bigint(n, m)) ++crosscheck;
        }
    }
    return {upper == 0 && coarse == 0 && crosscheck == 0,
            fmt("%d pairs; violations: %d of ceil(n(1-2^(-1/m))), %d of ceil(2n/m); "
                "%d disagreements with big-integer rank (n <= 60)",
                pairs, upper, coarse, crosscheck)};
}

Outcome archive_oracle() {
    std::mt19937_64 gen(kSeed);
    std::uniform_real_distribution<double> value(-1e3, 1e3);
    RewardArchive archive;
    std::vector<double> all;
    for (int i = 0; i < 10000; ++i) {
        // Coarse rounding forces repeated values into the archive.
        const double x = std::round(value(gen) * 10.0) / 10.0;
        archive.insert(x);
        all.push_back(x);
    }
    std::sort(all.begin(), all.end(), std::greater<>());
    std::uniform_int_distribution<std::size_t> rank(1, all.size());
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const auto zeta = rank(gen);
        if (archive.select(zeta) != all[zeta - 1]) ++mismatches;
    }
    return {mismatches == 0, fmt("10000 inserts, 100 ranks, %d mismatches", mismatches)};
}

Outcome transform_invariance() {
    auto c = preset("exp10");
    c.horizon = 2000;
    c.checkpoints = {2000};
    c.trajectories = 20;
    int identical = 0;
    for (std::uint64_t i = 0; i < c.trajectories; ++i) {
        const auto plain = run_trajectory(c, i);
        const auto mapped = run_trajectory(c, i, [](double x) { return std::exp(x); });
        if (plain.chosen == mapped.chosen && plain.chosen.size() == 2000) ++identical;
    }
    return {identical == 20, fmt("%d/20 trajectories with identical arm sequences over T = 2000", identical)};
}

// Mean and standard error of the maximum of t draws, over reps replications.
std::pair<double, double> mc_max(const DistributionSpec& spec, std::uint64_t t, std::uint64_t reps) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        UniformStream stream(derive_seed(kSeed, r, StreamRole::Oracle));
        double best = -INFINITY;
        for (std::uint64_t i = 0; i < t; ++i) best = std::max(best, sample(spec, stream()));
        sum += best;
        sum_sq += best * best;
    }
    const double n = static_cast<double>(reps);
    const double mean = sum / n;
    return {mean, std::sqrt((sum_sq / n - mean * mean) / (n - 1.0))};
}

Outcome exp_max_constant() {
    const double gamma = oracle::exp_log_integral() * -1.0;
    const std::uint64_t t = 100000;
    const auto [mean, se] = mc_max(DistributionSpec::shifted_exponential(1.0, 1.0), t, 10000);
    const double target = std::log(static_cast<double>(t)) + gamma;
    return {std::abs(mean - target) <= 0.02,
            fmt("quadrature gamma %.12f; MC %.5f vs ln t + gamma %.5f, |diff| %.5f (tol 0.02, SE %.5f)",
                gamma, mean, target, std::abs(mean - target), se)};
}

Outcome pareto_max_scale() {
    const double target = oracle::gamma_by_quadrature(2.0 / 3.0) * 10.0;
    const auto spec = DistributionSpec::pareto(1.0, 3.0);
    const auto [mean, se] = mc_max(spec, 1000, 10000);
    const double rel = std::abs(mean - target) / target;
    const double lib_rel = std::abs(*expected_max_asymptotic(spec, 1000) - target) / target;
    return {rel <= 0.05 && lib_rel <= 1e-9,
            fmt("MC %.4f (SE %.4f) vs Gamma(2/3)*10 = %.4f, rel.err %.4f (tol 0.05); "
                "closed form rel.err %.2e",
                mean, se, target, rel, lib_rel)};
}

Outcome min_pulls_bound() {
    ExperimentConfig c;
    c.name = "min-pulls";
    c.arms = {DistributionSpec::shifted_exponential(1.0, 1.0), DistributionSpec::shifted_exponential(1.0, 1.5),
              DistributionSpec::shifted_exponential(1.0, 2.0)};
    c.best_arm = 0;
    c.policy = PolicySpec::max_median();
    c.schedule = EpsilonSchedule::power(0.5);
    c.horizon = 10000;
    c.checkpoints = {10000};
    c.trajectories = 100;
    c.master_seed = kSeed;
    double eps_sum = 0.0;
    for (int d = 1; d <= 10000; ++d) eps_sum += 1.0 / std::sqrt(1.0 + d);
    const double bound = eps_sum / 7.0;
    const auto records = run_trajectories(c, 1);
    int holds = 0;
    std::uint64_t lowest = UINT64_MAX;
    for (const auto& r : records) {
        if (static_cast<double>(r.min_pulls.back()) >= bound) ++holds;
        lowest = std::min(lowest, r.min_pulls.back());
    }
    return {holds >= 95, fmt("%d/100 runs with m(T) >= %.4f (need 95); smallest m(T) = %llu", holds, bound,
                             static_cast<unsigned long long>(lowest))};
}

Outcome randomization_law() {
    std::string detail;
    bool pass = true;
    int which = 0;
    for (const auto& [arms, eps] : std::vector<std::pair<std::size_t, double>>{{2, 0.5}, {5, 0.1}}) {
        PolicyState state(arms, PolicySpec::max_median(), EpsilonSchedule::harmonic(), Mollifier::identity(),
                          derive_seed(kSeed, which, StreamRole::Policy));
        // Arm arms-1 gets the largest reward so the argmax is not arm 0.
        for (std::size_t k = 0; k < arms; ++k) state.update(k, static_cast<double>(k));
        UniformStream draws(derive_seed(kSeed, which, StreamRole::Oracle));
        std::vector<double> counts(arms, 0.0);
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double u = draws(), v = draws();
            counts[state.choose_arm(eps, u, v)] += 1.0;
        }
        double chi2 = 0.0;
        for (std::size_t k = 0; k < arms; ++k) {
            const double p = eps / arms + (k == arms - 1 ? 1.0 - eps : 0.0);
            const double expected = p * n;
            chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
        }
        const boost::math::chi_squared law(static_cast<double>(arms - 1));
        const double critical = boost::math::quantile(law, 0.99);
        pass = pass && chi2 < critical;
        detail += fmt("%sK=%zu eps=%.1f chi2=%.3f (crit %.3f)", which ? "; " : "", arms, eps, chi2, critical);
        ++which;
    }
    return {pass, detail};
}

struct TrendStats {
    double frac_500 = 0.0;
    double frac_final = 0.0;
    std::vector<double> last_window;  // mean pulls per arm over steps 4001..5000
    std::vector<double> final_pulls;  // mean pulls per arm at t = 5000
};

TrendStats trend(const std::string& name) {
    auto c = preset(name);
    c.trajectories = 200;
    c.checkpoints = {500, 4000, 5000};
    const auto records = run_trajectories(c, 1);
    TrendStats s;
    s.last_window.assign(c.arms.size(), 0.0);
    s.final_pulls.assign(c.arms.size(), 0.0);
    for (const auto& r : records) {
        s.frac_500 += static_cast<double>(r.best_arm_pulls[0]) / 500.0;
        s.frac_final += static_cast<double>(r.best_arm_pulls[2]) / 5000.0;
        for (std::size_t k = 0; k < c.arms.size(); ++k) {
            s.last_window[k] += static_cast<double>(r.arm_pulls[2][k] - r.arm_pulls[1][k]);
            s.final_pulls[k] += static_cast<double>(r.arm_pulls[2][k]);
        }
    }
    const double n = static_cast<double>(records.size());
    s.frac_500 /= n;
    s.frac_final /= n;
    for (auto& x : s.last_window) x /= n;
    for (auto& x : s.final_pulls) x /= n;
    return s;
}

// Frozen from a pilot at R = 200, master seed 20220101:
//   poly1   t=500 0.579, t=5000 0.667
//   exp10   t=500 0.377, t=5000 0.614
//   gauss20 t=500 0.005, t=5000 0.0005, arm 10 (sigma 0.12) takes ~998 of the last 1000 pulls
//   poly2   mean final pulls arm 5 4820, arm 6 147
Outcome learning_trend() {
    struct Target {
        const char* name;
        double chance;
        double min_final;  // frozen floor for the final best-arm fraction
        double min_gain;   // frozen floor for final minus t = 500
        std::size_t best;
    };
    const Target targets[] = {{"poly1", 0.2, 0.60, 0.05, 3}, {"exp10", 0.1, 0.55, 0.15, 4}, {"gauss20", 0.05, 0.0, 0.0, 14}};
    bool pass = true;
    std::string detail;
    for (const auto& t : targets) {
        const auto s = trend(t.name);
        bool ok = s.frac_final > t.chance && s.frac_final > s.frac_500 && s.frac_final >= t.min_final &&
                  s.frac_final - s.frac_500 >= t.min_gain;
        std::string extra;
        if (std::string_view(t.name) == "gauss20") {
            const auto top = static_cast<std::size_t>(
                std::max_element(s.last_window.begin(), s.last_window.end()) - s.last_window.begin());
            ok = ok && top == t.best;
            extra = fmt(", plurality of last 1000 pulls: arm %zu (%.1f pulls; arm %zu got %.1f)", top + 1,
                        s.last_window[top], t.best + 1, s.last_window[t.best]);
        }
        pass = pass && ok;
        detail += fmt("%s%s %s: t=500 %.4f, t=5000 %.4f (chance %.2f, floor %.2f, gain floor %.2f)%s",
                      detail.empty() ? "" : "; ", t.name, ok ? "ok" : "FAILED", s.frac_500, s.frac_final, t.chance,
                      t.min_final, t.min_gain, extra.c_str());
    }
    return {pass, detail};
}

Outcome mollified_discrimination() {
    const auto s = trend("poly2");
    const double a5 = s.final_pulls[4], a6 = s.final_pulls[5];
    // Frozen floor: arm 5 receives at least ten times the pulls of arm 6.
    return {a5 > a6 && a5 >= 10.0 * a6,
            fmt("mean pulls at t=5000: arm 5 %.1f, arm 6 %.1f, ratio %.1f (floor 10)", a5, a6, a5 / a6)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::main(args, out, err);
    if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
    return code;
}

Outcome determinism_and_budget() {
    const auto root = fs::temp_directory_path() / "maxmedian_acceptance";
    fs::remove_all(root);
    const auto a = root / "a", b = root / "b", w1 = root / "w1", w8 = root / "w8";
    bool ran = invoke({"run", "--preset", "poly1", "--seed", "42", "--out", a.string()}) == 0 &&
               invoke({"run", "--preset", "poly1", "--seed", "42", "--out", b.string()}) == 0 &&
               invoke({"run", "--preset", "poly1", "--seed", "42", "--workers", "1", "--out", w1.string()}) == 0 &&
               invoke({"run", "--preset", "poly1", "--seed", "42", "--workers", "8", "--out", w8.string()}) == 0;
    const auto ref = slurp(a / "poly1.csv");
    const bool same = ran && !ref.empty() && ref == slurp(b / "poly1.csv") && ref == slurp(w1 / "poly1.csv") &&
                      ref == slurp(w8 / "poly1.csv");

    const auto start = Clock::now();
    const bool bench_ok = invoke({"bench", "--out", (root / "bench").string()}) == 0;
    const double elapsed = seconds_since(start);
    int csvs = 0;
    if (bench_ok) {
        for (const auto& e : fs::directory_iterator(root / "bench")) csvs += e.path().extension() == ".csv";
    }
    fs::remove_all(root);
    return {same && bench_ok && csvs == 18 && elapsed < 1800.0,
            fmt("run --seed 42 twice and workers 1 vs 8: %s; full bench (R=500, T=5000): %d CSVs in %.1f s (limit 1800 s)",
                same ? "byte-identical" : "DIFFERENT", csvs, elapsed)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"median-rank-oracle", median_rank_oracle},
        {"binomial-identity", binomial_identity},
        {"rank-bounds", rank_bounds},
        {"archive-oracle", archive_oracle},
        {"transform-invariance", transform_invariance},
        {"exp-max-constant", exp_max_constant},
        {"pareto-max-scale", pareto_max_scale},
        {"min-pulls-bound", min_pulls_bound},
        {"randomization-law", randomization_law},
        {"learning-trend", learning_trend},
        {"mollified-discrimination", mollified_discrimination},
        {"determinism-and-budget", determinism_and_budget},
    };
    int passed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        passed += o.pass;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d acceptance criteria passed\n", passed, index);
    return passed == index ? 0 : 1;
}
