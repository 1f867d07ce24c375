#include "maxmedian/simulator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "maxmedian/error.hpp"
#include "maxmedian/rng.hpp"

namespace maxmedian {

namespace {

constexpr std::array<std::string_view, 6> kPresetNames = {
    "poly1", "poly2", "exp10", "gauss20", "large100-poly", "large100-exp"};

constexpr std::uint64_t kLarge100PolySeed = 0x6c61726765313030ULL;
constexpr std::uint64_t kLarge100ExpSeed = 0x6c61726765657870ULL;

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs) {
    MeanSe r;
    if (xs.empty()) return r;
    const double n = static_cast<double>(xs.size());
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return r;
}

ExperimentConfig base_preset(std::string_view name, std::vector<DistributionSpec> arms,
                             std::size_t best_arm, PolicySpec policy) {
    ExperimentConfig c;
    c.name = std::string(name);
    c.arms = std::move(arms);
    c.best_arm = best_arm;
    c.policy = policy;
    c.schedule = EpsilonSchedule::harmonic();
    c.mollifier = Mollifier::sqrt_over_log();
    c.horizon = 5000;
    c.trajectories = 500;
    c.checkpoints = default_checkpoints(c.horizon);
    return c;
}

std::size_t argmin_index(std::span<const double> xs) {
    return static_cast<std::size_t>(std::min_element(xs.begin(), xs.end()) - xs.begin());
}

}  // namespace

void ExperimentConfig::validate() const {
    if (arms.size() < 2) throw ConfigError("arms", "at least two arms are required");
    if (best_arm >= arms.size()) throw ConfigError("best_arm", "best arm outside 1..K");
    if (policy.kind == PolicyKind::FixedArm && policy.fixed_arm >= arms.size()) {
        throw ConfigError("policy", "fixed arm outside 1..K");
    }
    if (horizon < arms.size()) throw ConfigError("horizon", "horizon must be at least K");
    if (trajectories < 1) throw ConfigError("trajectories", "need at least one trajectory");
    if (checkpoints.empty()) throw ConfigError("checkpoints", "need at least one checkpoint");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > horizon) {
            throw ConfigError("checkpoints", "checkpoint outside [1, horizon]");
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw ConfigError("checkpoints", "checkpoints must be strictly increasing");
        }
    }
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t t : {100, 250, 500, 1000, 2500, 5000}) {
        if (t < horizon) out.push_back(t);
    }
    if (horizon >= 1) out.push_back(horizon);
    return out;
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

std::vector<double> large100_lambdas(Family family) {
    UniformStream stream(family == Family::Pareto ? kLarge100PolySeed : kLarge100ExpSeed);
    std::vector<double> lambdas(100);
    for (double& l : lambdas) l = 1.1 * std::pow(stream.next(), -0.5);
    return lambdas;
}

ExperimentConfig preset(std::string_view name) {
    if (name == "poly1") {
        std::vector<DistributionSpec> arms;
        for (double l : {2.1, 2.3, 1.3, 1.1, 1.9}) arms.push_back(DistributionSpec::pareto(1.0, l));
        return base_preset(name, std::move(arms), 3, PolicySpec::max_median());
    }
    if (name == "poly2") {
        const std::array<double, 7> lambdas = {2.5, 2.8, 4.0, 3.1, 1.4, 1.4, 1.9};
        const std::array<double, 7> coeffs = {1.0, 1.0, 1.0, 1.0, 1.1, 1.01, 1.0};
        std::vector<DistributionSpec> arms;
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            arms.push_back(DistributionSpec::pareto(coeffs[k], lambdas[k]));
        }
        return base_preset(name, std::move(arms), 4, PolicySpec::mollified_max_median());
    }
    if (name == "exp10") {
        std::vector<DistributionSpec> arms;
        for (double l : {2.1, 2.4, 1.9, 1.3, 1.1, 2.9, 1.5, 2.2, 2.6, 1.4}) {
            arms.push_back(DistributionSpec::shifted_exponential(1.0, l));
        }
        return base_preset(name, std::move(arms), 4, PolicySpec::max_median());
    }
    if (name == "gauss20") {
        const std::array<double, 20> sigmas = {1.64, 2.29, 1.79, 2.67, 1.70, 1.36, 1.90,
                                               2.19, 0.80, 0.12, 1.65, 1.19, 1.88, 0.89,
                                               3.35, 1.5,  2.22, 3.03, 1.08, 0.48};
        std::vector<DistributionSpec> arms;
        for (double s : sigmas) arms.push_back(DistributionSpec::gaussian(1.0, s));
        return base_preset(name, std::move(arms), 14, PolicySpec::max_median());
    }
    if (name == "large100-poly" || name == "large100-exp") {
        const bool poly = name == "large100-poly";
        const auto lambdas = large100_lambdas(poly ? Family::Pareto : Family::ShiftedExponential);
        std::vector<DistributionSpec> arms;
        for (double l : lambdas) {
            arms.push_back(poly ? DistributionSpec::pareto(1.0, l)
                                : DistributionSpec::shifted_exponential(1.0, l));
        }
        auto c = base_preset(name, std::move(arms), argmin_index(lambdas),
                             PolicySpec::mollified_max_median());
        c.trajectories = 100;
        return c;
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t index,
                                const RewardTransform& transform) {
    config.validate();
    const std::size_t arms = config.arm_count();
    const std::size_t n_cp = config.checkpoints.size();

    PolicyState state(arms, config.policy, config.schedule, config.mollifier,
                      derive_seed(config.master_seed, index, StreamRole::Policy));
    UniformStream env(derive_seed(config.master_seed, index, StreamRole::Environment));

    TrajectoryRecord rec;
    rec.chosen.reserve(config.horizon);
    rec.running_max.reserve(n_cp);
    rec.best_arm_pulls.reserve(n_cp);
    rec.min_pulls.reserve(n_cp);
    rec.arm_pulls.reserve(n_cp);
    rec.best_index_leads.reserve(n_cp);

    double running_max = -std::numeric_limits<double>::infinity();
    std::size_t cp = 0;
    for (std::uint64_t t = 1; t <= config.horizon; ++t) {
        const std::size_t arm = state.next_arm();
        double reward = sample(config.arms[arm], env.next());
        if (transform) reward = transform(reward);
        state.update(arm, reward);
        running_max = std::max(running_max, reward);
        rec.chosen.push_back(static_cast<std::uint32_t>(arm));

        if (cp < n_cp && config.checkpoints[cp] == t) {
            rec.running_max.push_back(running_max);
            rec.best_arm_pulls.push_back(state.pulls()[config.best_arm]);
            rec.min_pulls.push_back(state.min_pulls());
            rec.arm_pulls.emplace_back(state.pulls().begin(), state.pulls().end());
            bool leads = false;
            if (config.policy.uses_index() && state.initialized()) {
                const auto w = state.indices();
                leads = true;
                for (std::size_t k = 0; k < arms; ++k) {
                    if (k != config.best_arm && w[k] >= w[config.best_arm]) leads = false;
                }
            }
            rec.best_index_leads.push_back(leads ? 1 : 0);
            ++cp;
        }
    }
    rec.final_pulls.assign(state.pulls().begin(), state.pulls().end());
    return rec;
}

void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& fn) {
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const auto n = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<TrajectoryRecord> run_trajectories(const ExperimentConfig& config, unsigned workers) {
    config.validate();
    std::vector<TrajectoryRecord> out(config.trajectories);
    parallel_for(config.trajectories, workers,
                 [&](std::uint64_t i) { out[i] = run_trajectory(config, i); });
    return out;
}

std::vector<double> oracle_running_max(const ExperimentConfig& config, std::uint64_t replication) {
    config.validate();
    const DistributionSpec& best = config.arms[config.best_arm];
    UniformStream stream(derive_seed(config.master_seed, replication, StreamRole::Oracle));
    std::vector<double> out;
    out.reserve(config.checkpoints.size());
    double running_max = -std::numeric_limits<double>::infinity();
    std::size_t cp = 0;
    for (std::uint64_t t = 1; cp < config.checkpoints.size(); ++t) {
        running_max = std::max(running_max, sample(best, stream.next()));
        if (config.checkpoints[cp] == t) {
            out.push_back(running_max);
            ++cp;
        }
    }
    return out;
}

OracleEstimate estimate_oracle_max(const ExperimentConfig& config, std::uint64_t t,
                                   std::uint64_t replications, unsigned workers) {
    if (t < 1) throw PreconditionError("estimate_oracle_max: t must be >= 1");
    if (replications < 1) throw PreconditionError("estimate_oracle_max: need >= 1 replication");
    if (config.best_arm >= config.arms.size()) throw ConfigError("best_arm", "best arm outside 1..K");
    const DistributionSpec& best = config.arms[config.best_arm];

    std::vector<double> maxima(replications);
    parallel_for(replications, workers, [&](std::uint64_t r) {
        UniformStream stream(derive_seed(config.master_seed, r, StreamRole::Oracle));
        double m = -std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < t; ++i) m = std::max(m, sample(best, stream.next()));
        maxima[r] = m;
    });
    const MeanSe ms = mean_se(maxima);
    return {ms.mean, ms.se, expected_max_asymptotic(best, t)};
}

MetricsSummary summarize(const ExperimentConfig& config, std::span<const TrajectoryRecord> records,
                         std::span<const std::vector<double>> oracle_paths) {
    config.validate();
    MetricsSummary out;
    out.preset = config.name;
    out.policy = config.policy.label();
    out.heavy_tail = std::any_of(config.arms.begin(), config.arms.end(), [](const auto& a) {
        return a.family() == Family::Pareto && a.lambda() <= 2.0;
    });

    const std::size_t arms = config.arm_count();
    std::vector<double> maxima(records.size());
    std::vector<double> oracle(oracle_paths.size());
    for (std::size_t c = 0; c < config.checkpoints.size(); ++c) {
        CheckpointSummary row;
        row.t = config.checkpoints[c];
        row.n_traj = records.size();
        const double t = static_cast<double>(row.t);
        const double n = static_cast<double>(std::max<std::size_t>(records.size(), 1));

        double best_frac = 0.0, min_pulls = 0.0, leads = 0.0;
        row.arm_pull_frac.assign(arms, 0.0);
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto& rec = records[r];
            maxima[r] = rec.running_max[c];
            best_frac += static_cast<double>(rec.best_arm_pulls[c]) / t;
            min_pulls += static_cast<double>(rec.min_pulls[c]);
            leads += rec.best_index_leads[c];
            for (std::size_t k = 0; k < arms; ++k) {
                row.arm_pull_frac[k] += static_cast<double>(rec.arm_pulls[c][k]) / t;
            }
        }
        row.best_arm_frac = best_frac / n;
        row.mean_min_pulls = min_pulls / n;
        row.best_index_lead_frac = leads / n;
        for (double& f : row.arm_pull_frac) f /= n;

        const MeanSe policy = mean_se(maxima);
        row.mean_max = policy.mean;
        row.se_mean_max = policy.se;
        std::vector<double> sorted = maxima;
        std::sort(sorted.begin(), sorted.end());
        row.median_max = quantile_sorted(sorted, 0.5);
        row.iqr_max = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

        for (std::size_t r = 0; r < oracle_paths.size(); ++r) oracle[r] = oracle_paths[r][c];
        const MeanSe om = mean_se(oracle);
        row.oracle_mean_max = om.mean;
        row.oracle_se = om.se;
        row.oracle_analytic = expected_max_asymptotic(config.arms[config.best_arm], row.t);
        row.strong_regret = row.oracle_mean_max - row.mean_max;
        row.weak_ratio = row.mean_max / row.oracle_mean_max;
        out.rows.push_back(std::move(row));
    }
    return out;
}

MetricsSummary run_batch(const ExperimentConfig& config, unsigned workers) {
    const auto records = run_trajectories(config, workers);
    std::vector<std::vector<double>> oracle(config.trajectories);
    parallel_for(config.trajectories, workers,
                 [&](std::uint64_t r) { oracle[r] = oracle_running_max(config, r); });
    return summarize(config, records, oracle);
}

}  // namespace maxmedian
