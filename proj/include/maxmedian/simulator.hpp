#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxmedian/distributions.hpp"
#include "maxmedian/index.hpp"
#include "maxmedian/policies.hpp"

namespace maxmedian {

// One experiment: arms, policy, horizon and trajectory count. Arm indices are
// 0-based; best_arm is declared (used for metrics and the oracle), not inferred.
struct ExperimentConfig {
    std::string name = "custom";
    std::vector<DistributionSpec> arms;
    std::size_t best_arm = 0;
    PolicySpec policy = PolicySpec::max_median();
    EpsilonSchedule schedule = EpsilonSchedule::harmonic();
    Mollifier mollifier = Mollifier::sqrt_over_log();
    std::uint64_t horizon = 5000;
    std::uint64_t trajectories = 500;
    std::vector<std::uint64_t> checkpoints;  // sorted, each in [1, horizon]
    std::uint64_t master_seed = 20220101;

    std::size_t arm_count() const noexcept { return arms.size(); }

    // Throws ConfigError naming the first offending field.
    void validate() const;
};

// {100, 250, 500, 1000, 2500, 5000} clipped to the horizon, plus the horizon.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon);

// poly1, poly2, exp10, gauss20, large100-poly, large100-exp.
std::span<const std::string_view> preset_names();
ExperimentConfig preset(std::string_view name);

// Arms of the large100 presets: lambda_k = 1.1 * U^{-1/2} from a frozen stream.
std::vector<double> large100_lambdas(Family family);

struct TrajectoryRecord {
    std::vector<std::uint32_t> chosen;               // I_1..I_T
    std::vector<double> running_max;                 // M_t per checkpoint
    std::vector<std::uint64_t> best_arm_pulls;       // per checkpoint
    std::vector<std::uint64_t> min_pulls;            // m(t) per checkpoint
    std::vector<std::vector<std::uint64_t>> arm_pulls;  // per checkpoint, per arm
    std::vector<std::uint8_t> best_index_leads;      // W_best strictly largest, per checkpoint
    std::vector<std::uint64_t> final_pulls;

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

// Optional map applied to every reward before the policy sees it.
using RewardTransform = std::function<double(double)>;

// Trajectory `index` of the experiment. A pure function of (config, index): the
// policy and the rewards read separate streams derived with derive_seed.
TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t index,
                                const RewardTransform& transform = {});

// All config.trajectories records, computed on `workers` threads. Output order
// is by trajectory index regardless of scheduling.
std::vector<TrajectoryRecord> run_trajectories(const ExperimentConfig& config,
                                               unsigned workers = 1);

struct OracleEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::optional<double> analytic;
};

// Running max of the best arm alone over the horizon, at each checkpoint.
// Replication r reads the Oracle stream for r, disjoint from every trajectory.
std::vector<double> oracle_running_max(const ExperimentConfig& config, std::uint64_t replication);

// Mean of max of t i.i.d. draws from the best arm over `replications` runs. For
// t equal to a checkpoint this matches the oracle column of run_batch.
OracleEstimate estimate_oracle_max(const ExperimentConfig& config, std::uint64_t t,
                                   std::uint64_t replications, unsigned workers = 1);

struct CheckpointSummary {
    std::uint64_t t = 0;
    double mean_max = 0.0;
    double median_max = 0.0;
    double iqr_max = 0.0;
    double se_mean_max = 0.0;
    double oracle_mean_max = 0.0;
    double oracle_se = 0.0;
    std::optional<double> oracle_analytic;
    double strong_regret = 0.0;  // oracle_mean_max - mean_max
    double weak_ratio = 0.0;     // mean_max / oracle_mean_max
    double best_arm_frac = 0.0;
    double mean_min_pulls = 0.0;
    double best_index_lead_frac = 0.0;
    std::vector<double> arm_pull_frac;
    std::uint64_t n_traj = 0;
};

struct MetricsSummary {
    std::string preset;
    std::string policy;
    // Some arm has a Pareto tail with lambda <= 2: the max has infinite variance
    // and se_mean_max understates the real uncertainty.
    bool heavy_tail = false;
    std::vector<CheckpointSummary> rows;
};

// Aggregates trajectory records against oracle replications (one row per checkpoint).
MetricsSummary summarize(const ExperimentConfig& config, std::span<const TrajectoryRecord> records,
                         std::span<const std::vector<double>> oracle_paths);

// run_trajectories + oracle replications + summarize.
MetricsSummary run_batch(const ExperimentConfig& config, unsigned workers = 1);

// Calls fn(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace maxmedian
