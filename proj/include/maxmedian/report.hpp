#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "maxmedian/simulator.hpp"

namespace maxmedian {

inline constexpr std::string_view kAggregateCsvHeader =
    "checkpoint,policy,preset,mean_max,median_max,iqr_max,oracle_mean_max,oracle_analytic,"
    "strong_regret,weak_ratio,best_arm_frac,se_mean_max,n_traj";

inline constexpr std::string_view kTrajectoryCsvHeader = "traj,checkpoint,max,best_arm_pulls,m_t";

// Shortest decimal string that round-trips to the same double.
std::string format_number(double x);

// Header line plus one row per checkpoint. A missing analytic oracle is an empty field.
void write_aggregate_csv(std::ostream& os, const MetricsSummary& summary);

// Header line plus one row per (trajectory, checkpoint).
void write_trajectory_csv(std::ostream& os, const ExperimentConfig& config,
                          std::span<const TrajectoryRecord> records);

}  // namespace maxmedian
