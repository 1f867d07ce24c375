#include "maxmedian/report.hpp"

#include <array>
#include <charconv>

namespace maxmedian {

std::string format_number(double x) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

void write_aggregate_csv(std::ostream& os, const MetricsSummary& summary) {
    os << kAggregateCsvHeader << '\n';
    for (const auto& row : summary.rows) {
        os << row.t << ',' << summary.policy << ',' << summary.preset << ','
           << format_number(row.mean_max) << ',' << format_number(row.median_max) << ','
           << format_number(row.iqr_max) << ',' << format_number(row.oracle_mean_max) << ','
           << (row.oracle_analytic ? format_number(*row.oracle_analytic) : std::string()) << ','
           << format_number(row.strong_regret) << ',' << format_number(row.weak_ratio) << ','
           << format_number(row.best_arm_frac) << ',' << format_number(row.se_mean_max) << ','
           << row.n_traj << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const ExperimentConfig& config,
                          std::span<const TrajectoryRecord> records) {
    os << kTrajectoryCsvHeader << '\n';
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        for (std::size_t c = 0; c < config.checkpoints.size(); ++c) {
            os << r << ',' << config.checkpoints[c] << ',' << format_number(rec.running_max[c])
               << ',' << rec.best_arm_pulls[c] << ',' << rec.min_pulls[c] << '\n';
        }
    }
}

}  // namespace maxmedian
