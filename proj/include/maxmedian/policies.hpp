#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxmedian/index.hpp"
#include "maxmedian/order_stats.hpp"
#include "maxmedian/rng.hpp"

namespace maxmedian {

enum class PolicyKind { MaxMedian, MollifiedMaxMedian, UniformRandom, FixedArm, RoundRobin };

// Policy choice plus its parameter. Arms are 0-based here; the textual form
// "fixed:<k>" uses the 1-based arm label.
struct PolicySpec {
    PolicyKind kind = PolicyKind::MaxMedian;
    std::size_t fixed_arm = 0;

    static PolicySpec max_median() { return {PolicyKind::MaxMedian, 0}; }
    static PolicySpec mollified_max_median() { return {PolicyKind::MollifiedMaxMedian, 0}; }
    static PolicySpec uniform() { return {PolicyKind::UniformRandom, 0}; }
    static PolicySpec fixed(std::size_t arm) { return {PolicyKind::FixedArm, arm}; }
    static PolicySpec round_robin() { return {PolicyKind::RoundRobin, 0}; }

    // "max-median" | "mollified-max-median" | "uniform" | "fixed:<k>" | "round-robin"
    static PolicySpec parse(std::string_view text);
    std::string label() const;

    bool uses_index() const noexcept {
        return kind == PolicyKind::MaxMedian || kind == PolicyKind::MollifiedMaxMedian;
    }

    friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

// Exploration probabilities with divergent sum.
//   Harmonic: eps_t = 1/(t+1)
//   Power:    eps_t = (1+t)^-alpha, 0 < alpha < 1
class EpsilonSchedule {
public:
    enum class Kind { Harmonic, Power };

    static EpsilonSchedule harmonic() { return EpsilonSchedule(Kind::Harmonic, 1.0); }
    static EpsilonSchedule power(double alpha);

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }

    friend bool operator==(const EpsilonSchedule&, const EpsilonSchedule&) = default;

private:
    EpsilonSchedule(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

    Kind kind_ = Kind::Harmonic;
    double alpha_ = 1.0;
};

// eps_t for t >= 1.
double epsilon(const EpsilonSchedule& schedule, std::uint64_t t);

// Mutable state of one policy on one trajectory.
//
// The first K choices sweep arms 0..K-1. Afterwards the index policies pick the
// argmax of their index vector with probability 1 - eps and a uniform arm
// (argmax included) with probability eps. Per step the policy stream supplies
// one uniform for explore/exploit, one more for the explored arm only on the
// explore branch, and one for tie-breaking only when the argmax is not unique.
class PolicyState {
public:
    // Throws ConfigError for fewer than two arms or a fixed arm out of range.
    PolicyState(std::size_t arms, PolicySpec policy, EpsilonSchedule schedule,
                Mollifier mollifier, std::uint64_t seed);

    std::size_t arms() const noexcept { return pulls_.size(); }
    std::uint64_t step() const noexcept { return step_; }
    std::uint64_t min_pulls() const noexcept { return min_pulls_; }
    std::span<const std::uint64_t> pulls() const noexcept { return pulls_; }
    const RewardArchive& archive(std::size_t arm) const { return archives_.at(arm); }
    const PolicySpec& policy() const noexcept { return policy_; }
    const EpsilonSchedule& schedule() const noexcept { return schedule_; }
    const Mollifier& mollifier() const noexcept { return mollifier_; }

    // True once every arm has at least one reward.
    bool initialized() const noexcept { return min_pulls_ >= 1; }

    // Order-statistic rank each arm's index reads under the current counts.
    std::uint64_t index_rank(std::size_t arm) const;

    // W_k for every arm (all zeros for the baselines). Throws StateError before
    // every arm has been pulled once.
    std::span<const double> indices() const;

    // Arm for the next pull, given explicit draws: u decides explore/exploit and
    // v picks the explored arm. Tie-breaks draw from the internal stream.
    std::size_t choose_arm(double eps, double u, double v);

    // Arm for the next pull using eps_{step+1} and the internal stream.
    std::size_t next_arm();

    // Records a pull. Throws RangeError for a bad arm and PreconditionError for a
    // non-finite reward (state is left unchanged in both cases).
    void update(std::size_t arm, double reward);

    UniformStream& stream() noexcept { return stream_; }

private:
    double compute_index(std::size_t arm) const;
    void refresh_all_indices();
    std::size_t argmax_with_ties();

    PolicySpec policy_;
    EpsilonSchedule schedule_;
    Mollifier mollifier_;
    UniformStream stream_;
    std::uint64_t step_ = 0;
    std::uint64_t min_pulls_ = 0;
    std::vector<std::uint64_t> pulls_;
    std::vector<RewardArchive> archives_;
    std::vector<double> indices_;
    std::vector<std::size_t> scratch_;
};

}  // namespace maxmedian
