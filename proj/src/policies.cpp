#include "maxmedian/policies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "maxmedian/error.hpp"

namespace maxmedian {

namespace {

std::size_t uniform_arm(double v, std::size_t arms) {
    const auto k = static_cast<std::size_t>(v * static_cast<double>(arms));
    return std::min(k, arms - 1);
}

}  // namespace

PolicySpec PolicySpec::parse(std::string_view text) {
    if (text == "max-median") return max_median();
    if (text == "mollified-max-median") return mollified_max_median();
    if (text == "uniform") return uniform();
    if (text == "round-robin") return round_robin();
    if (text.starts_with("fixed:")) {
        const auto digits = text.substr(6);
        std::size_t label = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), label);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || label < 1) {
            throw ConfigError("policy", "bad fixed arm in '" + std::string(text) + "'");
        }
        return fixed(label - 1);
    }
    throw ConfigError("policy", "unknown policy '" + std::string(text) + "'");
}

std::string PolicySpec::label() const {
    switch (kind) {
        case PolicyKind::MaxMedian: return "max-median";
        case PolicyKind::MollifiedMaxMedian: return "mollified-max-median";
        case PolicyKind::UniformRandom: return "uniform";
        case PolicyKind::FixedArm: return "fixed:" + std::to_string(fixed_arm + 1);
        case PolicyKind::RoundRobin: return "round-robin";
    }
    return "unknown";
}

EpsilonSchedule EpsilonSchedule::power(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("schedule.alpha", "power schedule needs 0 < alpha < 1");
    }
    return EpsilonSchedule(Kind::Power, alpha);
}

double epsilon(const EpsilonSchedule& schedule, std::uint64_t t) {
    if (t < 1) throw PreconditionError("epsilon: t must be >= 1");
    const double tt = static_cast<double>(t);
    switch (schedule.kind()) {
        case EpsilonSchedule::Kind::Harmonic: return 1.0 / (tt + 1.0);
        case EpsilonSchedule::Kind::Power: return std::pow(1.0 + tt, -schedule.alpha());
    }
    return 0.0;
}

PolicyState::PolicyState(std::size_t arms, PolicySpec policy, EpsilonSchedule schedule,
                         Mollifier mollifier, std::uint64_t seed)
    : policy_(policy),
      schedule_(schedule),
      mollifier_(policy.kind == PolicyKind::MaxMedian ? Mollifier::identity() : mollifier),
      stream_(seed),
      pulls_(arms, 0),
      archives_(arms),
      indices_(arms, 0.0) {
    if (arms < 2) throw ConfigError("arms", "a bandit needs at least two arms");
    if (policy.kind == PolicyKind::FixedArm && policy.fixed_arm >= arms) {
        throw ConfigError("policy", "fixed arm " + std::to_string(policy.fixed_arm + 1) +
                                        " exceeds arm count " + std::to_string(arms));
    }
    scratch_.reserve(arms);
}

std::uint64_t PolicyState::index_rank(std::size_t arm) const {
    if (arm >= arms()) throw RangeError("index_rank: arm out of range");
    if (!initialized()) throw StateError("index_rank: every arm must be pulled once first");
    return mollified_rank(pulls_[arm], min_pulls_, mollifier_);
}

double PolicyState::compute_index(std::size_t arm) const {
    if (!policy_.uses_index()) return 0.0;
    return archives_[arm].select(index_rank(arm));
}

void PolicyState::refresh_all_indices() {
    for (std::size_t k = 0; k < arms(); ++k) indices_[k] = compute_index(k);
}

std::span<const double> PolicyState::indices() const {
    if (!initialized()) throw StateError("indices: initialization sweep not complete");
    return indices_;
}

std::size_t PolicyState::argmax_with_ties() {
    const double best = *std::max_element(indices_.begin(), indices_.end());
    scratch_.clear();
    for (std::size_t k = 0; k < arms(); ++k) {
        if (indices_[k] == best) scratch_.push_back(k);
    }
    if (scratch_.size() == 1) return scratch_.front();
    return scratch_[uniform_arm(stream_.next(), scratch_.size())];
}

std::size_t PolicyState::choose_arm(double eps, double u, double v) {
    if (step_ < arms()) return static_cast<std::size_t>(step_);
    if (!initialized()) throw StateError("choose_arm: some arm was never pulled");
    switch (policy_.kind) {
        case PolicyKind::MaxMedian:
        case PolicyKind::MollifiedMaxMedian:
            if (u >= eps) return argmax_with_ties();
            return uniform_arm(v, arms());
        case PolicyKind::UniformRandom:
            return uniform_arm(u, arms());
        case PolicyKind::FixedArm:
            return policy_.fixed_arm;
        case PolicyKind::RoundRobin:
            return static_cast<std::size_t>(step_ % arms());
    }
    return 0;
}

std::size_t PolicyState::next_arm() {
    if (step_ < arms()) return static_cast<std::size_t>(step_);
    switch (policy_.kind) {
        case PolicyKind::MaxMedian:
        case PolicyKind::MollifiedMaxMedian: {
            const double eps = epsilon(schedule_, step_ + 1);
            const double u = stream_.next();
            const double v = u < eps ? stream_.next() : 0.5;
            return choose_arm(eps, u, v);
        }
        case PolicyKind::UniformRandom:
            return choose_arm(0.0, stream_.next(), 0.5);
        case PolicyKind::FixedArm:
        case PolicyKind::RoundRobin:
            return choose_arm(0.0, 0.5, 0.5);
    }
    return 0;
}

void PolicyState::update(std::size_t arm, double reward) {
    if (arm >= arms()) {
        throw RangeError("update: arm " + std::to_string(arm) + " outside [0, " +
                         std::to_string(arms()) + ")");
    }
    archives_[arm].insert(reward);
    const std::uint64_t before = pulls_[arm]++;
    ++step_;

    const std::uint64_t old_min = min_pulls_;
    if (before == old_min) {
        min_pulls_ = *std::min_element(pulls_.begin(), pulls_.end());
    }
    if (!initialized()) return;
    if (min_pulls_ != old_min) {
        refresh_all_indices();
    } else {
        indices_[arm] = compute_index(arm);
    }
}

}  // namespace maxmedian
