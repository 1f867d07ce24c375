#include "maxmedian/config_json.hpp"

#include <set>

#include "json.hpp"
#include "maxmedian/error.hpp"

namespace maxmedian {

namespace {

using nlohmann::json;

const json& member(const json& obj, const std::string& name, const std::string& key) {
    const auto it = obj.find(name);
    if (it == obj.end()) throw ConfigError(key, "missing required field");
    return *it;
}

double number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError(key, "expected a number");
    return j.get<double>();
}

std::uint64_t positive_integer(const json& j, const std::string& key) {
    if (!j.is_number_unsigned()) throw ConfigError(key, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string text(const json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError(key, "expected a string");
    return j.get<std::string>();
}

DistributionSpec parse_arm(const json& j, const std::string& key) {
    if (!j.is_object()) throw ConfigError(key, "expected an object");
    const std::string kind = text(member(j, "kind", key + ".kind"), key + ".kind");
    auto field = [&](const char* name) {
        return number(member(j, name, key + "." + name), key + "." + name);
    };
    try {
        if (kind == "pareto") return DistributionSpec::pareto(field("a"), field("lambda"));
        if (kind == "exp") return DistributionSpec::shifted_exponential(field("a"), field("lambda"));
        if (kind == "gauss") return DistributionSpec::gaussian(field("mu"), field("sigma"));
    } catch (const PreconditionError& e) {
        throw ConfigError(key, e.what());
    }
    throw ConfigError(key + ".kind", "unknown distribution kind '" + kind + "'");
}

json arm_to_json(const DistributionSpec& spec) {
    switch (spec.family()) {
        case Family::Pareto: return {{"kind", "pareto"}, {"a", spec.a()}, {"lambda", spec.lambda()}};
        case Family::ShiftedExponential:
            return {{"kind", "exp"}, {"a", spec.a()}, {"lambda", spec.lambda()}};
        case Family::Gaussian: return {{"kind", "gauss"}, {"mu", spec.mu()}, {"sigma", spec.sigma()}};
    }
    return {};
}

EpsilonSchedule parse_schedule(const json& j) {
    if (!j.is_object()) throw ConfigError("schedule", "expected an object");
    const std::string kind = text(member(j, "kind", "schedule.kind"), "schedule.kind");
    if (kind == "harmonic") return EpsilonSchedule::harmonic();
    if (kind == "power") {
        return EpsilonSchedule::power(number(member(j, "alpha", "schedule.alpha"), "schedule.alpha"));
    }
    throw ConfigError("schedule.kind", "unknown schedule '" + kind + "'");
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "top level must be an object");

    static const std::set<std::string> known = {
        "name", "preset", "arms", "best_arm", "policy", "schedule", "mollifier",
        "horizon", "trajectories", "checkpoints", "master_seed"};
    for (const auto& [k, v] : root.items()) {
        if (!known.contains(k)) throw ConfigError(k, "unknown key");
    }

    ExperimentConfig c;
    bool have_checkpoints = false;
    if (root.contains("preset")) {
        c = preset(text(root["preset"], "preset"));
        have_checkpoints = true;
    } else if (!root.contains("arms")) {
        throw ConfigError("arms", "missing required field");
    }
    if (root.contains("name")) c.name = text(root["name"], "name");
    if (root.contains("arms")) {
        const json& arms = root["arms"];
        if (!arms.is_array()) throw ConfigError("arms", "expected an array");
        c.arms.clear();
        for (std::size_t i = 0; i < arms.size(); ++i) {
            c.arms.push_back(parse_arm(arms[i], "arms[" + std::to_string(i) + "]"));
        }
    }
    if (root.contains("best_arm")) {
        const auto label = positive_integer(root["best_arm"], "best_arm");
        if (label < 1) throw ConfigError("best_arm", "arm labels start at 1");
        c.best_arm = label - 1;
    } else if (!root.contains("preset")) {
        throw ConfigError("best_arm", "missing required field");
    }
    if (root.contains("policy")) c.policy = PolicySpec::parse(text(root["policy"], "policy"));
    if (root.contains("schedule")) c.schedule = parse_schedule(root["schedule"]);
    if (root.contains("mollifier")) c.mollifier = Mollifier::from_name(text(root["mollifier"], "mollifier"));
    if (root.contains("horizon")) c.horizon = positive_integer(root["horizon"], "horizon");
    if (root.contains("trajectories")) {
        c.trajectories = positive_integer(root["trajectories"], "trajectories");
    }
    if (root.contains("checkpoints")) {
        const json& cps = root["checkpoints"];
        if (!cps.is_array()) throw ConfigError("checkpoints", "expected an array");
        c.checkpoints.clear();
        for (const auto& cp : cps) c.checkpoints.push_back(positive_integer(cp, "checkpoints"));
        have_checkpoints = true;
    }
    if (!have_checkpoints || (root.contains("horizon") && !root.contains("checkpoints"))) {
        c.checkpoints = default_checkpoints(c.horizon);
    }
    if (root.contains("master_seed")) c.master_seed = positive_integer(root["master_seed"], "master_seed");
    c.validate();
    return c;
}

std::string config_to_json(const ExperimentConfig& config) {
    json arms = json::array();
    for (const auto& a : config.arms) arms.push_back(arm_to_json(a));
    json schedule = {{"kind", config.schedule.kind() == EpsilonSchedule::Kind::Harmonic ? "harmonic"
                                                                                       : "power"}};
    if (config.schedule.kind() == EpsilonSchedule::Kind::Power) schedule["alpha"] = config.schedule.alpha();
    json j = {{"name", config.name},
              {"arms", arms},
              {"best_arm", config.best_arm + 1},
              {"policy", config.policy.label()},
              {"schedule", schedule},
              {"mollifier", std::string(config.mollifier.name())},
              {"horizon", config.horizon},
              {"trajectories", config.trajectories},
              {"checkpoints", config.checkpoints},
              {"master_seed", config.master_seed}};
    return j.dump(2);
}

}  // namespace maxmedian
