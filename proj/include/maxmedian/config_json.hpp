#pragma once

#include <string>
#include <string_view>

#include "maxmedian/simulator.hpp"

namespace maxmedian {

// Parses an experiment record such as
//
//   {"name": "demo",
//    "arms": [{"kind": "pareto", "a": 1, "lambda": 2.1}, {"kind": "exp", "a": 1, "lambda": 1.3}],
//    "best_arm": 1, "policy": "max-median", "schedule": {"kind": "harmonic"},
//    "mollifier": "sqrt-over-log", "horizon": 5000, "trajectories": 500,
//    "checkpoints": [100, 1000, 5000], "master_seed": 42}
//
// "preset": "<name>" may be given instead of (or alongside) "arms" to start from
// a preset and override individual keys. best_arm and fixed:<k> are 1-based.
// Throws ConfigError whose key() names the offending field.
ExperimentConfig parse_config(std::string_view json_text);

// Inverse of parse_config (without the "preset" shortcut), pretty-printed.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace maxmedian
