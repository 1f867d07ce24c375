#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>

namespace maxmedian::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kIoError = 3 };

// What a `run` invocation asks for. Exactly one of config_path / preset is set.
struct RunManifest {
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::string out_dir = "results";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trajectories;
    std::optional<std::uint64_t> horizon;
    unsigned workers = 1;
    bool per_trajectory = false;
};

// Entry point shared by the executable and the tests. `args` excludes argv[0].
int main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace maxmedian::cli
