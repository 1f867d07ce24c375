#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxmedian {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    // Base seed of every statistical check; the outcome is a pure function of it.
    std::uint64_t seed = 7;
};

// Names accepted by run_check, in execution order.
std::span<const std::string_view> verification_check_names();

// Runs one invariant suite. Throws ConfigError for an unknown name.
CheckResult run_check(std::string_view name, const VerifyOptions& options = {});

// Runs the named checks, or all of them when `only` is empty.
std::vector<CheckResult> run_verification(std::span<const std::string> only,
                                          const VerifyOptions& options = {});

}  // namespace maxmedian
