#pragma once

#include <stdexcept>
#include <string>

namespace maxmedian {

// Argument outside an operation's documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rank, arm, or order-statistic position out of range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Operation called in the wrong lifecycle phase (e.g. indices before the sweep).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Invalid experiment or policy configuration. key() names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace maxmedian
