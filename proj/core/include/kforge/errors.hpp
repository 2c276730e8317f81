#pragma once

#include <stdexcept>
#include <string>

namespace kforge {

/// Bad or inconsistent user-supplied configuration (CLI exit code 2).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A design request that cannot be satisfied under the hardware limits
/// (CLI exit code 4), e.g. pinned endpoints further apart than alpha*T.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kforge
