#pragma once

#include <stdexcept>
#include <string>

namespace hirenet {

/// Bad inputs: malformed files, unknown ids, invalid option combinations.
/// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration detected before any computation starts.
class ConfigError : public InputError {
public:
  explicit ConfigError(const std::string& what) : InputError(what) {}
};

/// Numerical failure: undefined statistic, non-convergence, divergence.
/// The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hirenet
