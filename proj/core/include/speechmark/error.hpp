#pragma once

#include <stdexcept>
#include <string>

namespace speechmark {

/// Malformed or inconsistent input data (schema violations, invariant
/// breaches, unusable recordings).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration value or command-line usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace speechmark
