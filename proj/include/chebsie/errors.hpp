#pragma once

#include <stdexcept>
#include <string>

namespace chebsie {

/// A solver did not produce a trustworthy result (eigensolver failure,
/// shooting bracket not found, integrator step control gave up).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run configuration is malformed or inconsistent.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chebsie
