#pragma once

#include <stdexcept>
#include <string>

namespace kn {

// Invalid numeric configuration (kernel orders, bandwidths, ranks, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed runtime input (dimension mismatches, bad node vectors, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Fitting failed; carries the condition estimate that triggered the failure.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate(condition_estimate) {}
  double condition_estimate;
};

// Non-physical simulator state or integration failure.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kn
