#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warmbox {

// Invalid argument or violated type invariant. Raised by validate() methods
// and by operation preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration problem: parse failure, out-of-schema key, missing field, or
// a requirement gate violated at load. Maps to process exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, std::string gate = {})
      : std::runtime_error(msg), gate_name(std::move(gate)) {}
  std::string gate_name;  // non-empty when a named requirement gate failed
};

// Requested suspension height is outside the reachable interval.
class UnreachableHeightError : public ValidationError {
 public:
  UnreachableHeightError(const std::string& msg, double lo_m, double hi_m)
      : ValidationError(msg), achievable_lo_m(lo_m), achievable_hi_m(hi_m) {}
  double achievable_lo_m;
  double achievable_hi_m;
};

// Static balance produced a negative wheel load.
class TipOverError : public ValidationError {
 public:
  TipOverError(const std::string& msg, std::size_t leg)
      : ValidationError(msg), leg_index(leg) {}
  std::size_t leg_index;
};

// Steady-state heat demand exceeds the installed heater power.
class UndersizedHeaterError : public ValidationError {
 public:
  UndersizedHeaterError(const std::string& msg, double required_w)
      : ValidationError(msg), required_power_w(required_w) {}
  double required_power_w;
};

// A simulation step failed mid-run. Maps to process exit code 3.
class SimulationAbort : public std::runtime_error {
 public:
  SimulationAbort(const std::string& msg, std::size_t step, std::string kind_tag)
      : std::runtime_error(msg), step_index(step), kind(std::move(kind_tag)) {}
  std::size_t step_index;
  std::string kind;  // machine-readable tag, e.g. "tip_over"
};

// Sweep parameter path does not address a numeric config field.
class SweepPathError : public std::runtime_error {
 public:
  SweepPathError(const std::string& msg, std::string segment, std::string valid)
      : std::runtime_error(msg), failing_segment(std::move(segment)), valid_keys(std::move(valid)) {}
  std::string failing_segment;
  std::string valid_keys;  // comma-joined keys available at the failing level
};

}  // namespace warmbox
