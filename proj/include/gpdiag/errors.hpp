#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gpdiag {

/// Input violated a documented precondition (non-Hermitian matrix, bad step size, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that come from the numerics rather than from the caller.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian has full numerical rank: nothing is stationary.
class NoSteadyState : public NumericalError {
 public:
  NoSteadyState() : NumericalError("no steady state: Liouvillian has full numerical rank") {}
};

/// More than one independent stationary state. Carries the rank deficiency and,
/// when raised from a path sampler, the index of the offending sample.
class DegenerateSteadyState : public NumericalError {
 public:
  explicit DegenerateSteadyState(std::size_t deficiency,
                                 std::optional<std::size_t> sample = std::nullopt)
      : NumericalError(describe(deficiency, sample)), deficiency_(deficiency), sample_(sample) {}

  std::size_t deficiency() const noexcept { return deficiency_; }
  std::optional<std::size_t> sample_index() const noexcept { return sample_; }

 private:
  static std::string describe(std::size_t deficiency, std::optional<std::size_t> sample) {
    std::string msg = "degenerate steady state (rank deficiency " + std::to_string(deficiency) + ")";
    if (sample) msg += " at sample " + std::to_string(*sample);
    return msg;
  }

  std::size_t deficiency_;
  std::optional<std::size_t> sample_;
};

/// Pancharatnam singularity: the weighted overlap has (numerically) zero modulus.
class UndefinedPhase : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Configuration text could not be parsed or holds out-of-range values.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gpdiag
