#pragma once

// Parameter sweeps described by a small INI-like config:
//
//   scheme = I
//   omega1 = 6
//   outputs = eigenvalues, concurrence, gamma_g
//   output = sweep.csv
//
//   [axis1]
//   param = delta1
//   start = -3
//   end = 3
//   samples = 601
//
//   [axis2]          (optional)
//   ...
//
// Blank lines and lines starting with '#' are ignored. Unknown keys,
// duplicates and out-of-range values are errors reported with a line number.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpdiag/cascade.hpp"
#include "gpdiag/gp_engine.hpp"

namespace gpdiag {

enum class Output { eigenvalues, purity, concurrence, gamma_g, dgamma };

Output parse_output(std::string_view name);
std::string_view output_name(Output o);

struct Axis {
  ControlParam param = ControlParam::delta1;
  double start = 0.0;
  double end = 1.0;
  std::size_t samples = 2;

  std::vector<double> values() const;
  bool operator==(const Axis&) const = default;
};

struct SweepSpec {
  Scheme scheme = Scheme::I;
  /// Fully resolved: scheme defaults are filled in.
  SystemParams base;
  std::optional<Axis> axis1;
  std::optional<Axis> axis2;
  /// Canonical order, no duplicates.
  std::vector<Output> outputs{Output::eigenvalues, Output::purity, Output::concurrence};
  std::string output = "sweep.csv";

  bool operator==(const SweepSpec&) const = default;
};

SweepSpec parse_config(std::string_view text);
SweepSpec load_config(const std::filesystem::path& path);
/// Canonical text; parse_config(serialize_config(s)) == s.
std::string serialize_config(const SweepSpec& spec);

/// Steady-state observables of the two-photon state at one parameter point.
struct PointObservables {
  std::array<double, 3> lambdas{};  ///< descending
  double purity = 0.0;
  double concurrence = 0.0;
};

PointObservables observe(const SystemParams& p);

struct RunSummary {
  std::vector<std::filesystem::path> files;
  std::size_t rows = 0;
  /// Empty CSV fields, i.e. points where some quantity was undefined.
  std::size_t undefined_fields = 0;
};

/// Evaluates the sweep and writes one CSV, rows ordered axis1-major.
/// Throws ConfigError if the spec has no [axis1], NumericalError if no grid
/// point has a unique steady state.
RunSummary run_sweep(const SweepSpec& spec, const std::filesystem::path& path, unsigned jobs);

}  // namespace gpdiag
