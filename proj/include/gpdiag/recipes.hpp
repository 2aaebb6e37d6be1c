#pragma once

// Frozen parameter sets for the published figures. Each recipe writes one CSV
// per panel plus a <recipe>_meta.txt listing the grids that were used.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpdiag/csv.hpp"
#include "gpdiag/sweep.hpp"

namespace gpdiag {

enum class Recipe { fig2, fig3a, fig3b, fig4, fig5, fig6 };

Recipe parse_recipe(std::string_view name);
std::string_view recipe_name(Recipe r);
std::span<const Recipe> all_recipes();

struct RecipeOptions {
  std::size_t samples = 601;  ///< per axis, >= 3
  unsigned jobs = 1;
  std::optional<double> gamma2;
  std::optional<double> gamma3;  ///< only affects scheme I panels
};

RunSummary run_recipe(Recipe r, const std::filesystem::path& out_dir, const RecipeOptions& opt);

/// Values on a 2-D grid, row i of x paired with column j of y, stored x-major.
struct Grid2D {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<CsvField> z;

  CsvField at(std::size_t i, std::size_t j) const { return z[i * y.size() + j]; }
};

/// Fig. 5 panels: Rabi frequencies and delta2 for scheme I, swept along delta1.
struct Fig5Panel {
  const char* tag;
  double omega1;
  double omega2;
  double delta2;
};
std::span<const Fig5Panel> fig5_panels();

inline constexpr double kFig5Start = -3.0;
inline constexpr double kFig5End = 3.0;

/// Scheme I path of a Fig. 5 panel.
PathSpec fig5_path(const Fig5Panel& panel, std::size_t samples, const RecipeOptions& opt = {});

/// Slope d gamma / d delta of the resonance phase near (delta = 0, X0).
/// gamma(delta, X) is the Pancharatnam phase between the dark state at X0 and the dominant steady-state eigenvector at
/// (delta, X0 + dX), both with a real positive |00> amplitude. x = delta
/// (reduced detuning), y = dX. rabi_norm fixes sqrt(O1^2 + O2^2); gamma3 = 0
/// is the decoherence-free system.
Grid2D resonance_slope_surface(double x0, std::span<const double> delta, std::span<const double> dx, double rabi_norm,
                               double gamma2, double gamma3, unsigned jobs);

/// Relative change of gamma_g over the (Delta, O1 - O2) plane at O2 = 6.
/// gamma_g(Delta, diff) is the phase accumulated along delta1 from the lower
/// edge of the map; z is 100 (gamma_g - gamma_ref) / |gamma_ref| with the
/// reference taken at Delta = 0, O1 = O2. x = Delta, y = diff.
struct StabilityMap {
  Grid2D percent;
  double reference = 0.0;
};
StabilityMap gamma_stability_map(std::span<const double> delta, std::span<const double> diff,
                                 const RecipeOptions& opt);

/// Uniform grid including both ends.
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace gpdiag
