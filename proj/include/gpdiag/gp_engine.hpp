#pragma once

// Mixed-state geometric phase along paths in control-parameter space.
//
// The phase of a sampled trajectory rho(s_0), ..., rho(s_{M-1}) is
//
//   gamma_g = Arg sum_k sqrt(l_k(0) l_k(M-1)) <phi_k(0)|phi_k(M-1)>
//                       * exp(-i sum_j Arg <phi_k(j)|phi_k(j+1)>)
//
// i.e. the endpoint overlap of every eigenvector branch with the accumulated
// dynamical (parallel-transport) phase removed. Any per-sample rephasing of
// the eigenvectors telescopes out, so no gauge fixing is needed.

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gpdiag/cascade.hpp"

namespace gpdiag {

/// Visibility below which the phase is undefined.
inline constexpr double kVisibilityEpsilon = 1e-9;
/// Eigenvalues below this are treated as empty branches.
inline constexpr double kBranchEpsilon = 1e-10;

enum class ControlParam { delta1, delta2, omega1, omega2 };

ControlParam parse_control_param(std::string_view name);
std::string_view control_param_name(ControlParam p);
double get_param(const SystemParams& p, ControlParam which);
SystemParams with_param(SystemParams p, ControlParam which, double value);

struct PathSpec {
  SystemParams base;
  ControlParam varying = ControlParam::delta1;
  double start = 0.0;
  double end = 1.0;
  std::size_t samples = 2;

  void validate() const;
  /// Uniform grid; value_at(0) == start and value_at(samples - 1) == end exactly.
  double value_at(std::size_t j) const;
  std::vector<double> values() const;
  SystemParams params_at(std::size_t j) const;
};

/// Two-photon steady states at every sample of the path. A degenerate sample
/// raises DegenerateSteadyState carrying its index.
std::vector<DensityMatrix> sample_path(const PathSpec& spec);

struct SpectralPoint {
  /// values[k] and vectors.column(k) belong to branch k.
  std::vector<double> values;
  CMatrix vectors;
};

struct SpectralTrajectory {
  std::vector<SpectralPoint> points;
  /// Branches non-empty at both ends of the full trajectory.
  std::vector<std::size_t> kept_branches;
  /// Per branch, min_j |<phi_k(j)|phi_k(j+1)>|.
  std::vector<double> min_overlap;
  /// Ambiguous branch matching or a consecutive overlap below 1 - 10 h^2.
  bool resolution_warning = false;
  double eps_lambda = kBranchEpsilon;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t branches() const noexcept { return points.empty() ? 0 : points.front().values.size(); }
  CVector vector(std::size_t point, std::size_t branch) const { return points[point].vectors.column(branch); }
};

/// Eigen-decomposes each state and carries branches across samples by greedy
/// maximal overlap (ties go to the lower branch index). The first point is in
/// descending eigenvalue order. `spacing` is the parameter step used by the
/// resolution heuristic; it defaults to 1 / (M - 1).
SpectralTrajectory track_spectrum(std::span<const DensityMatrix> states, double eps_lambda = kBranchEpsilon,
                                  std::optional<double> spacing = std::nullopt);

struct BranchTerm {
  std::size_t branch;
  /// sqrt(l_k(0) l_k(end)) * z_k
  std::complex<double> term;
};

struct GeometricPhaseResult {
  double gamma_g = 0.0;  ///< radians, (-pi, pi]
  std::vector<BranchTerm> branch_terms;
  double visibility = 0.0;
  bool resolution_warning = false;
};

/// Phase over the whole trajectory. Throws UndefinedPhase when no branch is
/// kept or the visibility is below kVisibilityEpsilon.
GeometricPhaseResult mixed_state_gp(const SpectralTrajectory& traj);
/// Phase over the prefix [0, last].
GeometricPhaseResult mixed_state_gp(const SpectralTrajectory& traj, std::size_t last);

/// Arg <psi0|psi1> in (-pi, pi]. Both vectors must be normalized within 1e-10.
double pancharatnam_phase(std::span<const Complex> psi0, std::span<const Complex> psi1);

/// Pancharatnam phase between the dominant eigenvectors of two states, each
/// rephased so that its amplitude on basis vector `anchor` is real and
/// positive. Throws UndefinedPhase if that amplitude vanishes.
double dominant_state_phase(const DensityMatrix& reference, const DensityMatrix& state, std::size_t anchor = 0);
/// Same, against a fixed normalized reference vector that is used as given.
double dominant_state_phase(std::span<const Complex> reference, const DensityMatrix& state, std::size_t anchor = 0);

struct CurvePoint {
  double s = 0.0;
  std::optional<double> value;  ///< empty where the phase is undefined
};

/// Shifts by multiples of 2 pi so that consecutive defined values differ by at most pi.
void unwrap(std::vector<CurvePoint>& curve);

/// gamma_g(s_j) over the prefix [s_0, s_j] for every j, anchored to 0 at s_0 and unwrapped.
std::vector<CurvePoint> gp_curve(const SpectralTrajectory& traj, std::span<const double> s);
std::vector<CurvePoint> gp_curve(const PathSpec& spec);

/// d value / ds. Central differences inside, second-order one-sided at the ends
/// and next to gaps. Requires >= 3 points on a uniform grid.
std::vector<CurvePoint> gp_derivative(std::span<const CurvePoint> curve);

}  // namespace gpdiag
