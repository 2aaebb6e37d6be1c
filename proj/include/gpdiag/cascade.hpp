#pragma once

// Driven three-level ladder |1> -> |2> -> |3> in the frame rotating at the two
// drive frequencies. All rates and frequencies are in units of gamma = 1 MHz,
// hbar = 1, times in 1/gamma.

#include <string_view>

#include "gpdiag/density.hpp"

namespace gpdiag {

/// Decay configuration of the top level.
enum class Scheme {
  I,       ///< metastable top level, gamma3 = 1
  II,      ///< stable top level, gamma3 = 0 (decoherence-free two-photon state)
  Custom,  ///< rates supplied explicitly
};

inline constexpr double kDefaultGamma2 = 6.0;
inline constexpr double kSchemeOneGamma3 = 1.0;

struct SystemParams {
  double omega1 = 0.0;  ///< Rabi frequency on 1<->2
  double omega2 = 0.0;  ///< Rabi frequency on 2<->3
  double delta1 = 0.0;
  double delta2 = 0.0;
  double gamma2 = kDefaultGamma2;   ///< decay |2> -> |1>
  double gamma3 = kSchemeOneGamma3; ///< decay |3> -> |2>

  /// Default rates for a scheme; Custom behaves like I.
  static SystemParams for_scheme(Scheme s, double omega1 = 0.0, double omega2 = 0.0,
                                 double delta1 = 0.0, double delta2 = 0.0);

  /// Delta = delta1 + delta2
  double two_photon_detuning() const noexcept { return delta1 + delta2; }
  /// sqrt(omega1^2 + omega2^2)
  double rabi_norm() const noexcept;
  /// X = arctan(omega1 / omega2), in [0, pi/2] for non-negative drives.
  double mixing_angle() const noexcept;
  /// Delta / sqrt(omega1^2 + omega2^2)
  double reduced_detuning() const noexcept;
  /// gamma2 / (2 sqrt(omega1^2 + omega2^2))
  double reduced_linewidth() const noexcept;

  /// Throws ContractViolation for negative drives/rates or non-finite values.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme s);

/// H = -d1 |2><2| - (d1 + d2) |3><3| + O1 (|2><1| + h.c.) + O2 (|3><2| + h.c.)
CMatrix build_hamiltonian(const SystemParams& p);

/// -i[H, rho] + gamma2 D[|1><2|] rho + gamma3 D[|2><3|] rho, with
/// D[L] rho = L rho L^dagger - {L^dagger L, rho} / 2.
/// Accepts any 3x3 matrix; the map is linear.
CMatrix lindblad_rhs(const SystemParams& p, const CMatrix& rho);

/// 9x9 matrix of the same generator on row-major vectorized rho.
CMatrix liouvillian(const SystemParams& p);

/// Unique fixed point of the master equation, from the Liouvillian null space.
AtomicState steady_state(const SystemParams& p);

/// Largest step accepted by evolve(): 0.01 / max(1, O1, O2, |d1| + |d2|, g2, g3).
double max_stable_step(const SystemParams& p);

/// Plain RK4 march of lindblad_rhs without any renormalization. Exposed so the
/// trace drift of the integrator itself can be measured.
CMatrix integrate_rk4(const SystemParams& p, const CMatrix& rho0, double t_final, double dt);

/// RK4 march, then re-Hermitized and renormalized to unit trace. The step is
/// shrunk so that an integer number of steps lands exactly on t_final.
AtomicState evolve(const SystemParams& p, const AtomicState& rho0, double t_final, double dt);

}  // namespace gpdiag
