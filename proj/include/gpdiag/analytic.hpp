#pragma once

// Closed forms for the decoherence-free ladder (gamma3 = 0) close to two-photon
// resonance, written in the reduced variables
//   X = arctan(omega1 / omega2),  dbar = Delta / R,  g21 = gamma2 / (2 R),
// with R = sqrt(omega1^2 + omega2^2). Used to cross-check the numerics.

#include "gpdiag/cascade.hpp"

namespace gpdiag {

struct IdealParams {
  double mixing_angle = 0.0;       ///< X, radians
  double reduced_detuning = 0.0;   ///< dbar
  double reduced_linewidth = 0.0;  ///< g21 >= 0

  static IdealParams from(const SystemParams& p);
};

/// Scheme-II parameters realizing (X, dbar) at drive strength `rabi_norm`.
/// The detuning is put on the lower transition (delta2 = 0).
SystemParams ideal_system(double mixing_angle, double reduced_detuning, double rabi_norm,
                          double gamma2 = kDefaultGamma2);

/// First-order-in-dbar two-photon density matrix (photon basis). With S = sin X,
/// C = cos X, the upper triangle is
///   [ S^2   dbar C S^2   -S C (1 + i g21 dbar) ]
///   [        0           -dbar C^2 S          ]
///   [                     C^2                 ]
/// and the rest follows by Hermitian symmetry. Not PSD away from dbar = 0, so
/// it is returned as a raw matrix.
CMatrix ideal_density_matrix(const IdealParams& p);

/// (-sin X, 0, cos X) in the photon basis.
CVector dark_state(double mixing_angle);

/// sin 2X
double pure_concurrence(double mixing_angle);

/// Published second-order coefficient, transcribed term by term:
///   -(1/8) cos^4 X (4 + 16 g^2 - (5 + 8 g^2) cos 2X + cos 4X)
///     + C^2 ((1 + 8 g^2) cos 2X + cos 4X) / 16,   C = sin 2X.
double beta_coefficient(double mixing_angle, double g21);

/// Second-order coefficient re-derived from perturbation theory on the
/// steady state: -cos^2 X (g21^2 + sin^2 X) / 2. This is Re of the dbar^2
/// term of <psi(0, X)|psi(dbar, X)> with both states rephased so their |00>
/// amplitude is real.
double beta_coefficient_rederived(double mixing_angle, double g21);

/// Second-order expansion of the resonance phase about (0, X):
///   atan2(-g21 cos^2 X d - g21 C d dX / 4,  1 - dX^2 / 2 + beta d^2).
double taylor_gp(double mixing_angle, double delta, double dX, double g21);

}  // namespace gpdiag
