#pragma once

#include "gpdiag/density.hpp"

namespace gpdiag {

/// Two-mode photon state in the basis {|00>, |01>, |11>} (mode-2, mode-1 occupancy).
struct TwoPhotonState {
  DensityMatrix rho;
};

/// The same state embedded in the full two-qubit space {|00>, |01>, |10>, |11>}.
/// The |10> row and column are zero: mode 2 cannot fire before mode 1.
struct TwoQubitState {
  DensityMatrix rho;
};

/// Entanglement monotone in [0, 1].
struct ConcurrenceValue {
  double c = 0.0;
  explicit operator double() const noexcept { return c; }
};

/// Relabels |3> -> |00>, |2> -> |01>, |1> -> |11>: the atom still in |3> has
/// emitted nothing yet, the atom back in |1> has emitted both photons.
TwoPhotonState atomic_to_photon(const AtomicState& a);

TwoQubitState embed_two_qubit(const TwoPhotonState& p);

/// Wootters spin-flip concurrence.
ConcurrenceValue concurrence(const TwoQubitState& q);

/// Tr(rho^2)
double purity(const DensityMatrix& rho);

}  // namespace gpdiag
