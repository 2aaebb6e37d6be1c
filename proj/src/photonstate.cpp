#include "gpdiag/photonstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace gpdiag {

namespace {

// Photon index -> atomic level index.
constexpr std::array<std::size_t, 3> kPhotonFromAtom = {2, 1, 0};
// Photon-basis index -> two-qubit index (|10> = 2 is skipped).
constexpr std::array<std::size_t, 3> kQubitSlot = {0, 1, 3};

}  // namespace

TwoPhotonState atomic_to_photon(const AtomicState& a) {
  const CMatrix& src = a.rho.matrix();
  CMatrix m(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = src(kPhotonFromAtom[i], kPhotonFromAtom[j]);
  return TwoPhotonState{DensityMatrix(std::move(m))};
}

TwoQubitState embed_two_qubit(const TwoPhotonState& p) {
  CMatrix m(4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(kQubitSlot[i], kQubitSlot[j]) = p.rho(i, j);
  return TwoQubitState{DensityMatrix(std::move(m))};
}

ConcurrenceValue concurrence(const TwoQubitState& q) {
  // Y (x) Y has entries +-1 on the anti-diagonal: (0,3) = -1, (1,2) = 1, (2,1) = 1, (3,0) = -1.
  const CMatrix yy = CMatrix::from_rows({{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}});

  // With rho = B B^dagger the square roots of the eigenvalues of rho (Y rho* Y)
  // are the singular values of B^T (Y (x) Y) B. Working with B avoids taking
  // square roots of eigenvalues that are zero up to rounding.
  const auto es = hermitian_eig(q.rho.matrix());
  CMatrix b(4);
  for (std::size_t k = 0; k < 4; ++k) {
    CVector v = es.vector(k);
    const double s = std::sqrt(std::max(es.values[k], 0.0));
    for (auto& x : v) x *= s;
    b.set_column(k, v);
  }
  auto r = singular_values(b.transpose() * yy * b).values;
  std::sort(r.begin(), r.end(), std::greater<>());
  const double c = std::max(0.0, r[0] - r[1] - r[2] - r[3]);
  return ConcurrenceValue{std::min(c, 1.0)};
}

double purity(const DensityMatrix& rho) {
  double s = 0.0;
  for (const auto& x : rho.matrix().data()) s += std::norm(x);
  return s;
}

}  // namespace gpdiag
