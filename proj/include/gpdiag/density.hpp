#pragma once

#include "gpdiag/linops.hpp"

namespace gpdiag {

/// Tolerance used for the Hermitian / unit-trace / PSD checks on states.
inline constexpr double kStateTolerance = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix. The invariants are
/// checked once at construction; afterwards the value is immutable.
class DensityMatrix {
 public:
  /// Validates and stores `m`. Throws ContractViolation on failure.
  explicit DensityMatrix(CMatrix m, double tol = kStateTolerance);

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Pure state |psi><psi| (psi is normalized first).
  static DensityMatrix pure(std::span<const Complex> psi);

 private:
  CMatrix m_;
};

struct AtomicState {
  /// Basis {|1>, |2>, |3>}: ground, intermediate, top.
  DensityMatrix rho;
};

}  // namespace gpdiag
