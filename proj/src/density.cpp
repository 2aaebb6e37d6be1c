#include "gpdiag/density.hpp"

#include <cmath>
#include <string>

#include "gpdiag/errors.hpp"

namespace gpdiag {

DensityMatrix::DensityMatrix(CMatrix m, double tol) : m_(std::move(m)) {
  if (m_.dim() == 0) throw ContractViolation("density matrix: empty");
  if (!m_.is_finite()) throw ContractViolation("density matrix: non-finite entries");
  if (m_.hermiticity_error() > tol) throw ContractViolation("density matrix: not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > tol)
    throw ContractViolation("density matrix: trace " + std::to_string(tr.real()) + " != 1");
  const auto es = hermitian_eig(hermitize(m_));
  if (es.values.front() < -tol)
    throw ContractViolation("density matrix: negative eigenvalue " + std::to_string(es.values.front()));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  const double n = norm(psi);
  if (n == 0.0) throw ContractViolation("pure state: zero vector");
  CVector unit(psi.begin(), psi.end());
  for (auto& x : unit) x /= n;
  return DensityMatrix(CMatrix::outer(unit, unit));
}

}  // namespace gpdiag
