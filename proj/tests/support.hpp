#pragma once

#include <cmath>
#include <random>

#include "gpdiag/cascade.hpp"
#include "gpdiag/linops.hpp"

namespace gpdiag::testing {

inline double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix m(n);
  for (auto& x : m.data()) x = {g(rng), g(rng)};
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) { return hermitize(random_matrix(rng, n)); }

/// Partial trace of a random pure state on C^n (x) C^n: a random full-rank density matrix.
inline CMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  const CMatrix g = random_matrix(rng, n);
  CMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitize(rho);
}

inline CVector random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  const double s = norm(v);
  for (auto& x : v) x /= s;
  return v;
}

/// Random point of the parameter regime Delta, Omega <= 6 with default rates.
inline SystemParams random_params(std::mt19937_64& rng, Scheme s) {
  std::uniform_real_distribution<double> omega(0.1, 6.0), delta(-3.0, 3.0);
  return SystemParams::for_scheme(s, omega(rng), omega(rng), delta(rng), delta(rng));
}

}  // namespace gpdiag::testing
