#pragma once

// Small dense complex linear algebra. Everything here is sized for density
// matrices of dimension <= 4 and superoperators of dimension <= 16, so the
// algorithms favour robustness over asymptotic speed.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gpdiag {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Square complex matrix, row-major storage.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static CMatrix identity(std::size_t dim);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  /// Diagonal matrix with the given real entries.
  static CMatrix diagonal(std::span<const double> entries);
  /// |a><b|
  static CMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix conj() const;
  CMatrix transpose() const;
  Complex trace() const;

  /// max_ij |a_ij|
  double max_abs() const;
  /// Induced infinity norm (max absolute row sum).
  double norm_inf() const;
  /// max_ij |a_ij - conj(a_ji)|
  double hermiticity_error() const;
  bool is_finite() const;

  CVector column(std::size_t col) const;
  void set_column(std::size_t col, std::span<const Complex> values);

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix m, Complex s) { return m *= s; }
  friend CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CVector operator*(const CMatrix& a, std::span<const Complex> v);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// (M + M^dagger) / 2
CMatrix hermitize(const CMatrix& m);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Row-major vectorization: vec(M)[i*n + j] = M(i, j). With this ordering
/// vec(A X B) = (A (x) B^T) vec(X).
CVector vec(const CMatrix& m);
CMatrix unvec(std::span<const Complex> v);

/// <a|b> = sum conj(a_i) b_i
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

/// Throws ContractViolation unless max |A - A^dagger| <= tol * max(1, max|A|).
void require_hermitian(const CMatrix& a, double tol = 1e-12);

struct EigenSystem {
  /// Ascending.
  std::vector<double> values;
  /// Column k pairs with values[k].
  CMatrix vectors;

  CVector vector(std::size_t k) const { return vectors.column(k); }
};

/// Cyclic complex Jacobi. Deterministic for identical input. Degenerate
/// eigenvalues come back with an arbitrary orthonormal basis of their subspace.
EigenSystem hermitian_eig(const CMatrix& a);

struct SingularSystem {
  /// Descending.
  std::vector<double> values;
  /// Right singular vectors as columns, paired with values.
  CMatrix right;
};

/// One-sided (Hestenes) Jacobi SVD; only singular values and right vectors are kept.
SingularSystem singular_values(const CMatrix& a);

/// Relative threshold below which a singular value counts as zero.
inline constexpr double kRankEpsilon = 1e-9;

/// For a superoperator L acting on row-major vectorized n x n matrices with a
/// one-dimensional null space, return that null vector as a unit-trace
/// Hermitian matrix. Throws NoSteadyState / DegenerateSteadyState otherwise.
CMatrix null_space_unit_trace(const CMatrix& superop);

}  // namespace gpdiag
