#include "gpdiag/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gpdiag/errors.hpp"

namespace gpdiag {

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw ContractViolation("from_rows: matrix must be square");
    std::size_t j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> entries) {
  CMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ContractViolation("outer: size mismatch");
  CMatrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m(*this);
  for (auto& x : m.data_) x = std::conj(x);
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double CMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

double CMatrix::hermiticity_error() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

bool CMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

CVector CMatrix::column(std::size_t col) const {
  CVector v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = (*this)(i, col);
  return v;
}

void CMatrix::set_column(std::size_t col, std::span<const Complex> values) {
  if (values.size() != dim_) throw ContractViolation("set_column: size mismatch");
  for (std::size_t i = 0; i < dim_; ++i) (*this)(i, col) = values[i];
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rhs.dim_ != dim_) throw ContractViolation("matrix sum: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rhs.dim_ != dim_) throw ContractViolation("matrix difference: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim_ != b.dim_) throw ContractViolation("matrix product: dimension mismatch");
  const std::size_t n = a.dim_;
  CMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVector operator*(const CMatrix& a, std::span<const Complex> v) {
  if (v.size() != a.dim_) throw ContractViolation("matrix-vector product: dimension mismatch");
  CVector out(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.dim_; ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

CMatrix hermitize(const CMatrix& m) {
  CMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix k(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t p = 0; p < nb; ++p)
        for (std::size_t q = 0; q < nb; ++q) k(i * nb + p, j * nb + q) = aij * b(p, q);
    }
  return k;
}

CVector vec(const CMatrix& m) { return CVector(m.data().begin(), m.data().end()); }

CMatrix unvec(std::span<const Complex> v) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw ContractViolation("unvec: length is not a perfect square");
  CMatrix m(n);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ContractViolation("inner: size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void require_hermitian(const CMatrix& a, double tol) {
  if (!a.is_finite()) throw ContractViolation("matrix has non-finite entries");
  const double err = a.hermiticity_error();
  if (err > tol * std::max(1.0, a.max_abs()))
    throw ContractViolation("matrix is not Hermitian (max |A - A^dagger| = " + std::to_string(err) + ")");
}

namespace {

// 2x2 unitary W, acting on the (p, q) plane, that diagonalizes the Hermitian
// block [[app, apq], [conj(apq), aqq]] via W^dagger B W.
struct PlaneRotation {
  Complex pp, pq, qp, qq;
};

PlaneRotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double r = std::abs(apq);
  const Complex phase = apq / r;
  // Real symmetric rotation for [[app, r], [r, aqq]], then undo the phase on q.
  const double theta = (aqq - app) / (2.0 * r);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ph = std::conj(phase);
  return {c, s, -s * ph, c * ph};
}

void rotate_columns(CMatrix& m, std::size_t p, std::size_t q, const PlaneRotation& w) {
  for (std::size_t k = 0; k < m.dim(); ++k) {
    const Complex mp = m(k, p), mq = m(k, q);
    m(k, p) = mp * w.pp + mq * w.qp;
    m(k, q) = mp * w.pq + mq * w.qq;
  }
}

void rotate_rows_adjoint(CMatrix& m, std::size_t p, std::size_t q, const PlaneRotation& w) {
  for (std::size_t k = 0; k < m.dim(); ++k) {
    const Complex mp = m(p, k), mq = m(q, k);
    m(p, k) = std::conj(w.pp) * mp + std::conj(w.qp) * mq;
    m(q, k) = std::conj(w.pq) * mp + std::conj(w.qq) * mq;
  }
}

constexpr int kMaxSweeps = 100;

}  // namespace

EigenSystem hermitian_eig(const CMatrix& input) {
  require_hermitian(input);
  const std::size_t n = input.dim();
  CMatrix a = hermitize(input);
  CMatrix v = CMatrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double x = std::norm(a(i, j));
        total += x;
        if (i != j) off += x;
      }
    if (off == 0.0 || off <= 1e-32 * total) break;

    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == Complex{}) continue;
        const auto w = jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, w);
        rotate_rows_adjoint(a, p, q, w);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, w);
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem es{std::vector<double>(n), CMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    es.vectors.set_column(k, v.column(order[k]));
  }
  return es;
}

SingularSystem singular_values(const CMatrix& input) {
  if (!input.is_finite()) throw ContractViolation("singular_values: non-finite entries");
  const std::size_t n = input.dim();
  CMatrix u = input;
  CMatrix v = CMatrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          alpha += std::norm(u(k, p));
          beta += std::norm(u(k, q));
          gamma += std::conj(u(k, p)) * u(k, q);
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const auto w = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(u, p, q, w);
        rotate_columns(v, p, q, w);
      }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) sigma[k] = norm(u.column(k));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SingularSystem ss{std::vector<double>(n), CMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    ss.values[k] = sigma[order[k]];
    ss.right.set_column(k, v.column(order[k]));
  }
  return ss;
}

CMatrix null_space_unit_trace(const CMatrix& superop) {
  const auto svd = singular_values(superop);
  const std::size_t n = superop.dim();
  const double sigma_max = svd.values.front();
  std::size_t deficiency = 0;
  for (double s : svd.values)
    if (s <= kRankEpsilon * sigma_max) ++deficiency;
  if (deficiency == 0) throw NoSteadyState();
  if (deficiency > 1) throw DegenerateSteadyState(deficiency);

  CMatrix m = unvec(svd.right.column(n - 1));
  const Complex tr = m.trace();
  if (std::abs(tr) < 1e-12) throw NumericalError("null vector has vanishing trace");
  m *= 1.0 / tr;
  return hermitize(m);
}

}  // namespace gpdiag
