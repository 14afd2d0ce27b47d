#include "steermap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace steermap {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
  require(rows >= 1 && cols >= 1, "matrix dimensions must be at least 1x1");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(const std::vector<Complex>& entries) {
  ComplexMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
  return out;
}

Complex ComplexMatrix::trace() const {
  require(is_square(), "trace requires a square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_error() const {
  require(is_square(), "hermiticity check requires a square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.rows(), "matrix product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double hermiticity_tol)
    : matrix_(std::move(m)) {
  require(matrix_.is_square(), "hermitian operator must be square");
  const double err = matrix_.hermiticity_error();
  if (err > hermiticity_tol)
    throw ValidationError("matrix is not Hermitian within tolerance (error " +
                          std::to_string(err) + ")");
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  return HermitianOperator(unchecked_t{}, ComplexMatrix(dim, dim));
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(unchecked_t{}, ComplexMatrix::identity(dim));
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(HermitianOperator::unchecked_t{}, a.matrix() + b.matrix());
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(HermitianOperator::unchecked_t{}, a.matrix() - b.matrix());
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(HermitianOperator::unchecked_t{}, Complex(s, 0.0) * a.matrix());
}

namespace detail {

void jacobi_hermitian(std::vector<Complex>& a, std::size_t n,
                      std::vector<double>& evals, std::vector<Complex>* evecs) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };

  if (evecs) {
    evecs->assign(n * n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) (*evecs)[i * n + i] = 1.0;
  }
  evals.assign(n, 0.0);
  if (n == 1) {
    evals[0] = a[0].real();
    return;
  }

  double scale = 0.0;
  for (const auto& v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return;  // zero matrix

  const double stop = 1e-15 * scale * static_cast<double>(n);
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double g = std::abs(apq);
        if (g <= stop * 1e-2) continue;

        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = apq / g;
        const Complex cph = std::conj(phase);

        // Columns: A <- A J with J_pp=c, J_pq=s, J_qp=-s*conj(phase), J_qq=c*conj(phase).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = c * akp - s * cph * akq;
          at(k, q) = s * akp + c * cph * akq;
        }
        // Rows: A <- J^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = c * apk - s * phase * aqk;
          at(q, k) = s * apk + c * phase * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;

        if (evecs) {
          auto& u = *evecs;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex ukp = u[k * n + p];
            const Complex ukq = u[k * n + q];
            u[k * n + p] = c * ukp - s * cph * ukq;
            u[k * n + q] = s * ukp + c * cph * ukq;
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) evals[i] = at(i, i).real();

  // Sort descending, permuting eigenvector columns along.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return evals[l] > evals[r]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = evals[order[i]];
  evals = std::move(sorted);
  if (evecs) {
    std::vector<Complex> u(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) u[i * n + j] = (*evecs)[i * n + order[j]];
    *evecs = std::move(u);
  }
}

}  // namespace detail

EigResult eig_hermitian(const HermitianOperator& a) {
  const std::size_t n = a.dim();
  // Symmetrize before iterating so roundoff in the input cannot leak into
  // the rotations.
  std::vector<Complex> buf(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      buf[i * n + j] = 0.5 * (a.matrix()(i, j) + std::conj(a.matrix()(j, i)));

  EigResult out{std::vector<double>(), ComplexMatrix(n, n)};
  std::vector<Complex> vecs;
  detail::jacobi_hermitian(buf, n, out.eigenvalues, &vecs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.eigenvectors(i, j) = vecs[i * n + j];
  return out;
}

std::vector<double> eig_values(const HermitianOperator& a) {
  const std::size_t n = a.dim();
  std::vector<Complex> buf(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      buf[i * n + j] = 0.5 * (a.matrix()(i, j) + std::conj(a.matrix()(j, i)));
  std::vector<double> evals;
  detail::jacobi_hermitian(buf, n, evals, nullptr);
  return evals;
}

double min_eigenvalue(const HermitianOperator& a) { return eig_values(a).back(); }

std::vector<double> singular_values(const ComplexMatrix& m, double deflation) {
  const bool wide = m.cols() > m.rows();
  const std::size_t n = wide ? m.rows() : m.cols();

  // Gram matrix of the smaller side: M M^dagger (wide) or M^dagger M (tall).
  std::vector<Complex> gram(n * n, Complex(0.0, 0.0));
  const std::size_t inner = wide ? m.cols() : m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < inner; ++k)
        s += wide ? m(i, k) * std::conj(m(j, k)) : std::conj(m(k, i)) * m(k, j);
      gram[i * n + j] = s;
    }

  std::vector<double> evals;
  detail::jacobi_hermitian(gram, n, evals, nullptr);
  for (auto& v : evals) v = v > deflation ? std::sqrt(v) : 0.0;
  return evals;  // descending already
}

double trace_norm(const ComplexMatrix& m) {
  const auto s = singular_values(m);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

HermitianOperator partial_transpose(const HermitianOperator& a, std::size_t dim_a,
                                    std::size_t dim_b, Side side) {
  require(a.dim() == dim_a * dim_b, "partial transpose: dimension mismatch");
  ComplexMatrix out(a.dim(), a.dim());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l) {
          const std::size_t row = i * dim_b + j;
          const std::size_t col = k * dim_b + l;
          const std::size_t src_row = side == Side::A ? k * dim_b + j : i * dim_b + l;
          const std::size_t src_col = side == Side::A ? i * dim_b + l : k * dim_b + j;
          out(row, col) = a.matrix()(src_row, src_col);
        }
  return HermitianOperator(HermitianOperator::unchecked_t{}, std::move(out));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Side over) {
  require(m.is_square() && m.rows() == dim_a * dim_b, "partial trace: dimension mismatch");
  if (over == Side::A) {
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t bp = 0; bp < dim_b; ++bp) {
        Complex s = 0.0;
        for (std::size_t a = 0; a < dim_a; ++a) s += m(a * dim_b + b, a * dim_b + bp);
        out(b, bp) = s;
      }
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t ap = 0; ap < dim_a; ++ap) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < dim_b; ++b) s += m(a * dim_b + b, ap * dim_b + b);
      out(a, ap) = s;
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(HermitianOperator::unchecked_t{}, kron(a.matrix(), b.matrix()));
}

Complex determinant(ComplexMatrix m) {
  require(m.is_square(), "determinant requires a square matrix");
  const std::size_t n = m.rows();
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(m(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
      det = -det;
    }
    const Complex d = m(col, col);
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) / d;
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace steermap
