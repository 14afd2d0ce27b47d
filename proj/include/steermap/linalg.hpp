#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "steermap/common.hpp"

namespace steermap {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Small sizes only (operators of dimension
// up to ~100); everything is value-semantic and immutable once built.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<double>& entries);
  static ComplexMatrix diagonal(const std::vector<Complex>& entries);
  static ComplexMatrix column(const std::vector<Complex>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex factor);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  Complex trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  // max |A(i,j) - conj(A(j,i))|; square matrices only.
  double hermiticity_error() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// A square matrix validated to equal its conjugate transpose. Arithmetic
// between Hermitian operators stays exactly Hermitian at the arithmetic
// level, so those paths skip revalidation.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m,
                             double hermiticity_tol = Tolerances{}.hermiticity);

  static HermitianOperator zero(std::size_t dim);
  static HermitianOperator identity(std::size_t dim);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);
  friend HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

  // Internal: wrap a matrix that is Hermitian by construction.
  struct unchecked_t {};
  HermitianOperator(unchecked_t, ComplexMatrix m) : matrix_(std::move(m)) {}

 private:
  ComplexMatrix matrix_;
};

struct EigResult {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns, unitary
};

// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
// A = U diag(lambda) U^dagger with reconstruction error <= 1e-10 * dim.
EigResult eig_hermitian(const HermitianOperator& a);
std::vector<double> eig_values(const HermitianOperator& a);  // descending
double min_eigenvalue(const HermitianOperator& a);

// Singular values in descending order, via the Gram matrix of the smaller
// side; Gram eigenvalues below the deflation threshold count as zero.
std::vector<double> singular_values(const ComplexMatrix& m,
                                    double deflation = Tolerances{}.deflation);
double trace_norm(const ComplexMatrix& m);

enum class Side { A, B };

// Transpose applied to one tensor factor of an operator on C^dimA (x) C^dimB.
HermitianOperator partial_transpose(const HermitianOperator& a, std::size_t dim_a,
                                    std::size_t dim_b, Side side);
// Trace over one tensor factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Side over);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// LU with partial pivoting; square matrices only.
Complex determinant(ComplexMatrix m);

namespace detail {
// In-place Jacobi on a row-major n*n Hermitian buffer. `a` is destroyed;
// eigenvalues come back descending. When `evecs` is non-null it receives the
// unitary of column eigenvectors in matching order.
void jacobi_hermitian(std::vector<Complex>& a, std::size_t n,
                      std::vector<double>& evals, std::vector<Complex>* evecs);
}  // namespace detail

}  // namespace steermap
