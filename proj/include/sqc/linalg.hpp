#pragma once

// Dense complex linear algebra used by the rest of the library.
//
// Everything here is self-contained: the SVD is a one-sided Jacobi
// iteration on columns, which is accurate enough at the matrix sizes
// this project deals with (a few thousand rows, a few dozen columns)
// and keeps the build free of external numeric dependencies.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqc {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

// Thrown when an iterative numeric routine fails to reach its tolerance
// or a physical sanity check (norm preservation, decoupling, ...) fails.
// `residual` carries the offending measured value.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  std::vector<cplx>& data() { return a_; }
  const std::vector<cplx>& data() const { return a_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

struct SvdResult {
  ComplexMatrix u;        // rows x min(rows, cols), orthonormal columns
  std::vector<double> s;  // min(rows, cols) singular values, descending
  ComplexMatrix vdag;     // min(rows, cols) x cols, orthonormal rows
};

// a * b; throws std::invalid_argument on inner-dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scaled(const ComplexMatrix& a, cplx factor);

// u * v^dagger (column times conjugated row).
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& x);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Full (economy-size) SVD via one-sided Jacobi on columns.  Matrices with
// more columns than rows are handled by factoring the adjoint.  Throws
// NumericError if the sweep cap is hit before convergence.
SvdResult svd(const ComplexMatrix& a);

// Number of singular values above tol * max(largest singular value, 1).
// `s` must be sorted in descending order (as returned by svd).
std::size_t numeric_rank(const std::vector<double>& s, double tol);

// <a|b> = sum_i conj(a_i) * b_i; throws on length mismatch.
cplx vec_dot(const ComplexVector& a, const ComplexVector& b);

double vec_norm(const ComplexVector& v);

void vec_normalize(ComplexVector& v);

}  // namespace sqc
