#pragma once

#include <cstddef>
#include <vector>

#include "parsol/errors.hpp"

namespace parsol {

using Vector = std::vector<double>;

/// Row-major dense matrix. Used for small coupling blocks, separator
/// algebra, ODE system matrices and as the oracle representation in tests.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}

  static DenseMatrix identity(int n);

  double& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  double at(int i, int j) const { return a[std::size_t(i) * cols + j]; }
  bool empty() const { return rows == 0 || cols == 0; }
};

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);
Vector matvec(const DenseMatrix& A, const Vector& x);
DenseMatrix transpose(const DenseMatrix& A);
DenseMatrix add(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix sub(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix scale(const DenseMatrix& A, double s);

double inf_norm(const DenseMatrix& A);
double inf_norm(const Vector& v);

/// In-place LU with partial pivoting; perm holds the row order applied.
/// Throws SingularFactor when a pivot column vanishes.
struct DenseLu {
  DenseMatrix lu;
  std::vector<int> perm;

  DenseLu() = default;
  explicit DenseLu(DenseMatrix A);
  Vector solve(const Vector& b) const;
  DenseMatrix solve(const DenseMatrix& B) const;
};

/// Convenience one-shot solve, the test-side oracle path.
Vector lu_solve(const DenseMatrix& A, const Vector& b);
DenseMatrix lu_solve(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix inverse(const DenseMatrix& A);

/// Smallest singular value via Jacobi iteration on A^T A.  Only meant for
/// the tiny pivot blocks of the adaptive strategies (dim <= 8).
double smallest_singular_value(const DenseMatrix& A);

}  // namespace parsol
