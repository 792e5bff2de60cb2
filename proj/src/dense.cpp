#include "parsol/dense.hpp"

#include <algorithm>
#include <cmath>

namespace parsol {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1.0;
  return I;
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.cols != B.rows) fail(Errc::DimensionMismatch, "matmul shapes");
  DenseMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      double aik = A.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

Vector matvec(const DenseMatrix& A, const Vector& x) {
  if (A.cols != int(x.size())) fail(Errc::DimensionMismatch, "matvec shapes");
  Vector y(A.rows, 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += A.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix transpose(const DenseMatrix& A) {
  DenseMatrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

DenseMatrix add(const DenseMatrix& A, const DenseMatrix& B) {
  DenseMatrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

DenseMatrix sub(const DenseMatrix& A, const DenseMatrix& B) {
  DenseMatrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

DenseMatrix scale(const DenseMatrix& A, double s) {
  DenseMatrix C = A;
  for (double& v : C.a) v *= s;
  return C;
}

double inf_norm(const DenseMatrix& A) {
  double best = 0.0;
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += std::abs(A.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

double inf_norm(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

DenseLu::DenseLu(DenseMatrix A) : lu(std::move(A)) {
  if (lu.rows != lu.cols) fail(Errc::DimensionMismatch, "LU needs square");
  const int n = lu.rows;
  perm.resize(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(lu.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) fail(Errc::SingularFactor, "zero pivot column in dense LU");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu.at(k, j), lu.at(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    double d = lu.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      double m = lu.at(i, k) / d;
      lu.at(i, k) = m;
      if (m == 0.0) continue;
      for (int j = k + 1; j < n; ++j) lu.at(i, j) -= m * lu.at(k, j);
    }
  }
}

Vector DenseLu::solve(const Vector& b) const {
  const int n = lu.rows;
  if (int(b.size()) != n) fail(Errc::DimensionMismatch, "LU solve rhs");
  Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = b[perm[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) y[i] -= lu.at(i, j) * y[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) y[i] -= lu.at(i, j) * y[j];
    y[i] /= lu.at(i, i);
  }
  return y;
}

DenseMatrix DenseLu::solve(const DenseMatrix& B) const {
  DenseMatrix X(B.rows, B.cols);
  Vector col(B.rows);
  for (int j = 0; j < B.cols; ++j) {
    for (int i = 0; i < B.rows; ++i) col[i] = B.at(i, j);
    Vector x = solve(col);
    for (int i = 0; i < B.rows; ++i) X.at(i, j) = x[i];
  }
  return X;
}

Vector lu_solve(const DenseMatrix& A, const Vector& b) { return DenseLu(A).solve(b); }

DenseMatrix lu_solve(const DenseMatrix& A, const DenseMatrix& B) { return DenseLu(A).solve(B); }

DenseMatrix inverse(const DenseMatrix& A) { return DenseLu(A).solve(DenseMatrix::identity(A.rows)); }

double smallest_singular_value(const DenseMatrix& A) {
  // One-sided Jacobi on the columns of A; adequate for tiny blocks.
  DenseMatrix U = A;
  const int n = A.cols;
  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < U.rows; ++i) {
          app += U.at(i, p) * U.at(i, p);
          aqq += U.at(i, q) * U.at(i, q);
          apq += U.at(i, p) * U.at(i, q);
        }
        off = std::max(off, std::abs(apq));
        if (apq == 0.0) continue;
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (int i = 0; i < U.rows; ++i) {
          double up = U.at(i, p), uq = U.at(i, q);
          U.at(i, p) = c * up - s * uq;
          U.at(i, q) = s * up + c * uq;
        }
      }
    if (off < 1e-15) break;
  }
  double smin = -1.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < U.rows; ++i) s += U.at(i, j) * U.at(i, j);
    s = std::sqrt(s);
    if (smin < 0 || s < smin) smin = s;
  }
  return smin < 0 ? 0.0 : smin;
}

}  // namespace parsol
