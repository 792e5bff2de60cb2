#include "parsol/seqref.hpp"

#include <algorithm>
#include <cmath>

#include "parsol/partition.hpp"

namespace parsol {

// One-sweep bordered-band elimination: banded columns first, then a small
// dense trailing block that absorbs the corner coupling.
Vector solve_sequential(const StructuredMatrix& A, const Vector& f) {
  if (int(f.size()) != A.n) fail(Errc::DimensionMismatch, "rhs length");
  if (A.kind == Kind::CirculantLike && !A.corner_canonical()) {
    auto [B, perm] = permute_corner(A);
    return solve_sequential(B, perm.apply(f));
  }

  const int n = A.n;
  auto [es, er] = scalar_envelope(A);
  int K = 0;
  if (A.kind == Kind::Babd) K = A.corner_cols;
  if (A.kind == Kind::CirculantLike) K = A.s;  // wrap extent
  if (K > 0) K = std::min(K + er + es, n);     // trailing block covers the band tail
  const int nb = n - K;

  const int w = es + 1 + er;
  std::vector<double> band(std::size_t(std::max(nb, 0)) * w, 0.0);
  DenseMatrix spike(std::max(nb, 0), K);
  Vector rhs = f;

  for (int i = 0; i < nb; ++i) {
    for (int j = std::max(0, i - es); j <= std::min(nb - 1, i + er); ++j)
      band[std::size_t(i) * w + (j - i + es)] = A.at(i, j);
    for (int j = nb; j < n; ++j) spike.at(i, j - nb) = A.at(i, j);
  }

  // Forward elimination of the banded columns (rows < nb only; trailing
  // rows are condensed afterwards).
  for (int k = 0; k < nb; ++k) {
    double d = band[std::size_t(k) * w + es];
    if (d == 0.0) fail(Errc::SingularFactor, "zero pivot in sequential reference");
    for (int i = k + 1; i <= std::min(nb - 1, k + es); ++i) {
      double e = band[std::size_t(i) * w + (k - i + es)];
      if (e == 0.0) continue;
      double mu = e / d;
      for (int j = k + 1; j <= std::min(nb - 1, k + er); ++j)
        band[std::size_t(i) * w + (j - i + es)] -= mu * band[std::size_t(k) * w + (j - k + es)];
      for (int q = 0; q < K; ++q) spike.at(i, q) -= mu * spike.at(k, q);
      rhs[i] -= mu * rhs[k];
    }
  }

  // Condense each trailing row against the factored band, leaving the
  // small dense tail system.
  DenseMatrix tail(K, K);
  Vector trhs(K);
  for (int t = 0; t < K; ++t) {
    int i = nb + t;
    Vector row(n, 0.0);
    for (int j = 0; j < n; ++j) {
      double v = A.at(i, j);
      if (v != 0.0) row[j] = v;
    }
    double rv = f[i];
    for (int k = std::max(0, i - es - K); k < nb; ++k) {
      double e = row[k];
      if (e == 0.0) continue;
      double mu = e / band[std::size_t(k) * w + es];
      row[k] = 0.0;
      for (int j = k + 1; j <= std::min(nb - 1, k + er); ++j)
        row[j] -= mu * band[std::size_t(k) * w + (j - k + es)];
      for (int q = 0; q < K; ++q) row[nb + q] -= mu * spike.at(k, q);
      rv -= mu * rhs[k];
    }
    for (int q = 0; q < K; ++q) tail.at(t, q) = row[nb + q];
    trhs[t] = rv;
  }

  Vector x(n, 0.0);
  if (K > 0) {
    Vector xt = lu_solve(tail, trhs);
    for (int q = 0; q < K; ++q) x[nb + q] = xt[q];
  }
  for (int k = nb - 1; k >= 0; --k) {
    double acc = rhs[k];
    for (int j = k + 1; j <= std::min(nb - 1, k + er); ++j)
      acc -= band[std::size_t(k) * w + (j - k + es)] * x[j];
    for (int q = 0; q < K; ++q) acc -= spike.at(k, q) * x[nb + q];
    x[k] = acc / band[std::size_t(k) * w + es];
  }
  return x;
}

}  // namespace parsol
