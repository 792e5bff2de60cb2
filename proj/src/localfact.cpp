#include "parsol/localfact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parsol {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Lu: return "lu";
    case Strategy::Lud: return "lud";
    case Strategy::CyclicReduction: return "cr";
    case Strategy::Arce: return "arce";
    case Strategy::LuPivot: return "lupivot";
    case Strategy::Qr: return "qr";
  }
  return "?";
}

Strategy strategy_from_name(const std::string& s) {
  if (s == "lu") return Strategy::Lu;
  if (s == "lud") return Strategy::Lud;
  if (s == "cr") return Strategy::CyclicReduction;
  if (s == "arce") return Strategy::Arce;
  if (s == "lupivot") return Strategy::LuPivot;
  if (s == "qr") return Strategy::Qr;
  fail(Errc::InvalidParameter, "unknown strategy '" + s + "'");
}

bool strategy_supports(Strategy s, Kind k, int bs, int br) {
  switch (s) {
    case Strategy::Lu:
    case Strategy::Lud:
    case Strategy::LuPivot:
    case Strategy::Qr: return true;
    case Strategy::CyclicReduction:
      return k == Kind::BlockTridiagonal || (k == Kind::Banded && bs == 1 && br == 1);
    case Strategy::Arce: return k == Kind::Abd || k == Kind::Babd;
  }
  return false;
}

namespace {

// A^T * B for tall skinny blocks.
DenseMatrix at_b(const DenseMatrix& A, const DenseMatrix& B) {
  DenseMatrix C(A.cols, B.cols);
  for (int k = 0; k < A.rows; ++k)
    for (int i = 0; i < A.cols; ++i) {
      double a = A.at(k, i);
      if (a == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += a * B.at(k, j);
    }
  return C;
}

DenseMatrix negate(DenseMatrix A) {
  for (double& v : A.a) v = -v;
  return A;
}

double body_scale(const PartitionBlock& blk) {
  double best = 1e-300;
  const int w = blk.env_s + 1 + blk.env_r;
  for (int i = 0; i < blk.L; ++i) {
    double s = 0.0;
    for (int d = 0; d < w; ++d) s += std::abs(blk.env[std::size_t(i) * w + d]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Banded core (LU / LUD)
// ---------------------------------------------------------------------------

namespace {

using BandedCore = LocalFactorization::BandedCore;

void banded_eliminate(BandedCore& c) {
  const int w = c.es + 1 + c.er;
  for (int k = 0; k < c.L; ++k) {
    double d = c.fac[std::size_t(k) * w + c.es];
    if (d == 0.0) fail(Errc::ZeroPivot, "zero pivot at body row " + std::to_string(k));
    int ilim = std::min(c.L - 1, k + c.es);
    for (int i = k + 1; i <= ilim; ++i) {
      double& e = c.fac[std::size_t(i) * w + (k - i + c.es)];
      if (e == 0.0) continue;
      double mu = e / d;
      e = mu;
      int jlim = std::min(c.L - 1, k + c.er);
      for (int j = k + 1; j <= jlim; ++j)
        c.fac[std::size_t(i) * w + (j - i + c.es)] -= mu * c.fac[std::size_t(k) * w + (j - k + c.es)];
    }
  }
}

// x <- L^{-1} x (unit lower, multipliers stored below the diagonal).
void lsolve(const BandedCore& c, double* x) {
  const int w = c.es + 1 + c.er;
  for (int i = 0; i < c.L; ++i) {
    double acc = x[i];
    int dlim = std::min(c.es, i);
    for (int d = 1; d <= dlim; ++d) acc -= c.fac[std::size_t(i) * w + (c.es - d)] * x[i - d];
    x[i] = acc;
  }
}

// x <- U^{-1} x (upper including diagonal).
void usolve(const BandedCore& c, double* x) {
  const int w = c.es + 1 + c.er;
  for (int i = c.L - 1; i >= 0; --i) {
    double acc = x[i];
    int dlim = std::min(c.er, c.L - 1 - i);
    for (int d = 1; d <= dlim; ++d) acc -= c.fac[std::size_t(i) * w + (c.es + d)] * x[i + d];
    x[i] = acc / c.fac[std::size_t(i) * w + c.es];
  }
}

// x <- U'^{-1} x where U' = U D^{-1} is unit upper (LUD middle-left factor).
void uprime_solve(const BandedCore& c, double* x) {
  const int w = c.es + 1 + c.er;
  for (int i = c.L - 1; i >= 0; --i) {
    double acc = x[i];
    int dlim = std::min(c.er, c.L - 1 - i);
    for (int d = 1; d <= dlim; ++d)
      acc -= (c.fac[std::size_t(i) * w + (c.es + d)] / c.dvec[i + d]) * x[i + d];
    x[i] = acc;
  }
}

// x <- U^{-T} x (forward with the transposed upper factor).
void ut_solve(const BandedCore& c, double* x) {
  const int w = c.es + 1 + c.er;
  for (int i = 0; i < c.L; ++i) {
    double acc = x[i];
    int dlim = std::min(c.er, i);
    for (int d = 1; d <= dlim; ++d) acc -= c.fac[std::size_t(i - d) * w + (c.es + d)] * x[i - d];
    x[i] = acc / c.fac[std::size_t(i) * w + c.es];
  }
}

Vector banded_N_inv(const BandedCore& c, Vector x) {
  lsolve(c, x.data());
  if (c.unit_mid) uprime_solve(c, x.data());
  return x;
}

Vector banded_S_inv(const BandedCore& c, Vector x) {
  if (c.unit_mid) {
    for (int i = 0; i < c.L; ++i) x[i] /= c.dvec[i];
  } else {
    usolve(c, x.data());
  }
  return x;
}

Vector banded_St_inv(const BandedCore& c, Vector x) {
  if (c.unit_mid) {
    for (int i = 0; i < c.L; ++i) x[i] /= c.dvec[i];
  } else {
    ut_solve(c, x.data());
  }
  return x;
}

DenseMatrix solve_columns(const BandedCore& c, const DenseMatrix& B, Vector (*op)(const BandedCore&, Vector)) {
  DenseMatrix X(B.rows, B.cols);
  Vector col(B.rows);
  for (int j = 0; j < B.cols; ++j) {
    for (int i = 0; i < B.rows; ++i) col[i] = B.at(i, j);
    Vector x = op(c, col);
    for (int i = 0; i < B.rows; ++i) X.at(i, j) = x[i];
  }
  return X;
}

LocalFactorization banded_factor(const PartitionBlock& blk, bool lud) {
  LocalFactorization lf;
  lf.strategy = lud ? Strategy::Lud : Strategy::Lu;
  lf.L = blk.L;
  lf.k0 = blk.k0;
  lf.k1 = blk.k1;

  BandedCore core;
  core.L = blk.L;
  core.es = blk.env_s;
  core.er = blk.env_r;
  core.unit_mid = lud;
  core.fac = blk.env;
  banded_eliminate(core);
  if (lud) {
    const int w = core.es + 1 + core.er;
    core.dvec.resize(core.L);
    for (int i = 0; i < core.L; ++i) core.dvec[i] = core.fac[std::size_t(i) * w + core.es];
  }

  lf.z = solve_columns(core, blk.b0, banded_N_inv);
  lf.y = solve_columns(core, blk.c1, banded_N_inv);
  lf.w = solve_columns(core, blk.c0, banded_St_inv);
  lf.v = solve_columns(core, blk.b1, banded_St_inv);

  lf.alpha1 = negate(at_b(lf.w, lf.z));
  lf.alpha2 = sub(blk.a_right, at_b(lf.v, lf.y));
  lf.beta = negate(at_b(lf.v, lf.z));
  lf.gamma = negate(at_b(lf.w, lf.y));

  const int kd = lf.k0 + lf.k1;
  lf.kept = DenseMatrix(kd, kd);
  for (int i = 0; i < lf.k0; ++i)
    for (int j = 0; j < lf.k0; ++j) lf.kept.at(i, j) = lf.alpha1.at(i, j);
  for (int i = 0; i < lf.k0; ++i)
    for (int j = 0; j < lf.k1; ++j) lf.kept.at(i, lf.k0 + j) = lf.gamma.at(i, j);
  for (int i = 0; i < lf.k1; ++i)
    for (int j = 0; j < lf.k0; ++j) lf.kept.at(lf.k0 + i, j) = lf.beta.at(i, j);
  for (int i = 0; i < lf.k1; ++i)
    for (int j = 0; j < lf.k1; ++j) lf.kept.at(lf.k0 + i, lf.k0 + j) = lf.alpha2.at(i, j);

  lf.core = std::move(core);
  return lf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cyclic reduction core
// ---------------------------------------------------------------------------

namespace {

using CyclicCore = LocalFactorization::CyclicCore;

DenseMatrix block_of(const PartitionBlock& blk, int g, int bi, int bj) {
  DenseMatrix B(g, g);
  for (int ti = 0; ti < g; ++ti)
    for (int tj = 0; tj < g; ++tj) B.at(ti, tj) = blk.body_at(bi * g + ti, bj * g + tj);
  return B;
}

DenseMatrix top_rows(const DenseMatrix& A, int g) {
  DenseMatrix B(g, A.cols);
  for (int i = 0; i < g && i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) B.at(i, j) = A.at(i, j);
  return B;
}

DenseMatrix bottom_rows(const DenseMatrix& A, int g) {
  DenseMatrix B(g, A.cols);
  for (int i = 0; i < g && i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) B.at(i, j) = A.at(A.rows - g + i, j);
  return B;
}

DenseMatrix safe_inverse(const DenseMatrix& A, Errc code) {
  try {
    return inverse(A);
  } catch (const Error&) {
    fail(code, "singular pivot block in cyclic reduction");
  }
}

LocalFactorization cr_factor(const PartitionBlock& blk) {
  int g;
  if (blk.kind == Kind::BlockTridiagonal)
    g = blk.m;
  else if (blk.kind == Kind::Banded && blk.s == 1 && blk.r == 1)
    g = 1;
  else
    fail(Errc::UnsupportedStructure, "cyclic reduction needs a (block) tridiagonal body");

  LocalFactorization lf;
  lf.strategy = Strategy::CyclicReduction;
  lf.L = blk.L;
  lf.k0 = blk.k0;
  lf.k1 = blk.k1;

  CyclicCore core;
  core.g = g;
  core.nb = blk.L / g;
  const int nb = core.nb;

  std::vector<DenseMatrix> a(nb), d(nb), c(nb);
  for (int j = 0; j < nb; ++j) {
    d[j] = block_of(blk, g, j, j);
    if (j > 0) a[j] = block_of(blk, g, j, j - 1);
    if (j < nb - 1) c[j] = block_of(blk, g, j, j + 1);
  }

  std::vector<int> act(nb);
  std::iota(act.begin(), act.end(), 0);
  int levels = 0;
  while (int(act.size()) > 2) {
    ++levels;
    std::vector<int> keep;
    keep.push_back(act[0]);
    std::size_t idx = 1;
    while (idx + 1 < act.size()) {
      int j = act[idx];
      int l = keep.back();
      int rn = act[idx + 1];
      CyclicCore::Elim e;
      e.j = j;
      e.lnb = l;
      e.rnb = rn;
      e.dinv = safe_inverse(d[j], Errc::ZeroPivot);
      e.a = a[j];
      e.c = c[j];
      e.ml = matmul(c[l], e.dinv);
      e.mr = matmul(a[rn], e.dinv);
      d[l] = sub(d[l], matmul(e.ml, e.a));
      c[l] = negate(matmul(e.ml, e.c));
      d[rn] = sub(d[rn], matmul(e.mr, e.c));
      a[rn] = negate(matmul(e.mr, e.a));
      core.elims.push_back(std::move(e));
      keep.push_back(rn);
      idx += 2;
    }
    if (keep.back() != act.back()) keep.push_back(act.back());
    act = keep;
  }
  lf.cr_levels = levels;
  core.rem = act;

  const int R = int(act.size());
  const int rg = R * g;
  core.d2 = DenseMatrix(rg, rg);
  for (int u = 0; u < R; ++u)
    for (int ti = 0; ti < g; ++ti)
      for (int tj = 0; tj < g; ++tj) core.d2.at(u * g + ti, u * g + tj) = d[act[u]].at(ti, tj);
  if (R == 2) {
    for (int ti = 0; ti < g; ++ti)
      for (int tj = 0; tj < g; ++tj) {
        core.d2.at(ti, g + tj) = c[act[0]].at(ti, tj);
        core.d2.at(g + ti, tj) = a[act[1]].at(ti, tj);
      }
  }
  core.d2inv = safe_inverse(core.d2, Errc::ZeroPivot);

  const int kd = lf.k0 + lf.k1;
  // Couplings of the remaining rows to the separators are the original
  // boundary blocks: no fill-in vectors exist for this strategy.
  core.cmat = DenseMatrix(rg, kd);
  DenseMatrix b0t = top_rows(blk.b0, g);
  DenseMatrix c1b = bottom_rows(blk.c1, g);
  for (int ti = 0; ti < g; ++ti) {
    for (int t = 0; t < lf.k0; ++t) core.cmat.at(ti, t) = b0t.at(ti, t);
    for (int t = 0; t < lf.k1; ++t) core.cmat.at(rg - g + ti, lf.k0 + t) = c1b.at(ti, t);
  }
  DenseMatrix rmat(kd, rg);
  DenseMatrix c0t = top_rows(blk.c0, g);
  DenseMatrix b1b = bottom_rows(blk.b1, g);
  for (int ti = 0; ti < g; ++ti) {
    for (int t = 0; t < lf.k0; ++t) rmat.at(t, ti) = c0t.at(ti, t);
    for (int t = 0; t < lf.k1; ++t) rmat.at(lf.k0 + t, rg - g + ti) = b1b.at(ti, t);
  }
  core.rmat_d2inv = matmul(rmat, core.d2inv);

  lf.kept = DenseMatrix(kd, kd);
  for (int t = 0; t < lf.k1; ++t)
    for (int u = 0; u < lf.k1; ++u) lf.kept.at(lf.k0 + t, lf.k0 + u) = blk.a_right.at(t, u);
  DenseMatrix corr = matmul(core.rmat_d2inv, core.cmat);
  for (int i = 0; i < kd; ++i)
    for (int j = 0; j < kd; ++j) lf.kept.at(i, j) -= corr.at(i, j);

  lf.alpha1 = DenseMatrix(lf.k0, lf.k0);
  lf.gamma = DenseMatrix(lf.k0, lf.k1);
  lf.beta = DenseMatrix(lf.k1, lf.k0);
  lf.alpha2 = DenseMatrix(lf.k1, lf.k1);
  for (int i = 0; i < lf.k0; ++i) {
    for (int j = 0; j < lf.k0; ++j) lf.alpha1.at(i, j) = lf.kept.at(i, j);
    for (int j = 0; j < lf.k1; ++j) lf.gamma.at(i, j) = lf.kept.at(i, lf.k0 + j);
  }
  for (int i = 0; i < lf.k1; ++i) {
    for (int j = 0; j < lf.k0; ++j) lf.beta.at(i, j) = lf.kept.at(lf.k0 + i, j);
    for (int j = 0; j < lf.k1; ++j) lf.alpha2.at(i, j) = lf.kept.at(lf.k0 + i, lf.k0 + j);
  }

  lf.core = std::move(core);
  return lf;
}

void block_axpy(Vector& t, int tgt, int src, const DenseMatrix& M, int g) {
  for (int ti = 0; ti < g; ++ti) {
    double acc = 0.0;
    for (int tj = 0; tj < g; ++tj) acc += M.at(ti, tj) * t[std::size_t(src) * g + tj];
    t[std::size_t(tgt) * g + ti] -= acc;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Dense recorded-operation core (ARCE, LU with partial pivoting, QR)
// ---------------------------------------------------------------------------

namespace {

using DenseCore = LocalFactorization::DenseCore;

struct DenseBuild {
  int dim, k0, L, k1;
  DenseMatrix W, Lmat, Linv, Rmat, Rinv;
  bool has_right = false;
  // row states: 0 active body, 1 retired pivot row, 2 column-retired, 3 separator, 4 deferred
  std::vector<char> row_state;
  // col states: 0 active body, 1 retired, 2 separator, 3 deferred
  std::vector<char> col_state;
  std::vector<std::pair<int, int>> a_order, b_order, deferred;

  DenseBuild(const PartitionBlock& blk)
      : dim(blk.k0 + blk.L + blk.k1),
        k0(blk.k0),
        L(blk.L),
        k1(blk.k1),
        W(blk.local_dense()),
        Lmat(DenseMatrix::identity(dim)),
        Linv(DenseMatrix::identity(dim)),
        row_state(dim, 0),
        col_state(dim, 0) {
    for (int t = 0; t < k0; ++t) {
      row_state[t] = 3;
      col_state[t] = 2;
    }
    for (int t = 0; t < k1; ++t) {
      row_state[k0 + L + t] = 3;
      col_state[k0 + L + t] = 2;
    }
  }

  void rowop(int tgt, int src, double mu) {
    if (mu == 0.0) return;
    for (int j = 0; j < dim; ++j) {
      W.at(tgt, j) -= mu * W.at(src, j);
      Lmat.at(tgt, j) -= mu * Lmat.at(src, j);
    }
    for (int i = 0; i < dim; ++i) Linv.at(i, src) += mu * Linv.at(i, tgt);
  }

  void colop(int tgt, int src, double mu) {
    if (!has_right) {
      Rmat = DenseMatrix::identity(dim);
      Rinv = DenseMatrix::identity(dim);
      has_right = true;
    }
    if (mu == 0.0) return;
    for (int i = 0; i < dim; ++i) {
      W.at(i, tgt) -= mu * W.at(i, src);
      Rmat.at(i, tgt) -= mu * Rmat.at(i, src);
    }
    for (int j = 0; j < dim; ++j) Rinv.at(src, j) += mu * Rinv.at(tgt, j);
  }

  void reflect(const std::vector<int>& rows, const std::vector<double>& v, double tau) {
    const int nr = int(rows.size());
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int t = 0; t < nr; ++t) s += v[t] * W.at(rows[t], j);
      s *= tau;
      for (int t = 0; t < nr; ++t) W.at(rows[t], j) -= s * v[t];
    }
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int t = 0; t < nr; ++t) s += v[t] * Lmat.at(rows[t], j);
      s *= tau;
      for (int t = 0; t < nr; ++t) Lmat.at(rows[t], j) -= s * v[t];
    }
    for (int i = 0; i < dim; ++i) {
      double s = 0.0;
      for (int t = 0; t < nr; ++t) s += v[t] * Linv.at(i, rows[t]);
      s *= tau;
      for (int t = 0; t < nr; ++t) Linv.at(i, rows[t]) -= s * v[t];
    }
  }

  // Clear column `col` from every non-retired row using pivot row `piv`.
  void eliminate_column(int col, int piv) {
    for (int rho = 0; rho < dim; ++rho) {
      if (rho == piv || row_state[rho] == 1 || row_state[rho] == 2) continue;
      double e = W.at(rho, col);
      if (e == 0.0) continue;
      rowop(rho, piv, e / W.at(piv, col));
      W.at(rho, col) = 0.0;
    }
  }
};

DenseCore finish_dense(DenseBuild&& b) {
  DenseCore core;
  core.dim = b.dim;
  core.Lmat = std::move(b.Lmat);
  core.Linv = std::move(b.Linv);
  core.Wmid = std::move(b.W);
  core.Rmat = std::move(b.Rmat);
  core.Rinv = std::move(b.Rinv);
  core.has_right = b.has_right;
  core.a_order = std::move(b.a_order);
  core.b_order = std::move(b.b_order);
  for (int t = 0; t < b.k0; ++t) {
    core.kept_rows.push_back(t);
    core.kept_cols.push_back(t);
  }
  for (auto& [rho, col] : b.deferred) {
    core.kept_rows.push_back(rho);
    core.kept_cols.push_back(col);
  }
  for (int t = 0; t < b.k1; ++t) {
    core.kept_rows.push_back(b.k0 + b.L + t);
    core.kept_cols.push_back(b.k0 + b.L + t);
  }
  return core;
}

DenseBuild lupivot_build(const PartitionBlock& blk, double tol) {
  DenseBuild b(blk);
  const double scale = body_scale(blk);
  for (int t = 0; t < b.L; ++t) {
    int col = b.k0 + t;
    int piv = -1;
    double best = -1.0;
    for (int rho = b.k0; rho < b.k0 + b.L; ++rho) {
      if (b.row_state[rho] != 0) continue;
      double v = std::abs(b.W.at(rho, col));
      if (v > best) {
        best = v;
        piv = rho;
      }
    }
    if (best < tol * scale) {
      // Deferred: the pivot block joins the reduced system and the
      // factorization continues on the trailing part.
      int rho = -1;
      for (int q = b.k0; q < b.k0 + b.L; ++q)
        if (b.row_state[q] == 0) {
          rho = q;
          break;
        }
      b.row_state[rho] = 4;
      b.col_state[col] = 3;
      b.deferred.emplace_back(rho, col);
      continue;
    }
    b.row_state[piv] = 1;
    b.col_state[col] = 1;
    b.a_order.emplace_back(piv, col);
    b.eliminate_column(col, piv);
  }
  if (int(b.deferred.size()) == b.L)
    fail(Errc::ExhaustedBody, "every pivot deferred; body is structurally degenerate");
  return b;
}

DenseBuild qr_build(const PartitionBlock& blk, double tol) {
  DenseBuild b(blk);
  const double scale = body_scale(blk);
  std::vector<int> act;
  for (int rho = b.k0; rho < b.k0 + b.L; ++rho) act.push_back(rho);

  for (int t = 0; t < b.L; ++t) {
    int col = b.k0 + t;
    double nrm2 = 0.0;
    for (int rho : act) nrm2 += b.W.at(rho, col) * b.W.at(rho, col);
    double nrm = std::sqrt(nrm2);
    if (nrm < tol * scale) {
      int rho = act.front();
      act.erase(act.begin());
      b.row_state[rho] = 4;
      b.col_state[col] = 3;
      b.deferred.emplace_back(rho, col);
      continue;
    }
    double x0 = b.W.at(act.front(), col);
    double alpha = x0 >= 0 ? -nrm : nrm;
    std::vector<double> v(act.size());
    for (std::size_t u = 0; u < act.size(); ++u) v[u] = b.W.at(act[u], col);
    v[0] -= alpha;
    double vtv = 0.0;
    for (double q : v) vtv += q * q;
    if (vtv > 0.0) b.reflect(act, v, 2.0 / vtv);
    b.W.at(act.front(), col) = alpha;
    for (std::size_t u = 1; u < act.size(); ++u) b.W.at(act[u], col) = 0.0;

    int piv = act.front();
    act.erase(act.begin());
    b.row_state[piv] = 1;
    b.col_state[col] = 1;
    b.a_order.emplace_back(piv, col);
  }
  if (int(b.deferred.size()) == b.L)
    fail(Errc::ExhaustedBody, "every column deferred; body is structurally degenerate");

  // Reflectors never touch the separator or deferred rows; their coupling
  // entries are condensed here against the R rows.
  for (auto& [piv, col] : b.a_order) {
    for (int rho = 0; rho < b.dim; ++rho) {
      if (b.row_state[rho] != 3 && b.row_state[rho] != 4) continue;
      double e = b.W.at(rho, col);
      if (e == 0.0) continue;
      b.rowop(rho, piv, e / b.W.at(piv, col));
      b.W.at(rho, col) = 0.0;
    }
  }
  return b;
}

DenseBuild arce_build(const PartitionBlock& blk) {
  if (blk.kind != Kind::Abd && blk.kind != Kind::Babd)
    fail(Errc::UnsupportedKind, "alternate row and column elimination needs an ABD/BABD body");
  DenseBuild b(blk);
  const int m = blk.m, s = blk.s;
  const int groups = b.L / m;

  for (int j = 0; j < groups; ++j) {
    // Column-elimination steps with row pivoting, confined to the block's
    // exclusive columns; pivots come from the block's own rows.
    int e0 = std::max(0, j * m - s);
    int e1 = (j == groups - 1) ? b.L : (j + 1) * m - s;
    for (int x = e0; x < e1; ++x) {
      int col = b.k0 + x;
      if (b.col_state[col] != 0) continue;
      int piv = -1;
      double best = 0.0;
      for (int rho = b.k0 + j * m; rho < b.k0 + (j + 1) * m; ++rho) {
        if (b.row_state[rho] != 0) continue;
        double v = std::abs(b.W.at(rho, col));
        if (v > best) {
          best = v;
          piv = rho;
        }
      }
      if (piv < 0) fail(Errc::SingularBlock, "no usable pivot in block " + std::to_string(j));
      b.row_state[piv] = 1;
      b.col_state[col] = 1;
      b.a_order.emplace_back(piv, col);
      b.eliminate_column(col, piv);
    }
    // Row-elimination steps with column pivoting: the block's carried rows
    // are cleared by column operations so the left factor stays block-local.
    for (int rho = b.k0 + j * m; rho < b.k0 + (j + 1) * m; ++rho) {
      if (b.row_state[rho] != 0) continue;
      int cbest = -1;
      double best = 0.0;
      for (int cx = b.k0; cx < b.k0 + b.L; ++cx) {
        if (b.col_state[cx] != 0) continue;
        double v = std::abs(b.W.at(rho, cx));
        if (v > best) {
          best = v;
          cbest = cx;
        }
      }
      if (cbest < 0) fail(Errc::SingularBlock, "carried row vanished in block " + std::to_string(j));
      for (int cx = b.k0; cx < b.k0 + b.L; ++cx) {
        if (cx == cbest || b.col_state[cx] != 0) continue;
        double e = b.W.at(rho, cx);
        if (e == 0.0) continue;
        b.colop(cx, cbest, e / b.W.at(rho, cbest));
        b.W.at(rho, cx) = 0.0;
      }
      b.row_state[rho] = 2;
      b.col_state[cbest] = 1;
      b.b_order.emplace_back(rho, cbest);
    }
  }
  // Separator rows may still couple to the column-retired unknowns (pivot
  // tails re-introduce them); eliminate those with the singleton rows so
  // the separator contributions are the complete Schur data.
  for (auto& [brow, bcol] : b.b_order) {
    for (int sigma = 0; sigma < b.dim; ++sigma) {
      if (b.row_state[sigma] != 3) continue;
      double e = b.W.at(sigma, bcol);
      if (e == 0.0) continue;
      b.rowop(sigma, brow, e / b.W.at(brow, bcol));
      b.W.at(sigma, bcol) = 0.0;
    }
  }
  return b;
}

LocalFactorization dense_factor(const PartitionBlock& blk, Strategy strat, double tol) {
  DenseBuild b = strat == Strategy::Arce    ? arce_build(blk)
                 : strat == Strategy::Qr    ? qr_build(blk, tol)
                                            : lupivot_build(blk, tol);
  LocalFactorization lf;
  lf.strategy = strat;
  lf.L = blk.L;
  lf.k0 = blk.k0;
  lf.k1 = blk.k1;
  for (auto& [rho, col] : b.deferred)
    lf.extras.push_back({col - b.k0, 0.0});

  DenseCore core = finish_dense(std::move(b));
  const int dim = core.dim, k0 = lf.k0, k1 = lf.k1, L = lf.L;

  // Pivot pairing: column j of the factorization corresponds to frame row
  // pair_row[j].  Separator positions pair with themselves.
  std::vector<int> pair_row(dim, -1);
  for (int t = 0; t < k0; ++t) pair_row[t] = t;
  for (int t = 0; t < k1; ++t) pair_row[k0 + L + t] = k0 + L + t;
  for (auto& [rho, col] : core.a_order) pair_row[col] = rho;
  for (auto& [rho, col] : core.b_order) pair_row[col] = rho;
  for (std::size_t u = 0; u < core.kept_cols.size(); ++u)
    pair_row[core.kept_cols[u]] = core.kept_rows[u];

  for (std::size_t u = 0; u < lf.extras.size(); ++u)
    lf.extras[u].alpha = core.Wmid.at(core.kept_rows[k0 + u], core.kept_cols[k0 + u]);

  lf.w = DenseMatrix(L, k0);
  lf.z = DenseMatrix(L, k0);
  lf.v = DenseMatrix(L, k1);
  lf.y = DenseMatrix(L, k1);
  for (int x = 0; x < L; ++x) {
    int rho = pair_row[k0 + x];
    bool kept_col = false;
    for (int kc : core.kept_cols)
      if (kc == k0 + x) kept_col = true;
    for (int t = 0; t < k0; ++t) {
      lf.w.at(x, t) = core.Linv.at(t, rho);
      lf.z.at(x, t) = kept_col ? 0.0 : core.Wmid.at(rho, t);
    }
    for (int t = 0; t < k1; ++t) {
      lf.v.at(x, t) = core.Linv.at(k0 + L + t, rho);
      lf.y.at(x, t) = kept_col ? 0.0 : core.Wmid.at(rho, k0 + L + t);
    }
  }

  lf.alpha1 = DenseMatrix(k0, k0);
  lf.gamma = DenseMatrix(k0, k1);
  lf.beta = DenseMatrix(k1, k0);
  lf.alpha2 = DenseMatrix(k1, k1);
  for (int i = 0; i < k0; ++i) {
    for (int j = 0; j < k0; ++j) lf.alpha1.at(i, j) = core.Wmid.at(i, j);
    for (int j = 0; j < k1; ++j) lf.gamma.at(i, j) = core.Wmid.at(i, k0 + L + j);
  }
  for (int i = 0; i < k1; ++i) {
    for (int j = 0; j < k0; ++j) lf.beta.at(i, j) = core.Wmid.at(k0 + L + i, j);
    for (int j = 0; j < k1; ++j) lf.alpha2.at(i, j) = core.Wmid.at(k0 + L + i, k0 + L + j);
  }
  const int kd = lf.kept_dim();
  lf.kept = DenseMatrix(kd, kd);
  for (int i = 0; i < kd; ++i)
    for (int j = 0; j < kd; ++j) lf.kept.at(i, j) = core.Wmid.at(core.kept_rows[i], core.kept_cols[j]);

  for (auto& [rho, col] : core.a_order) {
    lf.row_perm.push_back(rho);
    lf.col_perm.push_back(col);
  }
  for (auto& [rho, col] : core.b_order) {
    lf.row_perm.push_back(rho);
    lf.col_perm.push_back(col);
  }

  lf.core = std::move(core);
  return lf;
}

}  // namespace

// ---------------------------------------------------------------------------
// LocalFactorization member operations
// ---------------------------------------------------------------------------

void LocalFactorization::condense(const Vector& f_body, Vector& ghat, Vector& kept_rhs) const {
  if (int(f_body.size()) != L) fail(Errc::DimensionMismatch, "condense rhs length");
  kept_rhs.assign(kept_dim(), 0.0);

  if (auto* bc = std::get_if<BandedCore>(&core)) {
    ghat = banded_N_inv(*bc, f_body);
    for (int t = 0; t < k0; ++t) {
      double acc = 0.0;
      for (int x = 0; x < L; ++x) acc += w.at(x, t) * ghat[x];
      kept_rhs[t] = -acc;
    }
    for (int t = 0; t < k1; ++t) {
      double acc = 0.0;
      for (int x = 0; x < L; ++x) acc += v.at(x, t) * ghat[x];
      kept_rhs[k0 + t] = -acc;
    }
    return;
  }
  if (auto* cc = std::get_if<CyclicCore>(&core)) {
    ghat = f_body;
    for (const auto& e : cc->elims) {
      block_axpy(ghat, e.lnb, e.j, e.ml, cc->g);
      block_axpy(ghat, e.rnb, e.j, e.mr, cc->g);
    }
    const int R = int(cc->rem.size()), g = cc->g;
    Vector trem(R * g);
    for (int u = 0; u < R; ++u)
      for (int t = 0; t < g; ++t) trem[u * g + t] = ghat[cc->rem[u] * g + t];
    for (int i = 0; i < k0 + k1; ++i) {
      double acc = 0.0;
      for (int q = 0; q < R * g; ++q) acc += cc->rmat_d2inv.at(i, q) * trem[q];
      kept_rhs[i] = -acc;
    }
    return;
  }
  const auto& dc = std::get<DenseCore>(core);
  Vector frame(dc.dim, 0.0);
  for (int x = 0; x < L; ++x) frame[k0 + x] = f_body[x];
  Vector t = matvec(dc.Lmat, frame);
  ghat.assign(t.begin() + k0, t.begin() + k0 + L);
  for (int i = 0; i < kept_dim(); ++i) kept_rhs[i] = t[dc.kept_rows[i]];
}

Vector LocalFactorization::backsolve(const Vector& ghat, const Vector& x_kept) const {
  if (auto* bc = std::get_if<BandedCore>(&core)) {
    Vector rhs = ghat;
    for (int x = 0; x < L; ++x) {
      double acc = rhs[x];
      for (int t = 0; t < k0; ++t) acc -= z.at(x, t) * x_kept[t];
      for (int t = 0; t < k1; ++t) acc -= y.at(x, t) * x_kept[k0 + t];
      rhs[x] = acc;
    }
    return banded_S_inv(*bc, std::move(rhs));
  }
  if (auto* cc = std::get_if<CyclicCore>(&core)) {
    const int R = int(cc->rem.size()), g = cc->g;
    Vector trem(R * g);
    for (int u = 0; u < R; ++u)
      for (int t = 0; t < g; ++t) trem[u * g + t] = ghat[cc->rem[u] * g + t];
    for (int q = 0; q < R * g; ++q)
      for (int i = 0; i < k0 + k1; ++i) trem[q] -= cc->cmat.at(q, i) * x_kept[i];
    Vector xrem = matvec(cc->d2inv, trem);
    Vector x(L, 0.0);
    for (int u = 0; u < R; ++u)
      for (int t = 0; t < g; ++t) x[cc->rem[u] * g + t] = xrem[u * g + t];
    for (auto it = cc->elims.rbegin(); it != cc->elims.rend(); ++it) {
      Vector rhs(g);
      for (int t = 0; t < g; ++t) rhs[t] = ghat[it->j * g + t];
      for (int t = 0; t < g; ++t) {
        double acc = rhs[t];
        if (!it->a.empty())
          for (int u = 0; u < g; ++u) acc -= it->a.at(t, u) * x[it->lnb * g + u];
        if (!it->c.empty())
          for (int u = 0; u < g; ++u) acc -= it->c.at(t, u) * x[it->rnb * g + u];
        rhs[t] = acc;
      }
      for (int t = 0; t < g; ++t) {
        double acc = 0.0;
        for (int u = 0; u < g; ++u) acc += it->dinv.at(t, u) * rhs[u];
        x[it->j * g + t] = acc;
      }
    }
    return x;
  }
  const auto& dc = std::get<DenseCore>(core);
  Vector xi(dc.dim, 0.0);
  Vector t(dc.dim, 0.0);
  for (int x = 0; x < L; ++x) t[k0 + x] = ghat[x];
  for (int i = 0; i < kept_dim(); ++i) xi[dc.kept_cols[i]] = x_kept[i];
  for (const auto& [rho, c] : dc.b_order) {
    double acc = t[rho];
    for (int j = 0; j < dc.dim; ++j) {
      if (j == c) continue;
      double e = dc.Wmid.at(rho, j);
      if (e != 0.0) acc -= e * xi[j];
    }
    xi[c] = acc / dc.Wmid.at(rho, c);
  }
  for (auto it = dc.a_order.rbegin(); it != dc.a_order.rend(); ++it) {
    const auto& [rho, c] = *it;
    double acc = t[rho];
    for (int j = 0; j < dc.dim; ++j) {
      if (j == c) continue;
      double e = dc.Wmid.at(rho, j);
      if (e != 0.0) acc -= e * xi[j];
    }
    xi[c] = acc / dc.Wmid.at(rho, c);
  }
  Vector full = dc.has_right ? matvec(dc.Rmat, xi) : xi;
  return Vector(full.begin() + k0, full.begin() + k0 + L);
}

Vector LocalFactorization::apply_N_inv(const Vector& rhs) const {
  if (int(rhs.size()) != L) fail(Errc::DimensionMismatch, "apply_N_inv length");
  if (auto* bc = std::get_if<BandedCore>(&core)) return banded_N_inv(*bc, rhs);
  if (auto* cc = std::get_if<CyclicCore>(&core)) {
    Vector t = rhs;
    for (const auto& e : cc->elims) {
      block_axpy(t, e.lnb, e.j, e.ml, cc->g);
      block_axpy(t, e.rnb, e.j, e.mr, cc->g);
    }
    return t;
  }
  const auto& dc = std::get<DenseCore>(core);
  Vector frame(dc.dim, 0.0);
  for (int x = 0; x < L; ++x) frame[k0 + x] = rhs[x];
  Vector t = matvec(dc.Lmat, frame);
  std::vector<int> pair_row(dc.dim);
  for (int j = 0; j < dc.dim; ++j) pair_row[j] = j;
  for (auto& [rho, c] : dc.a_order) pair_row[c] = rho;
  for (auto& [rho, c] : dc.b_order) pair_row[c] = rho;
  for (std::size_t u = 0; u < dc.kept_cols.size(); ++u) pair_row[dc.kept_cols[u]] = dc.kept_rows[u];
  Vector out(L);
  for (int x = 0; x < L; ++x) out[x] = t[pair_row[k0 + x]];
  return out;
}

Vector LocalFactorization::apply_S_inv(const Vector& rhs) const {
  if (int(rhs.size()) != L) fail(Errc::DimensionMismatch, "apply_S_inv length");
  if (auto* bc = std::get_if<BandedCore>(&core)) return banded_S_inv(*bc, rhs);
  return backsolve(rhs, Vector(kept_dim(), 0.0));
}

// --- oracle materializations ---

DenseMatrix LocalFactorization::dense_F_loc() const {
  const int dim = k0 + L + k1;
  if (auto* bc = std::get_if<BandedCore>(&core)) {
    DenseMatrix F = DenseMatrix::identity(dim);
    // body N: unit lower band, optionally times the unit upper U'.
    DenseMatrix Lm = DenseMatrix::identity(L);
    const int bw = bc->es + 1 + bc->er;
    for (int i = 0; i < L; ++i)
      for (int d = 1; d <= std::min(bc->es, i); ++d)
        Lm.at(i, i - d) = bc->fac[std::size_t(i) * bw + (bc->es - d)];
    DenseMatrix N = Lm;
    if (bc->unit_mid) {
      DenseMatrix Up = DenseMatrix::identity(L);
      for (int i = 0; i < L; ++i)
        for (int d = 1; d <= std::min(bc->er, L - 1 - i); ++d)
          Up.at(i, i + d) = bc->fac[std::size_t(i) * bw + (bc->es + d)] / bc->dvec[i + d];
      N = matmul(Lm, Up);
    }
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) F.at(k0 + i, k0 + j) = N.at(i, j);
    for (int t = 0; t < k0; ++t)
      for (int x = 0; x < L; ++x) F.at(t, k0 + x) = w.at(x, t);
    for (int t = 0; t < k1; ++t)
      for (int x = 0; x < L; ++x) F.at(k0 + L + t, k0 + x) = v.at(x, t);
    return F;
  }
  if (auto* cc = std::get_if<CyclicCore>(&core)) {
    // Accumulate the forward elimination operator and invert it.
    DenseMatrix E = DenseMatrix::identity(dim);
    const int g = cc->g;
    auto axpy_rows = [&](int tgt, int src, const DenseMatrix& M) {
      for (int j = 0; j < dim; ++j)
        for (int ti = 0; ti < g; ++ti) {
          double acc = 0.0;
          for (int tj = 0; tj < g; ++tj) acc += M.at(ti, tj) * E.at(k0 + src * g + tj, j);
          E.at(k0 + tgt * g + ti, j) -= acc;
        }
    };
    for (const auto& e : cc->elims) {
      axpy_rows(e.lnb, e.j, e.ml);
      axpy_rows(e.rnb, e.j, e.mr);
    }
    const int R = int(cc->rem.size());
    for (int i = 0; i < k0 + k1; ++i) {
      int frow = i < k0 ? i : k0 + L + (i - k0);
      for (int u = 0; u < R; ++u)
        for (int t = 0; t < g; ++t) {
          double mu = cc->rmat_d2inv.at(i, u * g + t);
          if (mu == 0.0) continue;
          for (int j = 0; j < dim; ++j) E.at(frow, j) -= mu * E.at(k0 + cc->rem[u] * g + t, j);
        }
    }
    return inverse(E);
  }
  const auto& dc = std::get<DenseCore>(core);
  std::vector<int> pair_row(dim);
  for (int j = 0; j < dim; ++j) pair_row[j] = j;
  for (auto& [rho, c] : dc.a_order) pair_row[c] = rho;
  for (auto& [rho, c] : dc.b_order) pair_row[c] = rho;
  for (std::size_t u = 0; u < dc.kept_cols.size(); ++u) pair_row[dc.kept_cols[u]] = dc.kept_rows[u];
  DenseMatrix F(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) F.at(i, j) = dc.Linv.at(i, pair_row[j]);
  return F;
}

namespace {

// Middle matrix for the cyclic core, rebuilt from the stored pieces.
DenseMatrix cyclic_wmid(const LocalFactorization& lf) {
  const auto& cc = std::get<LocalFactorization::CyclicCore>(lf.core);
  const int dim = lf.k0 + lf.L + lf.k1;
  const int g = cc.g;
  DenseMatrix W(dim, dim);
  for (int i = 0; i < lf.k0; ++i)
    for (int j = 0; j < lf.k0 + lf.k1; ++j) {
      int fc = j < lf.k0 ? j : lf.k0 + lf.L + (j - lf.k0);
      W.at(i, fc) = lf.kept.at(i, j);
    }
  for (int i = 0; i < lf.k1; ++i)
    for (int j = 0; j < lf.k0 + lf.k1; ++j) {
      int fc = j < lf.k0 ? j : lf.k0 + lf.L + (j - lf.k0);
      W.at(lf.k0 + lf.L + i, fc) = lf.kept.at(lf.k0 + i, j);
    }
  for (const auto& e : cc.elims) {
    DenseMatrix d = inverse(e.dinv);
    for (int ti = 0; ti < g; ++ti) {
      for (int tj = 0; tj < g; ++tj) {
        W.at(lf.k0 + e.j * g + ti, lf.k0 + e.j * g + tj) = d.at(ti, tj);
        if (!e.a.empty()) W.at(lf.k0 + e.j * g + ti, lf.k0 + e.lnb * g + tj) = e.a.at(ti, tj);
        if (!e.c.empty()) W.at(lf.k0 + e.j * g + ti, lf.k0 + e.rnb * g + tj) = e.c.at(ti, tj);
      }
    }
  }
  const int R = int(cc.rem.size());
  for (int u = 0; u < R; ++u)
    for (int q = 0; q < R; ++q)
      for (int ti = 0; ti < g; ++ti)
        for (int tj = 0; tj < g; ++tj)
          W.at(lf.k0 + cc.rem[u] * g + ti, lf.k0 + cc.rem[q] * g + tj) = cc.d2.at(u * g + ti, q * g + tj);
  for (int u = 0; u < R; ++u)
    for (int ti = 0; ti < g; ++ti)
      for (int j = 0; j < lf.k0 + lf.k1; ++j) {
        int fc = j < lf.k0 ? j : lf.k0 + lf.L + (j - lf.k0);
        W.at(lf.k0 + cc.rem[u] * g + ti, fc) = cc.cmat.at(u * g + ti, j);
      }
  return W;
}

}  // namespace

DenseMatrix LocalFactorization::dense_T_loc() const {
  const int dim = k0 + L + k1;
  DenseMatrix T = DenseMatrix::identity(dim);
  if (std::holds_alternative<BandedCore>(core) || std::holds_alternative<CyclicCore>(core)) {
    for (int i = 0; i < k0; ++i) {
      for (int j = 0; j < k0; ++j) T.at(i, j) = alpha1.at(i, j);
      for (int j = 0; j < k1; ++j) T.at(i, k0 + L + j) = gamma.at(i, j);
    }
    for (int i = 0; i < k1; ++i) {
      for (int j = 0; j < k0; ++j) T.at(k0 + L + i, j) = beta.at(i, j);
      for (int j = 0; j < k1; ++j) T.at(k0 + L + i, k0 + L + j) = alpha2.at(i, j);
    }
    return T;
  }
  const auto& dc = std::get<DenseCore>(core);
  for (std::size_t u = 0; u < dc.kept_cols.size(); ++u) {
    int c = dc.kept_cols[u];
    int rho = dc.kept_rows[u];
    for (int j = 0; j < dim; ++j) T.at(c, j) = 0.0;
    for (std::size_t q = 0; q < dc.kept_cols.size(); ++q)
      T.at(c, dc.kept_cols[q]) = dc.Wmid.at(rho, dc.kept_cols[q]);
  }
  return T;
}

DenseMatrix LocalFactorization::dense_G_loc() const {
  const int dim = k0 + L + k1;
  if (auto* bc = std::get_if<BandedCore>(&core)) {
    DenseMatrix G = DenseMatrix::identity(dim);
    const int bw = bc->es + 1 + bc->er;
    for (int i = 0; i < L; ++i) {
      if (bc->unit_mid) {
        G.at(k0 + i, k0 + i) = bc->dvec[i];
      } else {
        for (int d = 0; d <= std::min(bc->er, L - 1 - i); ++d)
          G.at(k0 + i, k0 + i + d) = bc->fac[std::size_t(i) * bw + (bc->es + d)];
      }
      for (int t = 0; t < k0; ++t) G.at(k0 + i, t) = z.at(i, t);
      for (int t = 0; t < k1; ++t) G.at(k0 + i, k0 + L + t) = y.at(i, t);
    }
    return G;
  }
  if (std::holds_alternative<CyclicCore>(core)) {
    DenseMatrix W = cyclic_wmid(*this);
    for (int t = 0; t < k0; ++t) {
      for (int j = 0; j < dim; ++j) W.at(t, j) = 0.0;
      W.at(t, t) = 1.0;
    }
    for (int t = 0; t < k1; ++t) {
      for (int j = 0; j < dim; ++j) W.at(k0 + L + t, j) = 0.0;
      W.at(k0 + L + t, k0 + L + t) = 1.0;
    }
    return W;
  }
  const auto& dc = std::get<DenseCore>(core);
  std::vector<int> pair_row(dim);
  for (int j = 0; j < dim; ++j) pair_row[j] = j;
  for (auto& [rho, c] : dc.a_order) pair_row[c] = rho;
  for (auto& [rho, c] : dc.b_order) pair_row[c] = rho;
  for (std::size_t u = 0; u < dc.kept_cols.size(); ++u) pair_row[dc.kept_cols[u]] = dc.kept_rows[u];
  DenseMatrix G(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int j = 0; j < dim; ++j) G.at(c, j) = dc.Wmid.at(pair_row[c], j);
  for (int kc : dc.kept_cols) {
    for (int j = 0; j < dim; ++j) G.at(kc, j) = 0.0;
    G.at(kc, kc) = 1.0;
  }
  if (dc.has_right) G = matmul(G, dc.Rinv);
  return G;
}

DenseMatrix LocalFactorization::dense_N() const {
  DenseMatrix F = dense_F_loc();
  DenseMatrix N(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) N.at(i, j) = F.at(k0 + i, k0 + j);
  return N;
}

DenseMatrix LocalFactorization::dense_S() const {
  DenseMatrix G = dense_G_loc();
  DenseMatrix S(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) S.at(i, j) = G.at(k0 + i, k0 + j);
  return S;
}

// ---------------------------------------------------------------------------
// Front doors
// ---------------------------------------------------------------------------

LocalFactorization factor_lu(const PartitionBlock& M) { return banded_factor(M, false); }
LocalFactorization factor_lud(const PartitionBlock& M) { return banded_factor(M, true); }
LocalFactorization factor_cyclic_reduction(const PartitionBlock& M) { return cr_factor(M); }
LocalFactorization factor_arce(const PartitionBlock& M) { return dense_factor(M, Strategy::Arce, 0.0); }

LocalFactorization factor_lu_pivot(const PartitionBlock& M, double tol) {
  if (tol <= 0) fail(Errc::InvalidParameter, "tol must be positive");
  return dense_factor(M, Strategy::LuPivot, tol);
}

LocalFactorization factor_qr(const PartitionBlock& M, double tol) {
  if (tol <= 0) fail(Errc::InvalidParameter, "tol must be positive");
  return dense_factor(M, Strategy::Qr, tol);
}

LocalFactorization factor(Strategy s, const PartitionBlock& M, double tol) {
  switch (s) {
    case Strategy::Lu: return factor_lu(M);
    case Strategy::Lud: return factor_lud(M);
    case Strategy::CyclicReduction: return factor_cyclic_reduction(M);
    case Strategy::Arce: return factor_arce(M);
    case Strategy::LuPivot: return factor_lu_pivot(M, tol);
    case Strategy::Qr: return factor_qr(M, tol);
  }
  fail(Errc::InvalidParameter, "unknown strategy");
}

}  // namespace parsol
