#include "parsol/parfact.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

namespace parsol {

namespace {

int find_block(const ReducedSystem& R, int position) {
  for (int b = 0; b < R.q; ++b)
    if (R.positions[b] == position) return b;
  fail(Errc::IndexOutOfRange, "kept position not in reduced system");
}

}  // namespace

ParallelFactorization parallel_factor(const StructuredMatrix& A, int p, Strategy strategy,
                                      double tol) {
  double t0 = omp_get_wtime();
  ParallelFactorization F;
  F.strategy = strategy;

  const StructuredMatrix* work = &A;
  StructuredMatrix permuted_store;
  if (A.kind == Kind::CirculantLike && !A.corner_canonical()) {
    auto [B, perm] = permute_corner(A);
    permuted_store = std::move(B);
    work = &permuted_store;
    F.permuted = true;
    F.row_perm = std::move(perm);
  }
  if (!strategy_supports(strategy, work->kind, work->s, work->r))
    fail(Errc::UnsupportedKind, std::string("strategy ") + strategy_name(strategy) +
                                    " does not support kind " + kind_name(work->kind));

  F.plan = plan_partition(*work, p);
  const PartitionPlan& plan = F.plan;

  // Extract and factor every partition concurrently.  Each worker owns one
  // partition; errors are collected and reported for the lowest index.
  F.locals.resize(p);
  std::vector<std::exception_ptr> errs(p);
  DenseMatrix corner_slice;
#pragma omp parallel for schedule(static)
  for (int i = 1; i <= p; ++i) {
    try {
      PartitionBlock blk = extract_block(*work, plan, i);
      if (i == 1 && plan.has_corner) {
#pragma omp critical
        corner_slice = blk.corner_slice;
      }
      F.locals[i - 1] = factor(strategy, blk, tol);
    } catch (...) {
      errs[i - 1] = std::current_exception();
    }
  }
  for (int i = 0; i < p; ++i) {
    if (!errs[i]) continue;
    try {
      std::rethrow_exception(errs[i]);
    } catch (const Error& e) {
      fail(e.code(), "partition " + std::to_string(i + 1) + ": " + e.detail());
    }
  }

  // Kept blocks: every separator plus every adaptive extra, ordered by
  // global position.
  ReducedSystem R;
  R.has_corner = plan.has_corner;
  const int k = plan.sep_size;
  std::vector<std::pair<int, int>> blocks;  // (position, size)
  for (int j = 0; j < plan.sep_count(); ++j) blocks.emplace_back(plan.separator_starts[j], k);
  for (int i = 0; i < p; ++i)
    for (const auto& ex : F.locals[i].extras)
      blocks.emplace_back(plan.body_ranges[i].first + ex.position, 1);
  std::sort(blocks.begin(), blocks.end());

  R.q = int(blocks.size());
  for (auto& [pos, size] : blocks) {
    R.offsets.push_back(R.dim);
    R.positions.push_back(pos);
    R.block_sizes.push_back(size);
    R.dim += size;
  }
  R.T = DenseMatrix(R.dim, R.dim);

  // Original separator diagonals are owned by their left-neighbour
  // partition (inside alpha2); the leading separator of a corner plan has
  // no left neighbour, so its diagonal is added centrally.
  if (plan.has_corner) {
    int b0 = find_block(R, plan.separator_starts.front());
    int o0 = R.offsets[b0];
    for (int t = 0; t < k; ++t)
      for (int u = 0; u < k; ++u) R.T.at(o0 + t, o0 + u) += work->at(plan.separator_starts[0] + t, plan.separator_starts[0] + u);
    // Corner block couples a^(0) to a^(p).
    int bp = find_block(R, plan.separator_starts.back());
    int op = R.offsets[bp];
    for (int t = 0; t < k; ++t)
      for (int u = 0; u < k; ++u) R.T.at(o0 + t, op + u) += corner_slice.at(t, u);
  }

  F.kept_maps.assign(p, {});
  for (int i = 0; i < p; ++i) {
    const LocalFactorization& lf = F.locals[i];
    std::vector<int>& map = F.kept_maps[i];
    int left_sep = plan.has_corner ? i : i - 1;
    int right_sep = plan.has_corner ? i + 1 : i;
    if (lf.k0 > 0) {
      int b = find_block(R, plan.separator_starts[left_sep]);
      for (int t = 0; t < k; ++t) map.push_back(R.offsets[b] + t);
    }
    for (const auto& ex : lf.extras) {
      int b = find_block(R, plan.body_ranges[i].first + ex.position);
      map.push_back(R.offsets[b]);
    }
    if (lf.k1 > 0) {
      int b = find_block(R, plan.separator_starts[right_sep]);
      for (int t = 0; t < k; ++t) map.push_back(R.offsets[b] + t);
    }
    const int kd = lf.kept_dim();
    for (int a = 0; a < kd; ++a)
      for (int b = 0; b < kd; ++b) R.T.at(map[a], map[b]) += lf.kept.at(a, b);
  }

  F.reduced = std::move(R);
  F.factor_seconds = omp_get_wtime() - t0;
  return F;
}

Vector solve_reduced(const ReducedSystem& R, const Vector& rhs, SolveStats* stats) {
  if (int(rhs.size()) != R.dim) fail(Errc::DimensionMismatch, "reduced rhs length");
  const int n = R.dim;
  if (n == 0) return {};
  long long ops = 0;
  DenseMatrix lu = R.T;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(lu.at(c, c));
    for (int i = c + 1; i < n; ++i) {
      double v = std::abs(lu.at(i, c));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) fail(Errc::SingularReducedSystem, "reduced system is singular");
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(lu.at(c, j), lu.at(piv, j));
      std::swap(perm[c], perm[piv]);
    }
    for (int i = c + 1; i < n; ++i) {
      double mu = lu.at(i, c) / lu.at(c, c);
      lu.at(i, c) = mu;
      ++ops;
      for (int j = c + 1; j < n; ++j) {
        lu.at(i, j) -= mu * lu.at(c, j);
        ++ops;
      }
    }
  }
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[perm[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      x[i] -= lu.at(i, j) * x[j];
      ++ops;
    }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) {
      x[i] -= lu.at(i, j) * x[j];
      ++ops;
    }
    x[i] /= lu.at(i, i);
    ++ops;
  }
  if (stats) stats->reduced_ops += ops;
  return x;
}

Vector solve(const ParallelFactorization& F, const Vector& f, SolveStats* stats) {
  const PartitionPlan& plan = F.plan;
  if (int(f.size()) != plan.n) fail(Errc::DimensionMismatch, "rhs length");
  const Vector fp = F.permuted ? F.row_perm.apply(f) : f;
  const int p = plan.p;

  double t1 = omp_get_wtime();
  std::vector<Vector> ghat(p), kept_rhs(p);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < p; ++i) {
    auto [b, e] = plan.body_ranges[i];
    Vector fb(fp.begin() + b, fp.begin() + e);
    F.locals[i].condense(fb, ghat[i], kept_rhs[i]);
  }
  double t2 = omp_get_wtime();

  // Assemble the reduced right-hand side: original entries at separator
  // positions, then every partition's contributions (order is fixed, so the
  // result does not depend on the worker count).
  Vector rrhs(F.reduced.dim, 0.0);
  for (int bidx = 0; bidx < F.reduced.q; ++bidx)
    if (F.reduced.block_sizes[bidx] == plan.sep_size &&
        std::find(plan.separator_starts.begin(), plan.separator_starts.end(),
                  F.reduced.positions[bidx]) != plan.separator_starts.end())
      for (int t = 0; t < F.reduced.block_sizes[bidx]; ++t)
        rrhs[F.reduced.offsets[bidx] + t] = fp[F.reduced.positions[bidx] + t];
  for (int i = 0; i < p; ++i)
    for (std::size_t a = 0; a < F.kept_maps[i].size(); ++a)
      rrhs[F.kept_maps[i][a]] += kept_rhs[i][a];

  Vector xk = solve_reduced(F.reduced, rrhs, stats);
  double t3 = omp_get_wtime();

  Vector x(plan.n, 0.0);
  for (int bidx = 0; bidx < F.reduced.q; ++bidx)
    for (int t = 0; t < F.reduced.block_sizes[bidx]; ++t)
      x[F.reduced.positions[bidx] + t] = xk[F.reduced.offsets[bidx] + t];
#pragma omp parallel for schedule(static)
  for (int i = 0; i < p; ++i) {
    Vector xkept(F.kept_maps[i].size());
    for (std::size_t a = 0; a < xkept.size(); ++a) xkept[a] = xk[F.kept_maps[i][a]];
    Vector xb = F.locals[i].backsolve(ghat[i], xkept);
    auto [b, e] = plan.body_ranges[i];
    for (int t = 0; t < e - b; ++t) x[b + t] = xb[t];
  }
  double t4 = omp_get_wtime();

  if (stats) {
    stats->phase1_seconds += t2 - t1;
    stats->phase2_seconds += t3 - t2;
    stats->phase3_seconds += t4 - t3;
  }
  return x;
}

double residual(const StructuredMatrix& A, const Vector& x, const Vector& f) {
  if (int(x.size()) != A.n || int(f.size()) != A.n)
    fail(Errc::DimensionMismatch, "residual lengths");
  Vector Ax = matvec(A, x);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < A.n; ++i) {
    num = std::max(num, std::abs(Ax[i] - f[i]));
    den = std::max(den, std::abs(f[i]));
  }
  return den > 0 ? num / den : num;
}

}  // namespace parsol
