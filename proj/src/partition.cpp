#include "parsol/partition.hpp"

#include <algorithm>
#include <sstream>

namespace parsol {

DenseMatrix PartitionBlock::body_dense() const {
  DenseMatrix D(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = std::max(0, i - env_s); j <= std::min(L - 1, i + env_r); ++j)
      D.at(i, j) = body_at(i, j);
  return D;
}

DenseMatrix PartitionBlock::local_dense() const {
  const int dim = k0 + L + k1;
  DenseMatrix M(dim, dim);
  for (int x = 0; x < L; ++x) {
    for (int t = 0; t < k0; ++t) {
      M.at(k0 + x, t) = b0.at(x, t);
      M.at(t, k0 + x) = c0.at(x, t);
    }
    for (int t = 0; t < k1; ++t) {
      M.at(k0 + x, k0 + L + t) = c1.at(x, t);
      M.at(k0 + L + t, k0 + x) = b1.at(x, t);
    }
    for (int y = 0; y < L; ++y) M.at(k0 + x, k0 + y) = body_at(x, y);
  }
  // Right separator diagonal is part of M^(i); the left one is not (it is
  // owned by the neighbour, the top-left block of Mi0 is zero).
  for (int t = 0; t < k1; ++t)
    for (int u = 0; u < k1; ++u) M.at(k0 + L + t, k0 + L + u) = a_right.at(t, u);
  return M;
}

namespace {

int separator_size_for(const StructuredMatrix& A) {
  switch (A.kind) {
    case Kind::Banded: return std::max(A.s, A.r);
    case Kind::BlockTridiagonal: return A.m;
    case Kind::Abd:
    case Kind::Babd: return A.m;
    case Kind::CirculantLike: return std::max(A.s, A.r);
  }
  return 0;
}

}  // namespace

PartitionPlan plan_partition(const StructuredMatrix& A, int p) {
  if (p < 2) fail(Errc::TooManyPartitions, "p must be >= 2");
  if (A.kind == Kind::CirculantLike && !A.corner_canonical())
    fail(Errc::UnsupportedKind, "circulant-like corner content is not canonical; permute_corner first");

  PartitionPlan plan;
  plan.kind = A.kind;
  plan.n = A.n;
  plan.m = A.m;
  plan.p = p;
  plan.sep_size = separator_size_for(A);
  plan.has_corner = A.kind == Kind::Babd || A.kind == Kind::CirculantLike;
  if (A.kind == Kind::Babd) {
    plan.corner_rows = A.corner_rows;
    plan.corner_cols = A.corner_cols;
  } else if (A.kind == Kind::CirculantLike) {
    plan.corner_rows = A.s;  // wrap extent of the cyclic sub-diagonals
    plan.corner_cols = A.s;
  }

  const int k = plan.sep_size;
  const int seps = plan.has_corner ? p + 1 : p - 1;
  // Work in units that respect block boundaries.
  const int unit = (A.kind == Kind::Banded || A.kind == Kind::CirculantLike) ? 1 : A.m;
  if (k % unit != 0) fail(Errc::UnsupportedKind, "separator does not tile blocks");
  const int n_units = A.n / unit;
  const int k_units = k / unit;
  const int body_units_total = n_units - seps * k_units;
  // Each body must dominate the coupling reach so bodies never touch
  // non-adjacent separators.
  const int min_body_units = std::max(1, k_units);
  if (body_units_total < p * min_body_units)
    fail(Errc::TooManyPartitions,
         "n too small for p = " + std::to_string(p) + " partitions of this kind");

  const int base = body_units_total / p;
  const int rem = body_units_total % p;

  int cursor = 0;
  if (plan.has_corner) {
    plan.separator_starts.push_back(cursor * unit);
    cursor += k_units;
  }
  for (int i = 0; i < p; ++i) {
    int units = base + (i < rem ? 1 : 0);
    plan.body_ranges.emplace_back(cursor * unit, (cursor + units) * unit);
    cursor += units;
    if (i < p - 1 || plan.has_corner) {
      plan.separator_starts.push_back(cursor * unit);
      cursor += k_units;
    }
  }
  return plan;
}

PartitionBlock extract_block(const StructuredMatrix& A, const PartitionPlan& plan, int i) {
  if (i < 1 || i > plan.p) fail(Errc::IndexOutOfRange, "partition index " + std::to_string(i));

  PartitionBlock blk;
  blk.index = i;
  blk.kind = A.kind;
  blk.m = A.m;
  blk.s = A.s;
  blk.r = A.r;
  auto [b, e] = plan.body_ranges[i - 1];
  blk.body_begin = b;
  blk.L = e - b;

  const int k = plan.sep_size;
  // Separator to the left of body i and to the right of body i.
  int left_sep = plan.has_corner ? i - 1 : i - 2;   // index into separator_starts
  int right_sep = plan.has_corner ? i : i - 1;
  blk.k0 = left_sep >= 0 ? k : 0;
  blk.k1 = right_sep < plan.sep_count() ? k : 0;

  auto [es, er] = scalar_envelope(A);
  blk.env_s = std::min(es, blk.L - 1);
  blk.env_r = std::min(er, blk.L - 1);
  const int w = blk.env_s + 1 + blk.env_r;
  blk.env.assign(std::size_t(blk.L) * w, 0.0);
  for (int x = 0; x < blk.L; ++x)
    for (int j = std::max(0, x - blk.env_s); j <= std::min(blk.L - 1, x + blk.env_r); ++j)
      blk.env[std::size_t(x) * w + (j - x + blk.env_s)] = A.at(b + x, b + j);

  blk.b0 = DenseMatrix(blk.L, blk.k0);
  blk.c0 = DenseMatrix(blk.L, blk.k0);
  if (blk.k0 > 0) {
    int ls = plan.separator_starts[left_sep];
    for (int x = 0; x < blk.L; ++x)
      for (int t = 0; t < k; ++t) {
        blk.b0.at(x, t) = A.at(b + x, ls + t);
        blk.c0.at(x, t) = A.at(ls + t, b + x);
      }
    blk.a_left = DenseMatrix(k, k);
    for (int t = 0; t < k; ++t)
      for (int u = 0; u < k; ++u) blk.a_left.at(t, u) = A.at(ls + t, ls + u);
  }

  blk.b1 = DenseMatrix(blk.L, blk.k1);
  blk.c1 = DenseMatrix(blk.L, blk.k1);
  if (blk.k1 > 0) {
    int rs = plan.separator_starts[right_sep];
    for (int x = 0; x < blk.L; ++x)
      for (int t = 0; t < k; ++t) {
        blk.c1.at(x, t) = A.at(b + x, rs + t);
        blk.b1.at(x, t) = A.at(rs + t, b + x);
      }
    blk.a_right = DenseMatrix(k, k);
    for (int t = 0; t < k; ++t)
      for (int u = 0; u < k; ++u) blk.a_right.at(t, u) = A.at(rs + t, rs + u);
  }

  if (plan.has_corner && i == 1 && k > 0) {
    // The corner couples a^(0) to a^(p); partition 1 carries the slice.
    int s0 = plan.separator_starts.front();
    int sp = plan.separator_starts.back();
    blk.corner_slice = DenseMatrix(k, k);
    for (int t = 0; t < k; ++t)
      for (int u = 0; u < k; ++u) blk.corner_slice.at(t, u) = A.at(s0 + t, sp + u);
  }
  return blk;
}

std::pair<StructuredMatrix, Permutation> permute_corner(const StructuredMatrix& A) {
  if (A.kind != Kind::CirculantLike && A.kind != Kind::Babd)
    fail(Errc::UnsupportedKind, "permute_corner applies to circulant-like and BABD matrices");

  Permutation id;
  id.source.resize(A.n);
  for (int i = 0; i < A.n; ++i) id.source[i] = i;
  if (A.corner_canonical()) return {A, id};

  // Cyclic banded matrix with r wrapped super-diagonals: rotating the rows
  // down by r turns every band into a sub-diagonal, so all wrap content
  // lands in the upper-right corner.
  const int n = A.n, s = A.s, r = A.r;
  Permutation perm;
  perm.source.resize(n);
  for (int i = 0; i < n; ++i) perm.source[i] = ((i - r) % n + n) % n;

  std::vector<double> data(std::size_t(s + r + 1) * n);
  for (int d = -(s + r); d <= 0; ++d) {
    // New band d holds old band d + r, row-shifted by the rotation.
    for (int i = 0; i < n; ++i) {
      int src_row = perm.source[i];
      data[std::size_t(d + s + r) * n + i] = A.data[std::size_t(d + r + s) * n + src_row];
    }
  }
  StructuredMatrix B = make(Kind::CirculantLike, n, 1, s + r, 0, std::move(data));
  return {B, perm};
}

std::string describe(const PartitionPlan& plan) {
  std::ostringstream out;
  out << "plan kind=" << kind_name(plan.kind) << " n=" << plan.n << " p=" << plan.p
      << " sep_size=" << plan.sep_size << (plan.has_corner ? " corner" : "") << '\n';
  for (int i = 0; i < plan.p; ++i) {
    if (plan.has_corner)
      out << "  a(" << i << ") at " << plan.separator_starts[i] << '\n';
    else if (i > 0)
      out << "  a(" << i << ") at " << plan.separator_starts[i - 1] << '\n';
    out << "  A(" << i + 1 << ") rows [" << plan.body_ranges[i].first << ", "
        << plan.body_ranges[i].second << ")\n";
  }
  if (plan.has_corner)
    out << "  a(" << plan.p << ") at " << plan.separator_starts.back() << '\n';
  return out.str();
}

}  // namespace parsol
