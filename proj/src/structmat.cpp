#include "parsol/structmat.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "parsol/rng.hpp"

namespace parsol {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Banded: return "banded";
    case Kind::BlockTridiagonal: return "blocktri";
    case Kind::Abd: return "abd";
    case Kind::Babd: return "babd";
    case Kind::CirculantLike: return "circulant";
  }
  return "?";
}

Kind kind_from_name(const std::string& s) {
  if (s == "banded") return Kind::Banded;
  if (s == "blocktri") return Kind::BlockTridiagonal;
  if (s == "abd") return Kind::Abd;
  if (s == "babd") return Kind::Babd;
  if (s == "circulant") return Kind::CirculantLike;
  fail(Errc::ParseError, "unknown kind '" + s + "'");
}

namespace {

// Banded helpers: band d in [-s, r], clipped length n - |d|.
std::size_t band_offset(int n, int s, int d) {
  std::size_t off = 0;
  for (int b = -s; b < d; ++b) off += std::size_t(n - std::abs(b));
  return off;
}

// ABD block-row column window [c0, c1).
std::pair<int, int> abd_span(int n, int m, int s, int r, int b) {
  int c0 = std::max(0, b * m - s);
  int c1 = std::min(n, b * m + m + r);
  return {c0, c1};
}

std::size_t abd_row_offset(int n, int m, int s, int r, int b) {
  std::size_t off = 0;
  for (int q = 0; q < b; ++q) {
    auto [c0, c1] = abd_span(n, m, s, r, q);
    off += std::size_t(m) * (c1 - c0);
  }
  return off;
}

std::size_t blocktri_row_offset(int nb, int m, int b) {
  (void)nb;
  if (b == 0) return 0;
  return std::size_t(3 * b - 1) * m * m;
}

}  // namespace

std::size_t body_entry_count(Kind kind, int n, int m, int s, int r) {
  switch (kind) {
    case Kind::Banded: {
      std::size_t c = 0;
      for (int d = -s; d <= r; ++d) c += std::size_t(n - std::abs(d));
      return c;
    }
    case Kind::BlockTridiagonal: {
      int nb = n / m;
      return std::size_t(3 * nb - 2) * m * m;
    }
    case Kind::Abd:
    case Kind::Babd: {
      int nb = n / m;
      return abd_row_offset(n, m, s, r, nb);
    }
    case Kind::CirculantLike:
      return std::size_t(s + r + 1) * n;
  }
  return 0;
}

bool StructuredMatrix::in_structure(int i, int j) const {
  if (i < 0 || j < 0 || i >= n || j >= n) return false;
  switch (kind) {
    case Kind::Banded:
      return j - i <= r && i - j <= s;
    case Kind::BlockTridiagonal: {
      int bi = i / m, bj = j / m;
      return std::abs(bi - bj) <= 1;
    }
    case Kind::Abd:
    case Kind::Babd: {
      int b = i / m;
      auto [c0, c1] = abd_span(n, m, s, r, b);
      if (j >= c0 && j < c1) return true;
      if (kind == Kind::Babd && i < corner_rows && j >= n - corner_cols) return true;
      return false;
    }
    case Kind::CirculantLike: {
      int dd = j - i;
      if (dd < 0) dd += n;
      return dd <= r || n - dd <= s;
    }
  }
  return false;
}

double StructuredMatrix::at(int i, int j) const {
  if (!in_structure(i, j)) return 0.0;
  switch (kind) {
    case Kind::Banded: {
      int d = j - i;
      int i0 = std::max(0, -d);
      return data[band_offset(n, s, d) + (i - i0)];
    }
    case Kind::BlockTridiagonal: {
      int bi = i / m, bj = j / m;
      int nb = n / m;
      std::size_t off = blocktri_row_offset(nb, m, bi);
      int blk = (bi > 0 ? bj - bi + 1 : bj - bi);  // position within the stored row
      return data[off + std::size_t(blk) * m * m + std::size_t(i - bi * m) * m + (j - bj * m)];
    }
    case Kind::Abd:
    case Kind::Babd: {
      int b = i / m;
      auto [c0, c1] = abd_span(n, m, s, r, b);
      if (j >= c0 && j < c1) {
        std::size_t off = abd_row_offset(n, m, s, r, b);
        return data[off + std::size_t(i - b * m) * (c1 - c0) + (j - c0)];
      }
      return corner[std::size_t(i) * corner_cols + (j - (n - corner_cols))];
    }
    case Kind::CirculantLike: {
      int dd = j - i;
      if (dd < 0) dd += n;
      int d = dd <= r ? dd : dd - n;
      return data[std::size_t(d + s) * n + i];
    }
  }
  return 0.0;
}

bool StructuredMatrix::corner_canonical() const {
  if (kind == Kind::Babd) return true;  // corner stored upper-right by layout
  if (kind != Kind::CirculantLike) return true;
  return r == 0;  // all wrap content comes from sub-diagonals -> upper-right
}

StructuredMatrix make(Kind kind, int n, int m, int s, int r, std::vector<double> data,
                      std::vector<double> corner, int corner_rows, int corner_cols) {
  if (n <= 0) fail(Errc::DimensionMismatch, "n must be positive");
  if (m <= 0) fail(Errc::DimensionMismatch, "m must be positive");
  if (s < 0 || r < 0) fail(Errc::InvalidBandwidth, "bandwidths must be non-negative");

  switch (kind) {
    case Kind::Banded:
    case Kind::CirculantLike:
      if (m != 1) fail(Errc::DimensionMismatch, "scalar kinds require m = 1");
      if (s + r + 1 > n) fail(Errc::InvalidBandwidth, "band wider than matrix");
      break;
    case Kind::BlockTridiagonal:
      if (n % m != 0) fail(Errc::DimensionMismatch, "n must be a multiple of m");
      if (s != 1 || r != 1) fail(Errc::InvalidBandwidth, "block tridiagonal requires s = r = 1");
      break;
    case Kind::Abd:
    case Kind::Babd:
      if (n % m != 0) fail(Errc::DimensionMismatch, "n must be a multiple of m");
      if (m < 2) fail(Errc::DimensionMismatch, "ABD requires m >= 2");
      if (s < 1 || r < 1 || s + r != m)
        fail(Errc::InvalidBandwidth, "ABD requires s,r >= 1 with s + r = m");
      if (n / m < 2) fail(Errc::DimensionMismatch, "ABD requires at least 2 block rows");
      break;
  }

  if (kind == Kind::Babd) {
    if (corner.empty()) fail(Errc::DimensionMismatch, "BABD requires a corner block");
    if (corner_rows < 1 || corner_cols < 1 || corner_rows > m || corner_cols > m)
      fail(Errc::DimensionMismatch, "corner block must fit inside the first/last block");
    if (corner.size() != std::size_t(corner_rows) * corner_cols)
      fail(Errc::DimensionMismatch, "corner entry count mismatch");
    if (m + r > n - corner_cols)
      fail(Errc::DimensionMismatch, "corner overlaps the first block row span");
  } else if (!corner.empty() || corner_rows || corner_cols) {
    fail(Errc::CornerForbidden, std::string("corner block not allowed for kind ") + kind_name(kind));
  }

  std::size_t want = body_entry_count(kind, n, m, s, r);
  if (data.size() != want)
    fail(Errc::DimensionMismatch, "expected " + std::to_string(want) + " body entries, got " +
                                      std::to_string(data.size()));

  StructuredMatrix A;
  A.kind = kind;
  A.n = n;
  A.m = m;
  A.s = s;
  A.r = r;
  A.data = std::move(data);
  A.corner = std::move(corner);
  A.corner_rows = corner_rows;
  A.corner_cols = corner_cols;
  return A;
}

// Per-row structural column walk, ascending.  Shared by to_dense and matvec
// so both use the same enumeration (and matvec's summation order is fixed).
template <typename F>
static void for_each_in_row(const StructuredMatrix& A, int i, F&& f) {
  switch (A.kind) {
    case Kind::Banded: {
      int j0 = std::max(0, i - A.s), j1 = std::min(A.n - 1, i + A.r);
      for (int j = j0; j <= j1; ++j) f(j, A.at(i, j));
      return;
    }
    case Kind::BlockTridiagonal: {
      int bi = i / A.m;
      int j0 = std::max(0, (bi - 1) * A.m), j1 = std::min(A.n, (bi + 2) * A.m);
      for (int j = j0; j < j1; ++j) f(j, A.at(i, j));
      return;
    }
    case Kind::Abd:
    case Kind::Babd: {
      int b = i / A.m;
      auto [c0, c1] = abd_span(A.n, A.m, A.s, A.r, b);
      for (int j = c0; j < c1; ++j) f(j, A.at(i, j));
      if (A.kind == Kind::Babd && i < A.corner_rows)
        for (int j = A.n - A.corner_cols; j < A.n; ++j) f(j, A.at(i, j));
      return;
    }
    case Kind::CirculantLike: {
      int cols[16];
      int cnt = 0;
      for (int d = -A.s; d <= A.r; ++d) {
        int j = i + d;
        if (j < 0) j += A.n;
        if (j >= A.n) j -= A.n;
        cols[cnt++] = j;
      }
      std::sort(cols, cols + cnt);
      for (int t = 0; t < cnt; ++t) f(cols[t], A.at(i, cols[t]));
      return;
    }
  }
}

DenseMatrix to_dense(const StructuredMatrix& A, int limit) {
  if (A.n > limit)
    fail(Errc::TooLargeForDense, "n = " + std::to_string(A.n) + " exceeds dense limit " +
                                     std::to_string(limit));
  DenseMatrix D(A.n, A.n);
  for (int i = 0; i < A.n; ++i)
    for_each_in_row(A, i, [&](int j, double v) { D.at(i, j) = v; });
  return D;
}

Vector matvec(const StructuredMatrix& A, const Vector& x) {
  if (int(x.size()) != A.n) fail(Errc::DimensionMismatch, "matvec length");
  Vector y(A.n, 0.0);
  for (int i = 0; i < A.n; ++i) {
    double acc = 0.0;
    for_each_in_row(A, i, [&](int j, double v) { acc += v * x[j]; });
    y[i] = acc;
  }
  return y;
}

std::pair<int, int> scalar_envelope(const StructuredMatrix& A) {
  switch (A.kind) {
    case Kind::Banded:
    case Kind::CirculantLike: return {A.s, A.r};
    case Kind::BlockTridiagonal: return {2 * A.m - 1, 2 * A.m - 1};
    case Kind::Abd:
    case Kind::Babd: return {A.m - 1 + A.s, A.m - 1 + A.r};
  }
  return {0, 0};
}

StructuredMatrix generate_random(Kind kind, int n, int m, int s, int r, std::uint64_t seed,
                                 double dominance) {
  if (dominance < 0) fail(Errc::InvalidParameter, "dominance must be >= 0");
  std::size_t count = body_entry_count(kind, n, m, s, r);
  SplitMix64 rng(seed);
  std::vector<double> data(count);
  for (auto& v : data) v = rng.next_unit();
  std::vector<double> corner;
  int cr = 0, cc = 0;
  if (kind == Kind::Babd) {
    cr = cc = m;
    corner.resize(std::size_t(m) * m);
    for (auto& v : corner) v = rng.next_unit();
  }
  StructuredMatrix A = make(kind, n, m, s, r, std::move(data), std::move(corner), cr, cc);
  if (dominance > 0.0) {
    for (int i = 0; i < n; ++i) {
      double off = 0.0;
      for_each_in_row(A, i, [&](int j, double v) {
        if (j != i) off += std::abs(v);
      });
      double mag = dominance * std::max(off, 1.0);
      double old = A.at(i, i);
      double val = old < 0 ? -mag : mag;
      // Write the diagonal entry back into the compact storage.
      switch (kind) {
        case Kind::Banded:
          A.data[band_offset(n, s, 0) + i] = val;
          break;
        case Kind::BlockTridiagonal: {
          int b = i / m;
          std::size_t offr = blocktri_row_offset(n / m, m, b);
          int blk = (b > 0 ? 1 : 0);
          A.data[offr + std::size_t(blk) * m * m + std::size_t(i - b * m) * m + (i - b * m)] = val;
          break;
        }
        case Kind::Abd:
        case Kind::Babd: {
          int b = i / m;
          auto [c0, c1] = abd_span(n, m, s, r, b);
          std::size_t offr = abd_row_offset(n, m, s, r, b);
          A.data[offr + std::size_t(i - b * m) * (c1 - c0) + (i - c0)] = val;
          break;
        }
        case Kind::CirculantLike:
          A.data[std::size_t(s) * n + i] = val;
          break;
      }
    }
  }
  return A;
}

}  // namespace parsol
