#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parsol/dense.hpp"

namespace parsol {

enum class Kind { Banded, BlockTridiagonal, Abd, Babd, CirculantLike };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& s);

/// Sparse structured matrix: one of five kinds, stored compactly.
///
/// Layouts (all entries are doubles, one logical band/block at a time):
///  - Banded (m=1): bands in offset order d = -s..r, band d holds the
///    n-|d| entries of diagonal d, top to bottom.
///  - BlockTridiagonal: per block row b the m*m blocks [sub|diag|super],
///    each row-major; sub absent for b=0, super absent for the last row.
///  - Abd: block rows of height m whose column span is
///    [b*m - s, b*m + m - 1 + r] clipped to the matrix, stored row-major at
///    the clipped width.  Requires s + r = m (two-block column overlap).
///  - Babd: Abd layout plus a corner block in the upper-right,
///    corner_rows x corner_cols, row-major, corner entries stored last.
///  - CirculantLike (m=1): cyclically wrapped bands, each of full length n
///    (entry i of band d is A[i][(i+d) mod n]); the corner content is the
///    wrapped part of the bands.
///
/// Immutable after construction; safe to share read-only across workers.
struct StructuredMatrix {
  Kind kind = Kind::Banded;
  int n = 0;  ///< matrix dimension
  int m = 1;  ///< block size (1 for scalar kinds)
  int s = 0;  ///< lower (block) bandwidth / left overlap
  int r = 0;  ///< upper (block) bandwidth / right overlap
  std::vector<double> data;
  int corner_rows = 0;
  int corner_cols = 0;
  std::vector<double> corner;  ///< Babd only; row-major

  int block_count() const { return m > 0 ? n / m : 0; }

  /// Structural read access; returns 0.0 outside the pattern.
  double at(int i, int j) const;
  bool in_structure(int i, int j) const;

  /// True when all corner content (if any) sits in the upper-right, i.e.
  /// the matrix is already in the partitioned form with a right-upper b.
  bool corner_canonical() const;

  bool operator==(const StructuredMatrix&) const = default;
};

/// Validating constructor.  `data` length must match the kind's layout.
StructuredMatrix make(Kind kind, int n, int m, int s, int r, std::vector<double> data,
                      std::vector<double> corner = {}, int corner_rows = 0, int corner_cols = 0);

/// Expected number of stored body entries for the given shape.
std::size_t body_entry_count(Kind kind, int n, int m, int s, int r);

/// Dense image; zeros outside the structure.  Guarded by a size limit.
DenseMatrix to_dense(const StructuredMatrix& A, int limit = 2048);

/// y = A*x with a fixed summation order (ascending column within each row).
Vector matvec(const StructuredMatrix& A, const Vector& x);

/// Deterministic random instance.  dominance > 0 rescales each diagonal
/// entry to dominance * (row off-diagonal absolute sum), making the matrix
/// strictly row diagonally dominant for dominance > 1.
StructuredMatrix generate_random(Kind kind, int n, int m, int s, int r, std::uint64_t seed,
                                 double dominance);

/// Scalar banded envelope (lower, upper) that contains the kind's body
/// pattern away from any corner.
std::pair<int, int> scalar_envelope(const StructuredMatrix& A);

}  // namespace parsol
