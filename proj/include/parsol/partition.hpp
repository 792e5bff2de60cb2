#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parsol/structmat.hpp"

namespace parsol {

/// Row permutation: out[i] = in[source[i]].
struct Permutation {
  std::vector<int> source;

  bool identity() const {
    for (int i = 0; i < int(source.size()); ++i)
      if (source[i] != i) return false;
    return true;
  }

  Vector apply(const Vector& v) const {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[source[i]];
    return out;
  }
};

/// The p-way partitioned view: p body ranges interleaved with small square
/// separator blocks.  Plans without a corner have p-1 interior separators;
/// plans with a corner have p+1 (the first and last block rows become
/// separators and the corner couples them).  Immutable once built.
struct PartitionPlan {
  Kind kind = Kind::Banded;
  int n = 0;
  int m = 1;
  int p = 0;
  int sep_size = 0;  ///< scalar size of each separator block
  bool has_corner = false;
  int corner_rows = 0, corner_cols = 0;
  std::vector<std::pair<int, int>> body_ranges;  ///< p scalar ranges [begin,end)
  std::vector<int> separator_starts;             ///< scalar start per separator

  int sep_count() const { return int(separator_starts.size()); }
  int body_size(int i) const { return body_ranges[i].second - body_ranges[i].first; }
};

/// One per-processor sub-matrix M^(i): interior body plus the coupling
/// slices to its adjacent separators.  The body is kept in a banded
/// envelope so local factorizations stay O(size * bandwidth^2).
struct PartitionBlock {
  int index = 0;  ///< 1-based partition number
  Kind kind = Kind::Banded;
  int m = 1, s = 0, r = 0;
  int L = 0;           ///< body scalar size
  int k0 = 0, k1 = 0;  ///< left/right separator sizes (0 when absent)
  int body_begin = 0;  ///< global scalar offset of the body

  int env_s = 0, env_r = 0;
  std::vector<double> env;  ///< L x (env_s+1+env_r), diagonal-aligned rows

  DenseMatrix b0, c0;  ///< L x k0 couplings to the left separator
  DenseMatrix b1, c1;  ///< L x k1 couplings to the right separator
  DenseMatrix a_left, a_right;
  DenseMatrix corner_slice;  ///< populated for index 1 of corner plans

  double body_at(int i, int j) const {
    int off = j - i + env_s;
    if (off < 0 || off > env_s + env_r) return 0.0;
    return env[std::size_t(i) * (env_s + 1 + env_r) + off];
  }
  double& body_ref(int i, int j) { return env[std::size_t(i) * (env_s + 1 + env_r) + (j - i + env_s)]; }

  DenseMatrix body_dense() const;
  /// Full local M^(i) as dense (k0 + L + k1 square); oracle/test helper.
  DenseMatrix local_dense() const;
};

/// Partition A into p pieces with separators "as small as possible" for the
/// kind: max(s,r) rows for banded, one block for block tridiagonal, one
/// block row for ABD/BABD.  Bodies are as equal as possible; the remainder
/// goes to the leading partitions.
PartitionPlan plan_partition(const StructuredMatrix& A, int p);

/// Extract M^(i), 1 <= i <= p.
PartitionBlock extract_block(const StructuredMatrix& A, const PartitionPlan& plan, int i);

/// Move all corner content to the upper-right by a row permutation.
/// Returns the rearranged matrix and P with to_dense(out) = P * to_dense(A).
/// Already-canonical inputs come back unchanged with the identity.
std::pair<StructuredMatrix, Permutation> permute_corner(const StructuredMatrix& A);

std::string describe(const PartitionPlan& plan);

}  // namespace parsol
