#pragma once

#include <vector>

#include "parsol/localfact.hpp"
#include "parsol/partition.hpp"

namespace parsol {

/// The reduced matrix T_p over the kept positions: block tridiagonal in the
/// no-corner case (order p-1), lower bidiagonal plus an upper-right corner
/// block otherwise (order p+1), enlarged by any adaptive extras.  Its size
/// depends on p (and the trigger count), never on n.
struct ReducedSystem {
  int q = 0;    ///< number of kept blocks
  int dim = 0;  ///< scalar dimension
  std::vector<int> block_sizes;
  std::vector<int> positions;  ///< global scalar index of each kept block
  std::vector<int> offsets;    ///< scalar offset of each block inside T
  DenseMatrix T;
  bool has_corner = false;
};

struct SolveStats {
  double factor_seconds = 0;
  double phase1_seconds = 0;
  double phase2_seconds = 0;
  double phase3_seconds = 0;
  long long reduced_ops = 0;  ///< multiply-accumulate count of phase 2
};

/// A = F T G held implicitly: the plan, the per-partition factorizations and
/// the assembled reduced system.  F, T, G are only ever materialized inside
/// test oracles.
struct ParallelFactorization {
  PartitionPlan plan;
  Strategy strategy = Strategy::Lu;
  std::vector<LocalFactorization> locals;
  ReducedSystem reduced;
  bool permuted = false;
  Permutation row_perm;  ///< applied to the rhs when permuted
  /// Per partition: reduced-dim scalar index of each kept slot
  /// (left separator, extras, right separator).
  std::vector<std::vector<int>> kept_maps;
  double factor_seconds = 0;
};

/// Factor A on p partitions.  Local factorizations run concurrently; the
/// reduced matrix is assembled from their separator contributions.
/// Circulant-like matrices with non-canonical corners are permuted first
/// and the permutation is recorded.
ParallelFactorization parallel_factor(const StructuredMatrix& A, int p, Strategy strategy,
                                      double tol = 1e-8);

/// Direct solve of the reduced system (sequential, one worker).
Vector solve_reduced(const ReducedSystem& R, const Vector& rhs, SolveStats* stats = nullptr);

/// Three-phase solve: parallel forward condense, sequential reduced solve,
/// parallel back-substitution.  Output is bit-identical for any worker count.
Vector solve(const ParallelFactorization& F, const Vector& f, SolveStats* stats = nullptr);

/// Relative residual ||A x - f||_inf / ||f||_inf.
double residual(const StructuredMatrix& A, const Vector& x, const Vector& f);

}  // namespace parsol
