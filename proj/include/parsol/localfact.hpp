#pragma once

#include <variant>
#include <vector>

#include "parsol/dense.hpp"
#include "parsol/partition.hpp"

namespace parsol {

enum class Strategy { Lu, Lud, CyclicReduction, Arce, LuPivot, Qr };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& s);
bool strategy_supports(Strategy s, Kind k, int bs, int br);

/// Per-partition factorization M^(i) = F_loc * T_loc * G_loc.
///
/// The outer factors are kept implicitly (banded factors, cyclic-reduction
/// levels, or recorded row/column operations); the middle factor's separator
/// contributions (alpha/beta/gamma and any adaptive extras) are extracted
/// densely for the reduced-system assembly.  Immutable after construction
/// and safe to move across workers.
struct LocalFactorization {
  struct Extra {
    int position;  ///< scalar position within the body
    double alpha;  ///< deferred pivot value entering the reduced system
  };

  Strategy strategy = Strategy::Lu;
  int L = 0;           ///< body size
  int k0 = 0, k1 = 0;  ///< adjacent separator sizes

  /// Fill-in / structured coupling vectors (empty for cyclic reduction,
  /// which absorbs them into its reduction levels):
  ///   z, w relate to the left separator (L x k0),
  ///   y, v to the right (L x k1).
  DenseMatrix v, w, y, z;

  DenseMatrix alpha1;  ///< k0 x k0 correction to the left separator diagonal
  DenseMatrix alpha2;  ///< k1 x k1, includes the a^(i) diagonal itself
  DenseMatrix beta;    ///< k1 x k0
  DenseMatrix gamma;   ///< k0 x k1
  std::vector<Extra> extras;
  /// Condensed coupling block over kept positions, ordered
  /// [left separator | extras by position | right separator].
  DenseMatrix kept;

  std::vector<int> row_perm, col_perm;  ///< pivot orders, when any
  int cr_levels = 0;                    ///< cyclic reduction level count

  int kept_dim() const { return k0 + int(extras.size()) + k1; }

  /// Phase-1 work: transform a body right-hand side and emit the kept
  /// position contributions (corrections to separator rhs entries plus the
  /// condensed values of adaptive extras).
  void condense(const Vector& f_body, Vector& ghat, Vector& kept_rhs) const;

  /// Phase-3 work: recover the body solution given the solved kept values.
  Vector backsolve(const Vector& ghat, const Vector& x_kept) const;

  /// Triangular applications with the outer factors, body only.
  Vector apply_N_inv(const Vector& rhs) const;
  Vector apply_S_inv(const Vector& rhs) const;

  /// Oracle materializations (dimension k0 + L + k1).  Only tests build
  /// these; the solver never forms F, T, G explicitly.
  DenseMatrix dense_F_loc() const;
  DenseMatrix dense_T_loc() const;
  DenseMatrix dense_G_loc() const;
  DenseMatrix dense_N() const;
  DenseMatrix dense_S() const;

  // --- internal cores -----------------------------------------------------

  /// No-pivot banded elimination (LU and LUD); scales to large bodies.
  struct BandedCore {
    int L = 0, es = 0, er = 0;
    bool unit_mid = false;              ///< LUD: S is diagonal, N = L*U'
    std::vector<double> fac;            ///< eliminated envelope, row-aligned
    std::vector<double> dvec;           ///< LUD diagonal
    double lent(int i, int d) const { return fac[std::size_t(i) * (es + 1 + er) + d]; }
  };

  /// Local cyclic reduction at block granularity g.
  struct CyclicCore {
    int g = 1, nb = 0;
    struct Elim {
      int j, lnb, rnb;
      DenseMatrix ml, mr;  // neighbour update multipliers
      DenseMatrix a, c;    // row j's final couplings
      DenseMatrix dinv;    // inverse of the final pivot block
    };
    std::vector<Elim> elims;
    std::vector<int> rem;    ///< remaining block rows (1 or 2)
    DenseMatrix d2;          ///< remaining block system and its inverse
    DenseMatrix d2inv;
    DenseMatrix cmat;        ///< rem -> separators coupling
    DenseMatrix rmat_d2inv;  ///< (sep rows x rem) elimination multipliers
  };

  /// Recorded-operation core for the dense desk-scale strategies
  /// (ARCE, LU with partial pivoting, QR).
  struct DenseCore {
    int dim = 0;
    DenseMatrix Lmat, Linv;  ///< accumulated left row actions and inverse
    DenseMatrix Wmid;        ///< condensed middle matrix
    DenseMatrix Rmat, Rinv;  ///< right column actions (ARCE only)
    bool has_right = false;
    std::vector<std::pair<int, int>> a_order;  ///< (row, col) pivot retirements
    std::vector<std::pair<int, int>> b_order;  ///< column-op retirements (ARCE)
    std::vector<int> kept_rows, kept_cols;     ///< frame indices in kept order
  };

  std::variant<std::monostate, BandedCore, CyclicCore, DenseCore> core;
};

LocalFactorization factor_lu(const PartitionBlock& M);
LocalFactorization factor_lud(const PartitionBlock& M);
LocalFactorization factor_cyclic_reduction(const PartitionBlock& M);
LocalFactorization factor_arce(const PartitionBlock& M);
LocalFactorization factor_lu_pivot(const PartitionBlock& M, double tol);
LocalFactorization factor_qr(const PartitionBlock& M, double tol);

LocalFactorization factor(Strategy s, const PartitionBlock& M, double tol = 1e-8);

}  // namespace parsol
