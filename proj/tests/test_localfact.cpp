#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "parsol/localfact.hpp"

using namespace parsol;

namespace {

// Middle partition of a 3-way split: has both separators.
PartitionBlock middle_block(const StructuredMatrix& A) {
  PartitionPlan plan = plan_partition(A, 3);
  return extract_block(A, plan, 2);
}

PartitionBlock block_from_dense(Kind kind, int m, int s, int r, const DenseMatrix& body,
                                const DenseMatrix& b0, const DenseMatrix& c0,
                                const DenseMatrix& b1, const DenseMatrix& c1,
                                const DenseMatrix& a_right) {
  PartitionBlock blk;
  blk.index = 2;
  blk.kind = kind;
  blk.m = m;
  blk.s = s;
  blk.r = r;
  blk.L = body.rows;
  blk.k0 = b0.cols;
  blk.k1 = b1.cols;
  blk.env_s = blk.L - 1;
  blk.env_r = blk.L - 1;
  blk.env.assign(std::size_t(blk.L) * (2 * blk.L - 1), 0.0);
  for (int i = 0; i < blk.L; ++i)
    for (int j = 0; j < blk.L; ++j) blk.body_ref(i, j) = body.at(i, j);
  blk.b0 = b0;
  blk.c0 = c0;
  blk.b1 = b1;
  blk.c1 = c1;
  blk.a_right = a_right;
  return blk;
}

double reconstruction_error(const PartitionBlock& blk, const LocalFactorization& lf) {
  DenseMatrix M = blk.local_dense();
  DenseMatrix R = matmul(matmul(lf.dense_F_loc(), lf.dense_T_loc()), lf.dense_G_loc());
  return oracles::rel_err(R, M);
}

DenseMatrix toeplitz_body(int L) {
  DenseMatrix B(L, L);
  for (int i = 0; i < L; ++i) {
    B.at(i, i) = 2;
    if (i > 0) B.at(i, i - 1) = -1;
    if (i + 1 < L) B.at(i, i + 1) = -1;
  }
  return B;
}

}  // namespace

TEST_CASE("factor_lu on an identity body is trivial") {
  DenseMatrix I4 = DenseMatrix::identity(4);
  DenseMatrix zero(4, 1);
  PartitionBlock blk = block_from_dense(Kind::Banded, 1, 1, 1, I4, zero, zero, zero, zero,
                                        DenseMatrix::identity(1));
  LocalFactorization lf = factor_lu(blk);
  CHECK(oracles::rel_err(lf.dense_N(), I4) == 0.0);
  CHECK(oracles::rel_err(lf.dense_S(), I4) == 0.0);
  for (double v : lf.z.a) CHECK(v == 0.0);
  for (double v : lf.w.a) CHECK(v == 0.0);
  CHECK(lf.alpha1.at(0, 0) == 0.0);
  CHECK(lf.alpha2.at(0, 0) == 1.0);  // carries the separator diagonal
  CHECK(reconstruction_error(blk, lf) == 0.0);
}

TEST_CASE("factor_lu reconstructs a coupled Toeplitz block") {
  DenseMatrix body = toeplitz_body(4);
  DenseMatrix b0(4, 1), c0(4, 1), b1(4, 1), c1(4, 1), ar(1, 1);
  b0.at(0, 0) = 1;
  c0.at(0, 0) = 1;
  b1.at(3, 0) = 1;
  c1.at(3, 0) = 1;
  ar.at(0, 0) = 2;
  PartitionBlock blk = block_from_dense(Kind::Banded, 1, 1, 1, body, b0, c0, b1, c1, ar);
  LocalFactorization lf = factor_lu(blk);
  CHECK(reconstruction_error(blk, lf) < 1e-12);
  // z spreads below the band: fill-in.
  bool fill = false;
  for (int x = 1; x < 4; ++x)
    if (lf.z.at(x, 0) != 0.0) fill = true;
  CHECK(fill);
}

TEST_CASE("lu sparsity contract: v,y structured, w,z fill") {
  StructuredMatrix A = generate_random(Kind::Banded, 34, 1, 2, 3, 51, 2.0);
  PartitionBlock blk = middle_block(A);
  LocalFactorization lf = factor_lu(blk);
  CHECK(reconstruction_error(blk, lf) < 1e-12);
  const int L = blk.L, k = blk.k1;
  for (int t = 0; t < k; ++t)
    for (int x = 0; x < L; ++x) {
      if (x < L + t - A.r) CHECK(lf.y.at(x, t) == 0.0);
      if (x < L + t - A.s) CHECK(lf.v.at(x, t) == 0.0);
    }
  // Fill-in extends beyond the head couplings.
  bool zfill = false, wfill = false;
  for (int t = 0; t < blk.k0; ++t)
    for (int x = A.s; x < L; ++x) {
      if (lf.z.at(x, t) != 0.0) zfill = true;
      if (lf.w.at(x, t) != 0.0) wfill = true;
    }
  CHECK(zfill);
  CHECK(wfill);
}

TEST_CASE("factor_lud gives a diagonal middle factor") {
  DenseMatrix body(2, 2);
  body.at(0, 0) = 2;
  body.at(1, 1) = 4;
  DenseMatrix zero(2, 1);
  PartitionBlock blk = block_from_dense(Kind::Banded, 1, 1, 1, body, zero, zero, zero, zero,
                                        DenseMatrix::identity(1));
  LocalFactorization lf = factor_lud(blk);
  DenseMatrix S = lf.dense_S();
  CHECK(S.at(0, 0) == 2.0);
  CHECK(S.at(1, 1) == 4.0);
  CHECK(S.at(0, 1) == 0.0);
  CHECK(oracles::rel_err(lf.dense_N(), DenseMatrix::identity(2)) == 0.0);

  StructuredMatrix A = generate_random(Kind::Banded, 30, 1, 1, 1, 52, 2.0);
  PartitionBlock mb = middle_block(A);
  LocalFactorization lf2 = factor_lud(mb);
  CHECK(reconstruction_error(mb, lf2) < 1e-12);
  // LUD contract: v, w keep the coupling masks; y, z are fill-in.
  for (int t = 0; t < mb.k1; ++t)
    for (int x = 0; x < mb.L; ++x)
      if (mb.b1.at(x, t) == 0.0) CHECK(lf2.v.at(x, t) == 0.0);
  for (int t = 0; t < mb.k0; ++t)
    for (int x = 0; x < mb.L; ++x)
      if (mb.c0.at(x, t) == 0.0) CHECK(lf2.w.at(x, t) == 0.0);
  bool yfill = false;
  for (int x = 0; x < mb.L - 2; ++x)
    if (lf2.y.at(x, 0) != 0.0) yfill = true;
  CHECK(yfill);
}

TEST_CASE("cyclic reduction levels and equivalence with lu") {
  // Degenerate body of one row: no reduction levels.
  StructuredMatrix small = generate_random(Kind::Banded, 5, 1, 1, 1, 3, 2.0);
  PartitionPlan psmall = plan_partition(small, 2);
  PartitionBlock bsmall = extract_block(small, psmall, 1);
  REQUIRE(bsmall.L <= 2);

  StructuredMatrix A = generate_random(Kind::Banded, 23, 1, 1, 1, 53, 2.0);
  PartitionBlock blk = middle_block(A);
  REQUIRE(blk.L == 7);
  LocalFactorization cr = factor_cyclic_reduction(blk);
  CHECK(cr.cr_levels == 3);  // ceil(log2(7))
  CHECK(reconstruction_error(blk, cr) < 1e-12);
  // No stored fill-in vectors.
  CHECK(cr.v.rows == 0);
  CHECK(cr.w.rows == 0);
  CHECK(cr.y.rows == 0);
  CHECK(cr.z.rows == 0);

  LocalFactorization lu = factor_lu(blk);
  CHECK(oracles::rel_err(cr.alpha1, lu.alpha1) < 1e-10);
  CHECK(oracles::rel_err(cr.alpha2, lu.alpha2) < 1e-10);
  CHECK(oracles::rel_err(cr.beta, lu.beta) < 1e-10);
  CHECK(oracles::rel_err(cr.gamma, lu.gamma) < 1e-10);

  LocalFactorization lud = factor_lud(blk);
  CHECK(oracles::rel_err(lud.alpha2, lu.alpha2) < 1e-10);
  CHECK(oracles::rel_err(lud.beta, lu.beta) < 1e-10);

  // Body of size 1: zero levels, direct contributions.
  StructuredMatrix tiny = generate_random(Kind::Banded, 7, 1, 1, 1, 54, 2.0);
  PartitionPlan pt = plan_partition(tiny, 3);
  PartitionBlock bt = extract_block(tiny, pt, 3);
  REQUIRE(bt.L == 1);
  LocalFactorization crt = factor_cyclic_reduction(bt);
  CHECK(crt.cr_levels == 0);
  CHECK(reconstruction_error(bt, crt) < 1e-12);

  CHECK_THROWS_AS(factor_cyclic_reduction(middle_block(generate_random(Kind::Banded, 30, 1, 2, 1, 5, 2.0))),
                  Error);
}

TEST_CASE("block cyclic reduction matches lu on block tridiagonal bodies") {
  StructuredMatrix A = generate_random(Kind::BlockTridiagonal, 36, 3, 1, 1, 55, 2.0);
  PartitionBlock blk = middle_block(A);
  LocalFactorization cr = factor_cyclic_reduction(blk);
  LocalFactorization lu = factor_lu(blk);
  CHECK(reconstruction_error(blk, cr) < 1e-12);
  CHECK(oracles::rel_err(cr.alpha2, lu.alpha2) < 1e-10);
  CHECK(oracles::rel_err(cr.gamma, lu.gamma) < 1e-10);
}

TEST_CASE("arce reconstructs ABD bodies and keeps the block contracts") {
  // Block-diagonal body (all couplings and overlaps zero): the elimination
  // never crosses blocks and the fill-in vectors stay empty.
  {
    const int m = 2, G = 3, L = m * G;
    DenseMatrix body(L, L);
    SplitMix64 rng(99);
    for (int g = 0; g < G; ++g)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          body.at(g * m + i, g * m + j) = rng.next_unit() + (i == j ? 4.0 : 0.0);
    DenseMatrix zero(L, m);
    PartitionBlock blk = block_from_dense(Kind::Abd, m, 1, 1, body, zero, zero, zero, zero,
                                          DenseMatrix::identity(m));
    LocalFactorization lf = factor_arce(blk);
    CHECK(reconstruction_error(blk, lf) < 1e-12);
    CHECK(lf.extras.empty());
    for (double v : lf.z.a) CHECK(v == 0.0);
    for (double v : lf.w.a) CHECK(v == 0.0);
  }

  StructuredMatrix A = generate_random(Kind::Abd, 64, 2, 1, 1, 57, 2.0);
  PartitionBlock blk = middle_block(A);
  REQUIRE(blk.L >= 8);
  LocalFactorization lf = factor_arce(blk);
  CHECK(reconstruction_error(blk, lf) < 1e-12);

  const int m = A.m, L = blk.L;
  const int G = L / m;
  // z confined to the leading block row, y to the trailing block row plus
  // its carried rows; w and v spread (fill-in).
  for (int t = 0; t < blk.k0; ++t)
    for (int x = m; x < L; ++x) CHECK(lf.z.at(x, t) == 0.0);
  for (int t = 0; t < blk.k1; ++t)
    for (int x = 0; x < (G - 1) * m - A.s; ++x) CHECK(lf.y.at(x, t) == 0.0);
  bool vfill = false, wfill = false;
  for (int t = 0; t < blk.k1; ++t)
    for (int x = 0; x < L - m - A.s; ++x)
      if (lf.v.at(x, t) != 0.0) vfill = true;
  for (int t = 0; t < blk.k0; ++t)
    for (int x = m; x < L; ++x)
      if (lf.w.at(x, t) != 0.0) wfill = true;
  CHECK(vfill);
  CHECK(wfill);

  // Pivot growth stays finite on a dominant instance.
  for (double v : lf.kept.a) CHECK(std::isfinite(v));

  CHECK_THROWS_AS(factor_arce(middle_block(generate_random(Kind::Banded, 30, 1, 1, 1, 5, 2.0))),
                  Error);
}

TEST_CASE("arce handles BABD bodies") {
  StructuredMatrix A = generate_random(Kind::Babd, 60, 3, 2, 1, 58, 2.0);
  PartitionPlan plan = plan_partition(A, 3);
  for (int i = 1; i <= 3; ++i) {
    PartitionBlock blk = extract_block(A, plan, i);
    LocalFactorization lf = factor_arce(blk);
    CHECK(reconstruction_error(blk, lf) < 1e-12);
  }
}

TEST_CASE("lu with partial pivoting matches plain lu when no trigger fires") {
  StructuredMatrix A = generate_random(Kind::Banded, 34, 1, 1, 2, 59, 2.0);
  PartitionBlock blk = middle_block(A);
  LocalFactorization piv = factor_lu_pivot(blk, 1e-8);
  LocalFactorization lu = factor_lu(blk);
  CHECK(piv.extras.empty());
  CHECK(reconstruction_error(blk, piv) < 1e-12);
  CHECK(oracles::rel_err(piv.alpha1, lu.alpha1) < 1e-10);
  CHECK(oracles::rel_err(piv.alpha2, lu.alpha2) < 1e-10);
  CHECK(oracles::rel_err(piv.beta, lu.beta) < 1e-10);
  CHECK(oracles::rel_err(piv.gamma, lu.gamma) < 1e-10);
}

TEST_CASE("an exactly singular leading minor defers one pivot") {
  // Tridiagonal body crafted so the second pivot column vanishes: the
  // update of d1 hits zero and the sub-diagonal below is already zero.
  DenseMatrix body(5, 5);
  body.at(0, 0) = 2;
  body.at(0, 1) = 1;
  body.at(1, 0) = 1;
  body.at(1, 1) = 0.5;  // 0.5 - (1/2)*1 = 0 after the first elimination
  body.at(1, 2) = 1;
  body.at(2, 1) = 0;  // break the chain below
  body.at(2, 2) = 3;
  body.at(2, 3) = 1;
  body.at(3, 2) = 1;
  body.at(3, 3) = 3;
  body.at(3, 4) = 1;
  body.at(4, 3) = 1;
  body.at(4, 4) = 3;
  DenseMatrix b0(5, 1), c0(5, 1), b1(5, 1), c1(5, 1), ar(1, 1);
  b0.at(0, 0) = 1;
  c0.at(0, 0) = 1;
  b1.at(4, 0) = 1;
  c1.at(4, 0) = 1;
  ar.at(0, 0) = 3;
  PartitionBlock blk = block_from_dense(Kind::Banded, 1, 1, 1, body, b0, c0, b1, c1, ar);
  // Rank check: the leading 2x2 minor is singular by construction.
  CHECK(std::abs(body.at(0, 0) * body.at(1, 1) - body.at(0, 1) * body.at(1, 0)) == 0.0);

  LocalFactorization lf = factor_lu_pivot(blk, 1e-8);
  REQUIRE(lf.extras.size() == 1);
  CHECK(lf.extras[0].position == 1);
  CHECK(lf.kept_dim() == 3);
  CHECK(reconstruction_error(blk, lf) < 1e-12);

  LocalFactorization qf = factor_qr(blk, 1e-8);
  REQUIRE(qf.extras.size() == 1);
  CHECK(reconstruction_error(blk, qf) < 1e-12);
}

TEST_CASE("qr factorization: orthogonality and sparsity") {
  DenseMatrix I3 = DenseMatrix::identity(3);
  DenseMatrix zero(3, 1);
  PartitionBlock iblk = block_from_dense(Kind::Banded, 1, 1, 1, I3, zero, zero, zero, zero,
                                         DenseMatrix::identity(1));
  LocalFactorization ilf = factor_qr(iblk, 1e-8);
  DenseMatrix Q = ilf.dense_N();
  DenseMatrix R = ilf.dense_S();
  // Householder of e1 flips the sign; Q and R are diagonal +-1 pairs.
  CHECK(oracles::rel_err(matmul(Q, R), I3) < 1e-14);

  StructuredMatrix A = generate_random(Kind::Banded, 34, 1, 2, 1, 60, 2.0);
  PartitionBlock blk = middle_block(A);
  LocalFactorization lf = factor_qr(blk, 1e-8);
  CHECK(reconstruction_error(blk, lf) < 1e-12);
  Q = lf.dense_N();
  DenseMatrix QtQ = matmul(transpose(Q), Q);
  CHECK(oracles::rel_err(QtQ, DenseMatrix::identity(blk.L)) < 1e-12);
  // R upper triangular.
  DenseMatrix S = lf.dense_S();
  for (int i = 0; i < blk.L; ++i)
    for (int j = 0; j < i; ++j) CHECK(std::abs(S.at(i, j)) < 1e-13);
  // v keeps the b1 mask closure; y stays within the reflector reach of c1.
  for (int t = 0; t < blk.k1; ++t)
    for (int x = 0; x < blk.L; ++x) {
      if (x < blk.L + t - A.s) CHECK(lf.v.at(x, t) == 0.0);
      if (x < blk.L + t - A.r - A.s) CHECK(std::abs(lf.y.at(x, t)) < 1e-13);
    }
}

TEST_CASE("apply_N_inv and apply_S_inv compose to the body inverse") {
  StructuredMatrix A = generate_random(Kind::Banded, 31, 1, 2, 2, 61, 2.0);
  PartitionBlock blk = middle_block(A);
  Vector rhs = oracles::random_vector(blk.L, 9);
  DenseMatrix body = blk.body_dense();
  Vector want = lu_solve(body, rhs);

  for (Strategy s : {Strategy::Lu, Strategy::Lud, Strategy::LuPivot, Strategy::Qr}) {
    LocalFactorization lf = factor(s, blk, 1e-8);
    Vector got = lf.apply_S_inv(lf.apply_N_inv(rhs));
    CHECK(oracles::rel_err(got, want) < 1e-10);
  }
  StructuredMatrix T = generate_random(Kind::Banded, 31, 1, 1, 1, 62, 2.0);
  PartitionBlock tb = middle_block(T);
  LocalFactorization cr = factor_cyclic_reduction(tb);
  Vector rhs2 = oracles::random_vector(tb.L, 10);
  Vector got = cr.apply_S_inv(cr.apply_N_inv(rhs2));
  CHECK(oracles::rel_err(got, lu_solve(tb.body_dense(), rhs2)) < 1e-10);

  // QR: N is orthogonal, N * N^{-1} rhs == rhs.
  LocalFactorization qf = factor_qr(blk, 1e-8);
  DenseMatrix Q = qf.dense_N();
  Vector qinv = qf.apply_N_inv(rhs);
  Vector back = matvec(Q, qinv);
  CHECK(oracles::rel_err(back, rhs) < 1e-12);
}

TEST_CASE("zero pivot reports ZeroPivot for the no-pivot strategies") {
  DenseMatrix body(2, 2);
  body.at(0, 1) = 1;
  body.at(1, 0) = 1;
  DenseMatrix zero(2, 1);
  PartitionBlock blk = block_from_dense(Kind::Banded, 1, 1, 1, body, zero, zero, zero, zero,
                                        DenseMatrix::identity(1));
  try {
    factor_lu(blk);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroPivot);
  }
  // The pivoting strategy handles the same body.
  LocalFactorization piv = factor_lu_pivot(blk, 1e-10);
  CHECK(reconstruction_error(blk, piv) < 1e-12);
}
