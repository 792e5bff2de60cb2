#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "parsol/partition.hpp"

using namespace parsol;

namespace {

StructuredMatrix toeplitz(int n) {
  std::vector<double> data;
  for (int i = 0; i < n - 1; ++i) data.push_back(-1);
  for (int i = 0; i < n; ++i) data.push_back(2);
  for (int i = 0; i < n - 1; ++i) data.push_back(-1);
  return make(Kind::Banded, n, 1, 1, 1, std::move(data));
}

}  // namespace

TEST_CASE("plan shapes follow the separator rules") {
  StructuredMatrix T9 = toeplitz(9);
  PartitionPlan plan = plan_partition(T9, 2);
  CHECK(plan.sep_size == 1);
  CHECK(plan.body_size(0) == 4);
  CHECK(plan.body_size(1) == 4);
  REQUIRE(plan.sep_count() == 1);
  CHECK(plan.separator_starts[0] == 4);  // 1-based index 5

  StructuredMatrix B = generate_random(Kind::Banded, 20, 1, 2, 1, 3, 2.0);
  CHECK(plan_partition(B, 3).sep_size == 2);  // max(s, r)

  StructuredMatrix BB = generate_random(Kind::Babd, 24, 2, 1, 1, 3, 2.0);
  PartitionPlan pb = plan_partition(BB, 3);
  CHECK(pb.has_corner);
  CHECK(pb.sep_count() == 4);  // a(0..3)
  CHECK(pb.sep_size == 2);
}

TEST_CASE("plans tile the index range exactly") {
  struct Case {
    Kind k;
    int n, m, s, r, p;
  };
  for (Case c : {Case{Kind::Banded, 37, 1, 2, 3, 4}, Case{Kind::BlockTridiagonal, 36, 3, 1, 1, 3},
                 Case{Kind::Abd, 40, 4, 2, 2, 3}, Case{Kind::Babd, 44, 2, 1, 1, 4},
                 Case{Kind::CirculantLike, 41, 1, 3, 0, 3}}) {
    StructuredMatrix A = generate_random(c.k, c.n, c.m, c.s, c.r, 11, 2.0);
    PartitionPlan plan = plan_partition(A, c.p);
    std::vector<std::pair<int, int>> spans;
    for (auto [b, e] : plan.body_ranges) spans.emplace_back(b, e);
    for (int s0 : plan.separator_starts) spans.emplace_back(s0, s0 + plan.sep_size);
    std::sort(spans.begin(), spans.end());
    int cursor = 0;
    for (auto [b, e] : spans) {
      CHECK(b == cursor);
      cursor = e;
    }
    CHECK(cursor == c.n);
  }
}

TEST_CASE("extract_block reproduces the dense sub-matrices") {
  struct Case {
    Kind k;
    int n, m, s, r, p;
  };
  for (Case c : {Case{Kind::Banded, 23, 1, 2, 1, 3}, Case{Kind::BlockTridiagonal, 24, 2, 1, 1, 3},
                 Case{Kind::Abd, 36, 3, 1, 2, 3}, Case{Kind::Babd, 36, 2, 1, 1, 3},
                 Case{Kind::CirculantLike, 25, 1, 2, 0, 3}}) {
    StructuredMatrix A = generate_random(c.k, c.n, c.m, c.s, c.r, 21, 2.0);
    DenseMatrix D = to_dense(A);
    PartitionPlan plan = plan_partition(A, c.p);
    for (int i = 1; i <= c.p; ++i) {
      PartitionBlock blk = extract_block(A, plan, i);
      auto [b, e] = plan.body_ranges[i - 1];
      for (int x = 0; x < blk.L; ++x)
        for (int yy = 0; yy < blk.L; ++yy) CHECK(blk.body_at(x, yy) == D.at(b + x, b + yy));
      int ls = blk.k0 ? plan.separator_starts[plan.has_corner ? i - 1 : i - 2] : -1;
      int rs = blk.k1 ? plan.separator_starts[plan.has_corner ? i : i - 1] : -1;
      for (int x = 0; x < blk.L; ++x) {
        for (int t = 0; t < blk.k0; ++t) {
          CHECK(blk.b0.at(x, t) == D.at(b + x, ls + t));
          CHECK(blk.c0.at(x, t) == D.at(ls + t, b + x));
        }
        for (int t = 0; t < blk.k1; ++t) {
          CHECK(blk.c1.at(x, t) == D.at(b + x, rs + t));
          CHECK(blk.b1.at(x, t) == D.at(rs + t, b + x));
        }
      }
    }
  }
}

TEST_CASE("identity matrix extracts identity bodies with zero couplings") {
  std::vector<double> data;
  for (int d = 0; d < 11 - 1; ++d) data.push_back(0);
  for (int d = 0; d < 11; ++d) data.push_back(1);
  for (int d = 0; d < 11 - 1; ++d) data.push_back(0);
  StructuredMatrix I = make(Kind::Banded, 11, 1, 1, 1, std::move(data));
  PartitionPlan plan = plan_partition(I, 3);
  for (int i = 1; i <= 3; ++i) {
    PartitionBlock blk = extract_block(I, plan, i);
    for (int x = 0; x < blk.L; ++x)
      for (int yx = 0; yx < blk.L; ++yx) CHECK(blk.body_at(x, yx) == (x == yx ? 1.0 : 0.0));
    for (double v : blk.b0.a) CHECK(v == 0.0);
    for (double v : blk.c1.a) CHECK(v == 0.0);
  }
}

TEST_CASE("Toeplitz boundary couplings touch only the facing row") {
  StructuredMatrix T9 = toeplitz(9);
  PartitionPlan plan = plan_partition(T9, 2);
  PartitionBlock blk = extract_block(T9, plan, 1);
  CHECK(blk.k0 == 0);
  REQUIRE(blk.k1 == 1);
  for (int x = 0; x < blk.L; ++x) {
    CHECK(blk.c1.at(x, 0) == (x == blk.L - 1 ? -1.0 : 0.0));
    CHECK(blk.b1.at(x, 0) == (x == blk.L - 1 ? -1.0 : 0.0));
  }
}

TEST_CASE("BABD partition 1 carries the corner slice") {
  StructuredMatrix A = generate_random(Kind::Babd, 36, 2, 1, 1, 5, 2.0);
  DenseMatrix D = to_dense(A);
  PartitionPlan plan = plan_partition(A, 3);
  PartitionBlock blk = extract_block(A, plan, 1);
  CHECK(blk.k0 == 2);
  REQUIRE(!blk.corner_slice.empty());
  int sp = plan.separator_starts.back();
  for (int t = 0; t < plan.sep_size; ++t)
    for (int u = 0; u < plan.sep_size; ++u) CHECK(blk.corner_slice.at(t, u) == D.at(t, sp + u));
}

TEST_CASE("reassembling the blocks rebuilds the dense matrix") {
  struct Case {
    Kind k;
    int n, m, s, r, p;
  };
  for (Case c : {Case{Kind::Banded, 29, 1, 1, 2, 3}, Case{Kind::Babd, 30, 3, 2, 1, 2},
                 Case{Kind::Abd, 30, 2, 1, 1, 3}}) {
    StructuredMatrix A = generate_random(c.k, c.n, c.m, c.s, c.r, 31, 2.0);
    DenseMatrix D = to_dense(A);
    DenseMatrix R(c.n, c.n);
    PartitionPlan plan = plan_partition(A, c.p);
    for (int s0 : plan.separator_starts)
      for (int t = 0; t < plan.sep_size; ++t)
        for (int u = 0; u < plan.sep_size; ++u) R.at(s0 + t, s0 + u) = D.at(s0 + t, s0 + u);
    for (int i = 1; i <= c.p; ++i) {
      PartitionBlock blk = extract_block(A, plan, i);
      auto [b, e] = plan.body_ranges[i - 1];
      (void)e;
      int ls = blk.k0 ? plan.separator_starts[plan.has_corner ? i - 1 : i - 2] : -1;
      int rs = blk.k1 ? plan.separator_starts[plan.has_corner ? i : i - 1] : -1;
      for (int x = 0; x < blk.L; ++x) {
        for (int yx = 0; yx < blk.L; ++yx) R.at(b + x, b + yx) = blk.body_at(x, yx);
        for (int t = 0; t < blk.k0; ++t) {
          R.at(b + x, ls + t) = blk.b0.at(x, t);
          R.at(ls + t, b + x) = blk.c0.at(x, t);
        }
        for (int t = 0; t < blk.k1; ++t) {
          R.at(b + x, rs + t) = blk.c1.at(x, t);
          R.at(rs + t, b + x) = blk.b1.at(x, t);
        }
      }
      if (i == 1 && plan.has_corner) {
        int s0 = plan.separator_starts.front(), sp = plan.separator_starts.back();
        for (int t = 0; t < plan.sep_size; ++t)
          for (int u = 0; u < plan.sep_size; ++u) R.at(s0 + t, sp + u) = blk.corner_slice.at(t, u);
      }
    }
    CHECK(oracles::rel_err(R, D) == 0.0);
  }
}

TEST_CASE("permute_corner rotates circulant wrap content to the upper-right") {
  // Super-diagonal wrap only: all corner content starts in the lower-left.
  StructuredMatrix A = generate_random(Kind::CirculantLike, 12, 1, 0, 2, 9, 2.0);
  CHECK(!A.corner_canonical());
  CHECK_THROWS_AS(plan_partition(A, 2), Error);

  auto [B, P] = permute_corner(A);
  CHECK(B.corner_canonical());
  CHECK(B.s == 2);
  CHECK(B.r == 0);
  DenseMatrix DA = to_dense(A), DB = to_dense(B);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) CHECK(DB.at(i, j) == DA.at(P.source[i], j));
  // Corner content confined to the upper-right block.
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (DB.at(i, j) != 0.0) CHECK((i - j <= B.s || (i < B.s && j >= A.n - B.s)));

  // Solving the permuted system solves the original.
  Vector f = oracles::random_vector(A.n, 17);
  Vector x = lu_solve(DB, P.apply(f));
  Vector xo = lu_solve(DA, f);
  CHECK(oracles::rel_err(x, xo) < 1e-12);

  StructuredMatrix C = generate_random(Kind::Babd, 12, 2, 1, 1, 2, 2.0);
  auto [C2, P2] = permute_corner(C);
  CHECK(P2.identity());
  CHECK(C2 == C);
}

TEST_CASE("partition errors") {
  StructuredMatrix T9 = toeplitz(9);
  CHECK_THROWS_AS(plan_partition(T9, 20), Error);
  PartitionPlan plan = plan_partition(T9, 2);
  CHECK_THROWS_AS(extract_block(T9, plan, 0), Error);
  CHECK_THROWS_AS(extract_block(T9, plan, 3), Error);
  CHECK_THROWS_AS(permute_corner(T9), Error);
}
