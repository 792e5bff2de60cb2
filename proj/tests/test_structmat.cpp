#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "parsol/io.hpp"
#include "parsol/structmat.hpp"

using namespace parsol;

TEST_CASE("banded identity and Toeplitz layout") {
  StructuredMatrix I3 = make(Kind::Banded, 3, 1, 0, 0, {1, 1, 1});
  DenseMatrix D = to_dense(I3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(D.at(i, j) == (i == j ? 1.0 : 0.0));

  StructuredMatrix T = make(Kind::Banded, 3, 1, 1, 1, {-1, -1, 2, 2, 2, -1, -1});
  DenseMatrix TD = to_dense(T);
  double want[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(TD.at(i, j) == want[i][j]);
}

TEST_CASE("BABD corner placement against hand-placed dense layout") {
  int n = 8, m = 2;
  std::vector<double> body(body_entry_count(Kind::Babd, n, m, 1, 1), 0.0);
  std::vector<double> ones(4, 1.0);
  StructuredMatrix A = make(Kind::Babd, n, m, 1, 1, body, ones, 2, 2);
  DenseMatrix D = to_dense(A);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool corner = i < 2 && j >= 6;
      CHECK(D.at(i, j) == (corner ? 1.0 : 0.0));
    }
}

TEST_CASE("random instances only populate the structural mask") {
  struct Case {
    Kind k;
    int n, m, s, r;
  };
  for (Case c : {Case{Kind::Babd, 16, 2, 1, 1}, Case{Kind::BlockTridiagonal, 12, 3, 1, 1},
                 Case{Kind::Banded, 17, 1, 2, 3}, Case{Kind::Abd, 12, 2, 1, 1},
                 Case{Kind::CirculantLike, 13, 1, 2, 1}}) {
    StructuredMatrix A = generate_random(c.k, c.n, c.m, c.s, c.r, 7, 0.0);
    DenseMatrix D = to_dense(A);
    for (int i = 0; i < c.n; ++i)
      for (int j = 0; j < c.n; ++j)
        if (!oracles::mask(c.k, c.n, c.m, c.s, c.r, A.corner_rows, A.corner_cols, i, j))
          CHECK(D.at(i, j) == 0.0);
  }
}

TEST_CASE("matvec equals the ordered dense product exactly") {
  StructuredMatrix I3 = make(Kind::Banded, 3, 1, 0, 0, {1, 1, 1});
  CHECK(matvec(I3, {3, -1, 4}) == Vector{3, -1, 4});

  StructuredMatrix T = make(Kind::Banded, 3, 1, 1, 1, {-1, -1, 2, 2, 2, -1, -1});
  CHECK(matvec(T, {1, 1, 1}) == Vector{1, 0, 1});

  std::vector<double> body(body_entry_count(Kind::Babd, 8, 2, 1, 1), 0.0);
  StructuredMatrix B = make(Kind::Babd, 8, 2, 1, 1, body, std::vector<double>(4, 1.0), 2, 2);
  Vector y = matvec(B, Vector(8, 1.0));
  CHECK(y[0] == 2.0);  // corner row picks up both corner columns
  CHECK(y[1] == 2.0);
  CHECK(y[2] == 0.0);

  struct Case {
    Kind k;
    int n, m, s, r;
  };
  int cnum = 0;
  for (Case c : {Case{Kind::Banded, 33, 1, 3, 1}, Case{Kind::BlockTridiagonal, 36, 4, 1, 1},
                 Case{Kind::Abd, 40, 4, 2, 2}, Case{Kind::Babd, 24, 3, 2, 1},
                 Case{Kind::CirculantLike, 29, 1, 2, 2}}) {
    StructuredMatrix A = generate_random(c.k, c.n, c.m, c.s, c.r, 100 + cnum++, 0.0);
    Vector x = oracles::random_vector(c.n, 5 + cnum);
    Vector got = matvec(A, x);
    Vector want = oracles::dense_matvec_ordered(to_dense(A), x);
    for (int i = 0; i < c.n; ++i) CHECK(got[i] == want[i]);
  }
}

TEST_CASE("generator is deterministic and enforces dominance") {
  StructuredMatrix A = generate_random(Kind::Banded, 10, 1, 1, 1, 1, 2.0);
  StructuredMatrix B = generate_random(Kind::Banded, 10, 1, 1, 1, 1, 2.0);
  CHECK(A == B);
  DenseMatrix D = to_dense(A);
  for (int i = 0; i < 10; ++i) {
    double off = 0;
    for (int j = 0; j < 10; ++j)
      if (j != i) off += std::abs(D.at(i, j));
    CHECK(std::abs(D.at(i, i)) >= 2.0 * off);
  }
  CHECK_THROWS_AS(generate_random(Kind::Banded, 10, 1, 1, 1, 1, -1.0), Error);
}

TEST_CASE("construction rejects structurally inconsistent input") {
  CHECK_THROWS_AS(make(Kind::Banded, 4, 1, 5, 1, std::vector<double>(10, 0.0)), Error);
  CHECK_THROWS_AS(make(Kind::Banded, 3, 1, 0, 0, {1, 1}), Error);
  try {
    make(Kind::Banded, 3, 1, 0, 0, {1, 1, 1}, std::vector<double>(1, 1.0), 1, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CornerForbidden);
  }
  StructuredMatrix big = generate_random(Kind::Banded, 64, 1, 1, 1, 3, 2.0);
  CHECK_THROWS_AS(to_dense(big, 32), Error);
}

TEST_CASE("STRUCTMAT text round-trips bit-exactly") {
  struct Case {
    Kind k;
    int n, m, s, r;
  };
  int seed = 0;
  for (Case c : {Case{Kind::Banded, 19, 1, 2, 3}, Case{Kind::BlockTridiagonal, 20, 4, 1, 1},
                 Case{Kind::Abd, 18, 3, 2, 1}, Case{Kind::Babd, 20, 2, 1, 1},
                 Case{Kind::CirculantLike, 15, 1, 1, 2}}) {
    StructuredMatrix A = generate_random(c.k, c.n, c.m, c.s, c.r, 1000 + seed++, 1.5);
    StructuredMatrix B = parse_matrix(write_matrix(A, {"roundtrip test"}));
    CHECK(A == B);
  }
}

TEST_CASE("format header drives the layout") {
  std::string text = "STRUCTMAT 1 banded 4 1 1 1\n";
  for (int i = 0; i < 10; ++i) text += "1.0\n";
  StructuredMatrix A = parse_matrix(text);
  CHECK(A.n == 4);
  CHECK(A.s == 1);
  CHECK(A.at(0, 0) == 1.0);
  CHECK(A.at(0, 2) == 0.0);

  CHECK_THROWS_AS(parse_matrix("STRUCTMAT 1 banded 4 1 5 1\n"), Error);
  try {
    parse_matrix("STRUCTMAT 2 banded 4 1 1 1\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedVersion);
  }
}

TEST_CASE("vectors round-trip") {
  Vector v = oracles::random_vector(9, 3);
  CHECK(parse_vector(write_vector(v)) == v);
  CHECK_THROWS_AS(parse_vector("VEC 1 4\n1.0\n"), Error);
}
