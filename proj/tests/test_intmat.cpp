#include <doctest.h>

#include "tropic/errors.hpp"
#include "tropic/intmat.hpp"

using namespace tropic;

TEST_CASE("determinant and multiplication") {
  MatZ a = MatZ::from_rows({{1, 2}, {3, 4}});
  CHECK(mat_det(a) == -2);
  MatZ b = MatZ::from_rows({{0, 1}, {1, 0}});
  MatZ ab = mat_mul(a, b);
  CHECK(ab == MatZ::from_rows({{2, 1}, {4, 3}}));
  CHECK(mat_det(MatZ::identity(4)) == 1);
  MatZ c = MatZ::from_rows({{2, 0, 1}, {1, 1, 0}, {0, 3, 1}});
  // Expansion along the first row: 2*(1*1-0*3) - 0 + 1*(1*3-1*0) = 5.
  CHECK(mat_det(c) == 5);
}

TEST_CASE("unimodular inverse round-trips") {
  MatZ m = MatZ::from_rows({{2, 1}, {1, 1}});
  MatZ inv = inverse_unimodular(m);
  CHECK(mat_mul(m, inv) == MatZ::identity(2));
  CHECK(mat_mul(inv, m) == MatZ::identity(2));

  MatZ det_minus = MatZ::from_rows({{0, 1}, {1, 0}});
  CHECK(mat_mul(det_minus, inverse_unimodular(det_minus)) == MatZ::identity(2));

  MatZ m3 = MatZ::from_rows({{1, 2, 3}, {0, 1, 4}, {0, 0, 1}});
  CHECK(mat_mul(m3, inverse_unimodular(m3)) == MatZ::identity(3));

  CHECK_THROWS_AS(inverse_unimodular(MatZ::from_rows({{2, 0}, {0, 1}})), InternalError);
}

TEST_CASE("smith normal form invariants") {
  auto check_snf = [](const MatZ& m) {
    Snf f = smith_normal_form(m);
    CHECK(mat_mul(mat_mul(f.u, m), f.v) == f.s);
    ZZ du = mat_det(f.u);
    ZZ dv = mat_det(f.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    int n = std::min(m.rows, m.cols);
    for (int i = 0; i + 1 < n; ++i) {
      ZZ a = f.s.at(i, i), b = f.s.at(i + 1, i + 1);
      CHECK(a >= 0);
      if (a == 0) CHECK(b == 0);
      if (a != 0 && b != 0) CHECK(b % a == 0);
    }
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (i != j) CHECK(f.s.at(i, j) == 0);
  };
  check_snf(MatZ::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  check_snf(MatZ::from_rows({{1, -4}, {0, 1}}));
  check_snf(MatZ::from_rows({{0, 0}, {0, 0}}));
  check_snf(MatZ::from_rows({{6, 10, 15}}));
  check_snf(MatZ::from_rows({{2}, {4}, {6}}));

  // Classical example with divisor chain 2, 6, 12.
  auto d = elementary_divisors(MatZ::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 2);
  CHECK(d[1] == 6);
  CHECK(d[2] == 12);

  auto shear = elementary_divisors(
      mat_sub(MatZ::from_rows({{1, -4}, {0, 1}}), MatZ::identity(2)));
  REQUIRE(shear.size() == 1);
  CHECK(shear[0] == 4);
}

TEST_CASE("kernel and rank") {
  MatZ m = MatZ::from_rows({{1, 1, 1}});
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(v[0] + v[1] + v[2] == 0);
  CHECK(mat_rank(m) == 1);
  CHECK(mat_rank(MatZ::from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(mat_rank(MatZ::identity(3)) == 3);

  // Kernel basis spans the saturated kernel: (1,1,-2)/1 is integral combination.
  MatZ m2 = MatZ::from_rows({{1, 1, 1}, {1, -1, 0}});
  auto k2 = kernel_basis(m2);
  REQUIRE(k2.size() == 1);
  CHECK(content(k2[0]) == 1);
}

TEST_CASE("saturation of a sublattice") {
  // Columns (2,0) and (0,2) span index-4 sublattice; saturation is all of Z^2.
  auto sat = saturation_basis({{2, 0}, {0, 2}}, 2);
  REQUIRE(sat.size() == 2);
  MatZ s = MatZ::from_cols(sat);
  ZZ d = mat_det(s);
  CHECK((d == 1 || d == -1));

  // Single generator (2,4): saturation generated by (1,2).
  auto sat2 = saturation_basis({{2, 4}}, 2);
  REQUIRE(sat2.size() == 1);
  VecZ p = primitive(sat2[0]);
  CHECK(((p == VecZ{1, 2}) || (p == VecZ{-1, -2})));
  CHECK(content(sat2[0]) == 1);
}

TEST_CASE("primitive completion") {
  for (VecZ v : {VecZ{2, 3}, VecZ{1, 0}, VecZ{0, -1}, VecZ{5, -7}}) {
    MatZ u = complete_primitive(v);
    ZZ d = mat_det(u);
    CHECK((d == 1 || d == -1));
    CHECK(u.col(0) == v);
  }
  MatZ u4 = complete_primitive({3, 5, 7, 2});
  ZZ d4 = mat_det(u4);
  CHECK((d4 == 1 || d4 == -1));
  CHECK(u4.col(0) == VecZ{3, 5, 7, 2});
  CHECK_THROWS_AS(complete_primitive({2, 4}), InternalError);
}

TEST_CASE("content and primitive part") {
  CHECK(content({4, -6}) == 2);
  CHECK(content({0, 0, 5}) == 5);
  CHECK(primitive({4, -6}) == VecZ{2, -3});
  CHECK_THROWS_AS(primitive({0, 0}), InternalError);
}

TEST_CASE("rational solve") {
  MatZ m = MatZ::from_rows({{2, 1}, {1, 1}});
  std::vector<Rat> x;
  REQUIRE(solve_unique(m, {Rat(3), Rat(2)}, x));
  CHECK(x[0] == 1);
  CHECK(x[1] == 1);

  // Overdetermined consistent and inconsistent systems.
  MatZ tall = MatZ::from_rows({{1, 0}, {0, 1}, {1, 1}});
  REQUIRE(solve_unique(tall, {Rat(1), Rat(2), Rat(3)}, x));
  CHECK(x[0] == 1);
  CHECK(x[1] == 2);
  CHECK_FALSE(solve_unique(tall, {Rat(1), Rat(2), Rat(4)}, x));
}
