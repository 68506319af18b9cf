#include <doctest.h>

#include <random>
#include <vector>

#include "tropic/errors.hpp"
#include "tropic/polytope.hpp"
#include "tropic/tropcurve.hpp"

using namespace tropic;

namespace {

TropicalPolynomial poly(std::vector<std::pair<VecZ, Rat>> terms) {
  TropicalPolynomial g;
  for (auto& [p, c] : terms) g.terms[p] = c;
  return g;
}

ZZ ray_weight_sum(const TropicalCurve2D& c) {
  ZZ s = 0;
  for (const CurveEdge& e : c.edges)
    if (e.b == -1) s += e.weight;
  return s;
}

int valency(const TropicalCurve2D& c, int v) {
  int d = 0;
  for (const CurveEdge& e : c.edges) d += (e.a == v) + (e.b == v);
  return d;
}

}  // namespace

TEST_CASE("min-plus evaluation") {
  TropicalPolynomial g = poly({{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}});
  CHECK(trop_eval(g, {Rat(3), Rat(-2)}) == Rat(-2));
  CHECK(trop_eval(g, {Rat(1), Rat(2)}) == Rat(0));
  CHECK(trop_eval(g, {Rat(-1) / Rat(3), Rat(5)}) == Rat(-1) / Rat(3));

  CHECK_THROWS_AS(trop_eval(TropicalPolynomial{}, {Rat(0)}), UnsupportedError);
  CHECK_THROWS_AS(trop_eval(g, {Rat(0)}), ParseError);
}

TEST_CASE("min-plus evaluation is concave") {
  TropicalPolynomial g = poly({{{0, 0}, Rat(1) / Rat(2)},
                               {{2, -1}, Rat(-3)},
                               {{1, 1}, Rat(2)},
                               {{0, 3}, Rat(-1) / Rat(4)}});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-8, 8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rat> x{Rat(num(rng)) / Rat(3), Rat(num(rng)) / Rat(2)};
    std::vector<Rat> y{Rat(num(rng)), Rat(num(rng)) / Rat(5)};
    Rat lambda = Rat(1 + (trial % 3)) / Rat(4);
    std::vector<Rat> z{lambda * x[0] + (1 - lambda) * y[0], lambda * x[1] + (1 - lambda) * y[1]};
    CHECK(trop_eval(g, z) >= lambda * trop_eval(g, x) + (1 - lambda) * trop_eval(g, y));
  }
}

TEST_CASE("corner locus of the tropical line") {
  TropicalPolynomial g = poly({{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}});
  TropicalCurve2D c = corner_locus_2d(g);

  std::vector<std::array<Rat, 2>> verts = {{Rat(0), Rat(0)}};
  CHECK(c.vertices == verts);
  std::vector<CurveEdge> edges = {{0, -1, {1, 0}, 1}, {0, -1, {0, 1}, 1}, {0, -1, {-1, -1}, 1}};
  CHECK(c.edges == edges);
  CHECK(check_balanced(c).empty());
  CHECK(ray_weight_sum(c) == 3);
}

TEST_CASE("corner locus with a bounded edge") {
  TropicalPolynomial g =
      poly({{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, Rat(-1)}});
  TropicalCurve2D c = corner_locus_2d(g);

  std::vector<std::array<Rat, 2>> verts = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(c.vertices == verts);
  std::vector<CurveEdge> edges = {{1, -1, {1, 0}, 1},
                                  {0, -1, {0, 1}, 1},
                                  {0, 1, {1, -1}, 1},
                                  {1, -1, {0, -1}, 1},
                                  {0, -1, {-1, 0}, 1}};
  CHECK(c.edges == edges);
  CHECK(valency(c, 0) == 3);
  CHECK(valency(c, 1) == 3);
  CHECK(check_balanced(c).empty());
  CHECK(ray_weight_sum(c) == 4);
}

TEST_CASE("translating coefficients translates the curve") {
  // Adding <p, v> to each coefficient moves the curve by -v and keeps the
  // combinatorics (the induced subdivision does not change).
  VecZ v = {1, -2};
  TropicalPolynomial g = poly({{{0, 0}, 0}, {{1, 0}, Rat(v[0])}, {{0, 1}, Rat(v[1])}});
  TropicalCurve2D c = corner_locus_2d(g);

  std::vector<std::array<Rat, 2>> verts = {{Rat(-v[0]), Rat(-v[1])}};
  CHECK(c.vertices == verts);
  std::vector<CurveEdge> edges = {{0, -1, {1, 0}, 1}, {0, -1, {0, 1}, 1}, {0, -1, {-1, -1}, 1}};
  CHECK(c.edges == edges);
}

TEST_CASE("collinear exponents give parallel lines") {
  // One crease of multiplicity two: the middle term never achieves the
  // minimum alone, so the envelope has a single lattice length two edge.
  TropicalPolynomial dbl = poly({{{0, 0}, 0}, {{1, 0}, 0}, {{2, 0}, Rat(-3)}});
  TropicalCurve2D c = corner_locus_2d(dbl);
  std::vector<std::array<Rat, 2>> verts = {{Rat(3) / Rat(2), Rat(0)}};
  CHECK(c.vertices == verts);
  std::vector<CurveEdge> edges = {{0, -1, {0, 1}, 2}, {0, -1, {0, -1}, 2}};
  CHECK(c.edges == edges);
  CHECK(check_balanced(c).empty());

  // Two simple creases at x = 2 and x = 1.
  TropicalPolynomial two = poly({{{0, 0}, 0}, {{1, 0}, Rat(-2)}, {{2, 0}, Rat(-3)}});
  TropicalCurve2D d = corner_locus_2d(two);
  REQUIRE(d.vertices.size() == 2);
  CHECK(d.vertices[0] == std::array<Rat, 2>{Rat(2), Rat(0)});
  CHECK(d.vertices[1] == std::array<Rat, 2>{Rat(1), Rat(0)});
  CHECK(d.edges.size() == 4);
  CHECK(check_balanced(d).empty());

  // A diagonal direction keeps exact rational feet.
  TropicalPolynomial diag = poly({{{0, 0}, 0}, {{1, 1}, Rat(-1)}});
  TropicalCurve2D e = corner_locus_2d(diag);
  std::vector<std::array<Rat, 2>> dverts = {{Rat(1) / Rat(2), Rat(1) / Rat(2)}};
  CHECK(e.vertices == dverts);
  std::vector<CurveEdge> dedges = {{0, -1, {-1, 1}, 1}, {0, -1, {1, -1}, 1}};
  CHECK(e.edges == dedges);
  CHECK(check_balanced(e).empty());
}

TEST_CASE("totally degenerate lifting gives a single vertex") {
  // Coefficients affine in the exponent: every term ties at one point and
  // the subdivision is the whole Newton polygon.
  TropicalPolynomial g =
      poly({{{0, 0}, 0}, {{1, 0}, Rat(-1)}, {{0, 1}, Rat(-2)}, {{1, 1}, Rat(-3)}});
  TropicalCurve2D c = corner_locus_2d(g);

  std::vector<std::array<Rat, 2>> verts = {{Rat(1), Rat(2)}};
  CHECK(c.vertices == verts);
  REQUIRE(c.edges.size() == 4);
  for (const CurveEdge& e : c.edges) {
    CHECK(e.a == 0);
    CHECK(e.b == -1);
    CHECK(e.weight == 1);
  }
  CHECK(valency(c, 0) == 4);
  CHECK(check_balanced(c).empty());
  CHECK(ray_weight_sum(c) == 4);
}

TEST_CASE("corner locus input validation") {
  CHECK_THROWS_AS(corner_locus_2d(TropicalPolynomial{}), UnsupportedError);
  CHECK_THROWS_AS(corner_locus_2d(poly({{{1, 1}, 0}})), UnsupportedError);
  CHECK_THROWS_AS(corner_locus_2d(poly({{{0, 0, 0}, 0}, {{1, 0, 0}, 0}})), UnsupportedError);
}

TEST_CASE("balancing check reports violations and malformed curves") {
  ParamTropicalCurve c;
  c.vertices = {{{Rat(0), Rat(0)}, false}, {{Rat(1), Rat(1)}, false}};
  c.edges = {{0, 1, {}, 2}, {0, -1, {0, -1}, 1}, {1, -1, {2, 2}, 3}};

  auto bad = check_balanced(c);
  REQUIRE(bad.size() == 2);
  CHECK(bad[0].vertex == 0);
  CHECK(bad[0].excess == VecZ{2, 1});
  CHECK(bad[1].vertex == 1);
  CHECK(bad[1].excess == VecZ{1, 1});

  // Flagged vertices are exempt from the balancing condition.
  c.vertices[0].boundary = true;
  c.vertices[1].boundary = true;
  CHECK(check_balanced(c).empty());
  c.vertices[0].boundary = false;
  c.vertices[1].boundary = false;

  // Valency one never counts, and contracted edges contribute nothing.
  ParamTropicalCurve leg;
  leg.vertices = {{{Rat(0), Rat(0)}, false}, {{Rat(0), Rat(0)}, false}};
  leg.edges = {{0, -1, {5, 7}, 2}, {0, 1, {}, 0}};
  CHECK(check_balanced(leg).empty());

  ParamTropicalCurve coincident;
  coincident.vertices = leg.vertices;
  coincident.edges = {{0, 1, {}, 1}};
  CHECK_THROWS_AS(check_balanced(coincident), ParseError);

  ParamTropicalCurve zero_ray;
  zero_ray.vertices = {{{Rat(0), Rat(0)}, false}};
  zero_ray.edges = {{0, -1, {0, 0}, 1}};
  CHECK_THROWS_AS(check_balanced(zero_ray), ParseError);

  ParamTropicalCurve negative;
  negative.vertices = {{{Rat(0), Rat(0)}, false}};
  negative.edges = {{0, -1, {1, 0}, -1}};
  CHECK_THROWS_AS(check_balanced(negative), ParseError);

  ParamTropicalCurve dangling;
  dangling.vertices = {{{Rat(0), Rat(0)}, false}};
  dangling.edges = {{0, 4, {}, 1}};
  CHECK_THROWS_AS(check_balanced(dangling), ParseError);
}

TEST_CASE("random polynomials produce balanced curves") {
  // Newton polygons inside the size three standard triangle, arbitrary
  // rational lift: the corner locus must always balance and its rays must
  // account for the full boundary length of the Newton polygon.
  std::vector<VecZ> grid;
  for (ZZ a = 0; a <= 3; ++a)
    for (ZZ b = 0; a + b <= 3; ++b) grid.push_back({a, b});

  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<size_t> pick(0, grid.size() - 1);
  std::uniform_int_distribution<int> size(3, 7);

  int built = 0;
  while (built < 200) {
    TropicalPolynomial g;
    int want = size(rng);
    while (static_cast<int>(g.terms.size()) < want)
      g.terms[grid[pick(rng)]] = Rat(num(rng)) / Rat(den(rng));

    std::vector<VecZ> expos;
    for (const auto& [p, c] : g.terms) expos.push_back(p);
    std::vector<VecZ> diffs;
    for (size_t i = 1; i < expos.size(); ++i) {
      VecZ d = expos[i];
      d[0] -= expos[0][0];
      d[1] -= expos[0][1];
      diffs.push_back(d);
    }
    if (mat_rank(MatZ::from_rows(diffs)) < 2) continue;  // want a genuine polygon
    ++built;

    TropicalCurve2D c = corner_locus_2d(g);
    CHECK(check_balanced(c).empty());
    CHECK(ray_weight_sum(c) == count_boundary_points(hull(expos)));
    CHECK(!c.vertices.empty());
  }
}
