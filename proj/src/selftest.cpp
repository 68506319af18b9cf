#include "tropic/selftest.hpp"

#include <random>
#include <sstream>

#include "tropic/errors.hpp"

namespace tropic {
namespace {

// Primitive directions not parallel to any small wall support; the wall
// supports generated below have entries bounded by 8.
const Vec2 kBaseDirs[3] = {{997, 101}, {89, 983}, {-991, 97}};

Series random_wall_function(std::mt19937& rng, Vec2 m, int order) {
  std::uniform_int_distribution<int> coeff_pick(0, 3);
  std::uniform_int_distribution<int> extra(0, 2);
  const Rat coeffs[4] = {Rat(1), Rat(-1), Rat(2), Rat(1) / Rat(2)};
  Series f = Series::one(order);
  int factors = 1 + (extra(rng) == 0 ? 1 : 0);
  for (int j = 1; j <= factors; ++j) {
    // 1 + c * t^(j*d) * z^(j*m) keeps every monomial a positive multiple of m.
    int d = 1 + extra(rng) % 2;
    Series factor = Series::one(order);
    factor += Series::monomial(order, coeffs[coeff_pick(rng)], j * d, j * m.a, j * m.b);
    f *= factor;
  }
  return f;
}

bool is_identity_autom(const Automorphism& th, int order) {
  Automorphism id = identity_autom(order);
  return th.ux == id.ux && th.uy == id.uy;
}

}  // namespace

ConsistencyReport run_consistency_suite(int count, int order, unsigned seed) {
  if (count < 1 || order < 1)
    throw UnsupportedError("consistency suite needs count >= 1 and order >= 1");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> wall_count(2, 4);
  std::uniform_int_distribution<ZZ> entry(-3, 3);

  ConsistencyReport report;
  for (int trial = 0; trial < count; ++trial) {
    Diagram d;
    d.order = order;
    int lines = wall_count(rng);
    for (int w = 0; w < lines; ++w) {
      Vec2 m{entry(rng), entry(rng)};
      while (is_zero(m)) m = {entry(rng), entry(rng)};
      m = prim2(m);
      d.walls.push_back({WallKind::Line, m, random_wall_function(rng, m, order)});
    }
    validate_diagram(d);

    Diagram done = scatter(d, order);
    ++report.diagrams;
    for (const Vec2& base : kBaseDirs) {
      Automorphism lp = loop_product(done, base, order);
      if (!is_identity_autom(lp, order)) {
        std::ostringstream msg;
        msg << "diagram " << trial << ": loop product from base (" << base.a << ", "
            << base.b << ") is not the identity";
        report.detail = msg.str();
        return report;
      }
    }
    for (const Wall& w : done.walls) {
      Automorphism th = crossing_autom(w, -w.m);
      if (!is_symplectic(th)) {
        std::ostringstream msg;
        msg << "diagram " << trial << ": crossing automorphism violates the symplectic check";
        report.detail = msg.str();
        return report;
      }
      ++report.walls_checked;
    }
  }
  report.ok = true;
  return report;
}

}  // namespace tropic
