#include "tropic/tropcurve.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "tropic/errors.hpp"
#include "tropic/polytope.hpp"

namespace tropic {
namespace {

Rat term_value(const VecZ& p, const Rat& c, const std::vector<Rat>& x) {
  Rat v = c;
  for (size_t i = 0; i < p.size(); ++i) v += Rat(p[i]) * x[i];
  return v;
}

VecZ vsub(const VecZ& a, const VecZ& b) {
  VecZ d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Primitive integer direction of a nonzero rational vector.
VecZ rat_primitive(const std::array<Rat, 2>& d) {
  Int scale = denominator(d[0]) * denominator(d[1]);
  VecZ v(2, 0);
  for (int i = 0; i < 2; ++i) v[i] = static_cast<ZZ>(numerator(d[i] * Rat(scale)));
  return primitive(v);
}

struct Term {
  VecZ p;
  Rat c;
};

std::vector<Term> curve_terms(const TropicalPolynomial& g) {
  std::vector<Term> ts;
  for (const auto& [p, c] : g.terms) {
    if (p.size() != 2)
      throw UnsupportedError("corner locus is implemented for two variables only");
    ts.push_back({p, c});
  }
  if (ts.size() < 2)
    throw UnsupportedError("corner locus needs a polynomial with at least two terms");
  return ts;
}

// All exponents lie on one affine line: the corner locus is a union of
// parallel lines, one per edge of the lower envelope of (position, coeff).
// Each line is emitted as a vertex carrying two opposite rays.
TropicalCurve2D collinear_locus(const std::vector<Term>& ts) {
  VecZ u = primitive(vsub(ts.back().p, ts.front().p));
  int idx = u[0] != 0 ? 0 : 1;
  std::vector<std::pair<ZZ, Rat>> lifted;  // (coordinate along u, coefficient)
  for (const Term& t : ts)
    lifted.push_back({(t.p[idx] - ts.front().p[idx]) / u[idx], t.c});
  std::sort(lifted.begin(), lifted.end());

  std::vector<std::pair<ZZ, Rat>> env;  // lower envelope, monotone chain
  for (const auto& pt : lifted) {
    while (env.size() >= 2) {
      const auto& [m1, c1] = env[env.size() - 2];
      const auto& [m2, c2] = env[env.size() - 1];
      if (Rat(m2 - m1) * (pt.second - c1) - (c2 - c1) * Rat(pt.first - m1) <= 0)
        env.pop_back();
      else
        break;
    }
    env.push_back(pt);
  }

  TropicalCurve2D curve;
  ZZ uu = u[0] * u[0] + u[1] * u[1];
  for (size_t t = 0; t + 1 < env.size(); ++t) {
    const auto& [m0, c0] = env[t];
    const auto& [m1, c1] = env[t + 1];
    Rat lambda = (c0 - c1) / Rat((m1 - m0) * uu);  // foot of the line {<u,x> = s*}
    int v = static_cast<int>(curve.vertices.size());
    curve.vertices.push_back({lambda * Rat(u[0]), lambda * Rat(u[1])});
    curve.edges.push_back({v, -1, {-u[1], u[0]}, m1 - m0});
    curve.edges.push_back({v, -1, {u[1], -u[0]}, m1 - m0});
  }
  return curve;
}

}  // namespace

Rat trop_eval(const TropicalPolynomial& g, const std::vector<Rat>& x) {
  if (g.terms.empty()) throw UnsupportedError("cannot evaluate a polynomial with no terms");
  bool first = true;
  Rat best = 0;
  for (const auto& [p, c] : g.terms) {
    if (p.size() != x.size())
      throw ParseError("evaluation point has dimension " + std::to_string(x.size()) +
                       ", polynomial has " + std::to_string(p.size()) + " variables");
    Rat v = term_value(p, c, x);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

TropicalCurve2D corner_locus_2d(const TropicalPolynomial& g) {
  std::vector<Term> ts = curve_terms(g);
  const int n = static_cast<int>(ts.size());

  std::vector<VecZ> spread;
  for (int i = 1; i < n; ++i) spread.push_back(vsub(ts[i].p, ts[0].p));
  if (mat_rank(MatZ::from_rows(spread)) < 2) return collinear_locus(ts);

  auto value_at = [&](int t, const std::array<Rat, 2>& x) {
    return term_value(ts[t].p, ts[t].c, {x[0], x[1]});
  };

  // Dual vertices: each full-dimensional cell of the induced subdivision is
  // the set of terms achieving the minimum at a unique point, found as the
  // solution of any affinely independent three-way tie.
  std::map<std::array<Rat, 2>, std::vector<int>> cells;  // position -> terms
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        MatZ m = MatZ::from_rows({vsub(ts[j].p, ts[i].p), vsub(ts[k].p, ts[i].p)});
        if (mat_rank(m) != 2) continue;
        std::vector<Rat> sol;
        if (!solve_unique(m, {ts[i].c - ts[j].c, ts[i].c - ts[k].c}, sol))
          throw InternalError("inconsistent full-rank tie system");
        std::array<Rat, 2> x{sol[0], sol[1]};
        Rat best = trop_eval(g, {x[0], x[1]});
        if (value_at(i, x) != best) continue;
        std::vector<int> achieving;
        for (int t = 0; t < n; ++t)
          if (value_at(t, x) == best) achieving.push_back(t);
        cells[x] = achieving;
      }
  if (cells.empty()) throw InternalError("planar Newton polygon produced no subdivision cell");

  TropicalCurve2D curve;
  std::map<std::array<Rat, 2>, int> vid;
  for (const auto& [x, achieving] : cells) {
    vid[x] = static_cast<int>(curve.vertices.size());
    curve.vertices.push_back(x);
  }

  // Dual edges: every edge of a cell polygon is either shared with one other
  // cell (bounded curve edge) or lies on the Newton polygon boundary (ray in
  // the inward normal direction).  Weights are lattice lengths.
  struct Incidence {
    int v;
    VecZ inner;
    ZZ len;
  };
  std::map<std::pair<VecZ, VecZ>, std::vector<Incidence>> walls;
  for (const auto& [x, achieving] : cells) {
    std::vector<VecZ> pts;
    for (int t : achieving) pts.push_back(ts[t].p);
    LatticePolytope cell = hull(pts);
    for (const Facet& f : cell.facets) {
      if (f.vertex_ids.size() != 2) throw InternalError("polygon edge without two endpoints");
      VecZ e0 = cell.vertices[f.vertex_ids[0]];
      VecZ e1 = cell.vertices[f.vertex_ids[1]];
      if (e1 < e0) std::swap(e0, e1);
      walls[{e0, e1}].push_back({vid.at(x), f.normal, content(vsub(e1, e0))});
    }
  }
  for (const auto& [key, inc] : walls) {
    if (inc.size() == 2) {
      int a = inc[0].v;
      int b = inc[1].v;
      std::array<Rat, 2> d{curve.vertices[b][0] - curve.vertices[a][0],
                           curve.vertices[b][1] - curve.vertices[a][1]};
      curve.edges.push_back({a, b, rat_primitive(d), inc[0].len});
    } else if (inc.size() == 1) {
      curve.edges.push_back({inc[0].v, -1, inc[0].inner, inc[0].len});
    } else {
      throw InternalError("subdivision edge shared by more than two cells");
    }
  }
  return curve;
}

std::vector<BalanceViolation> check_balanced(const ParamTropicalCurve& c) {
  const int n = static_cast<int>(c.vertices.size());
  std::vector<std::vector<std::pair<VecZ, ZZ>>> star(n);
  for (const CurveEdge& e : c.edges) {
    if (e.a < 0 || e.a >= n || e.b < -1 || e.b >= n)
      throw ParseError("curve edge references a vertex that does not exist");
    if (e.weight < 0) throw ParseError("curve edge has negative weight");
    if (e.weight == 0) continue;  // contracted edge: no contribution
    if (e.b == -1) {
      if (e.dir.size() != 2 || is_zero(e.dir))
        throw ParseError("ray with nonzero weight has no direction");
      star[e.a].push_back({primitive(e.dir), e.weight});
    } else {
      std::array<Rat, 2> d{c.vertices[e.b].pos[0] - c.vertices[e.a].pos[0],
                           c.vertices[e.b].pos[1] - c.vertices[e.a].pos[1]};
      if (d[0] == 0 && d[1] == 0)
        throw ParseError("edge with nonzero weight joins coincident vertices");
      VecZ dir = rat_primitive(d);
      star[e.a].push_back({dir, e.weight});
      star[e.b].push_back({{-dir[0], -dir[1]}, e.weight});
    }
  }
  std::vector<BalanceViolation> out;
  for (int v = 0; v < n; ++v) {
    if (c.vertices[v].boundary) continue;
    if (star[v].size() <= 1) continue;
    VecZ sum(2, 0);
    for (const auto& [d, w] : star[v]) {
      sum[0] += w * d[0];
      sum[1] += w * d[1];
    }
    if (!is_zero(sum)) out.push_back({v, sum});
  }
  return out;
}

std::vector<BalanceViolation> check_balanced(const TropicalCurve2D& c) {
  ParamTropicalCurve p;
  for (const auto& v : c.vertices) p.vertices.push_back({v, false});
  p.edges = c.edges;
  return check_balanced(p);
}

}  // namespace tropic
