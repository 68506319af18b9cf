// Acceptance gate: prints exactly one PASS/FAIL line per criterion and exits
// nonzero when anything fails. Every comparison is exact; stated time budgets
// are enforced.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropic/complex.hpp"
#include "tropic/legendre.hpp"
#include "tropic/models.hpp"
#include "tropic/polytope.hpp"
#include "tropic/scatter.hpp"
#include "tropic/selftest.hpp"
#include "tropic/series.hpp"
#include "tropic/tropcurve.hpp"

using namespace tropic;

namespace {

int failures = 0;

// body returns "" to pass, a failure note otherwise; budget_ms <= 0 disables
// the runtime check.
void criterion(int n, const std::string& label, long long budget_ms,
               const std::function<std::string()>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = body();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (detail.empty() && budget_ms > 0 && ms > budget_ms) {
    std::ostringstream os;
    os << "exceeded the " << budget_ms << " ms budget";
    detail = os.str();
  }
  if (detail.empty()) {
    std::cout << "criterion " << n << ": PASS  " << label << "  (" << ms << " ms)\n";
  } else {
    std::cout << "criterion " << n << ": FAIL  " << label << "  -- " << detail << " (" << ms
              << " ms)\n";
    ++failures;
  }
  std::cout.flush();
}

Diagram two_lines(int ell, int order) {
  Diagram d;
  d.order = order;
  d.walls = {Wall{WallKind::Line, {1, 0}, parse_series("1 + t*x^-1", order).pow(ell)},
             Wall{WallKind::Line, {0, 1}, parse_series("1 + t*y^-1", order).pow(ell)}};
  validate_diagram(d);
  return d;
}

const Wall* find_ray(const Diagram& d, ZZ ma, ZZ mb) {
  for (const Wall& w : d.walls)
    if (w.kind == WallKind::Ray && w.m.a == ma && w.m.b == mb) return &w;
  return nullptr;
}

// ---- criterion 1: l=1 scattering -------------------------------------------

std::string c1() {
  for (int k = 2; k <= 12; ++k) {
    Diagram done = scatter(two_lines(1, k), k);
    if (done.walls.size() != 3) return "order " + std::to_string(k) + ": wrong wall count";
    const Wall* r = find_ray(done, -1, -1);
    if (!r) return "order " + std::to_string(k) + ": missing the (1,1) ray";
    if (r->f != parse_series("1 + t^2*x^-1*y^-1", k))
      return "order " + std::to_string(k) + ": ray function is " + r->f.to_string();
  }
  return "";
}

// ---- criterion 2: l=2 scattering -------------------------------------------

std::string c2() {
  const int k = 12;
  Diagram done = scatter(two_lines(2, k), k);

  const Wall* central = find_ray(done, -1, -1);
  if (!central) return "missing the central ray";
  Series base = Series::one(k) - Series::monomial(k, 1, 2, -1, -1);
  if (central->f != base.inverse().pow(4))
    return "central function is " + central->f.to_string();

  for (int n = 1; n <= 2; ++n) {
    const Wall* s1 = find_ray(done, -(n + 1), -n);
    const Wall* s2 = find_ray(done, -n, -(n + 1));
    if (!s1 || !s2) return "missing a side ray for n = " + std::to_string(n);
    Series e1 = (Series::one(k) + Series::monomial(k, 1, 2 * n + 1, -(n + 1), -n)).pow(2);
    Series e2 = (Series::one(k) + Series::monomial(k, 1, 2 * n + 1, -n, -(n + 1))).pow(2);
    if (s1->f != e1) return "side ray n = " + std::to_string(n) + " mismatch";
    if (s2->f != e2) return "mirror side ray n = " + std::to_string(n) + " mismatch";
  }

  for (const Wall& w : done.walls) {
    if (w.kind != WallKind::Ray) continue;
    ZZ a = -w.m.a, b = -w.m.b;  // emanation (a, b) in the first quadrant
    bool in_family = (a == 1 && b == 1) || (a == b + 1 && b >= 1) || (b == a + 1 && a >= 1);
    if (!in_family) {
      std::ostringstream os;
      os << "unexpected ray at (" << a << ", " << b << ")";
      return os.str();
    }
  }
  return "";
}

// ---- criterion 3: l=3 scattering -------------------------------------------

std::string c3() {
  const int k = 10;
  Diagram done = scatter(two_lines(3, k), k);

  // (a) the ninth root of the slope-one function.
  const Wall* central = find_ray(done, -1, -1);
  if (!central) return "missing the slope-one ray";
  Series g = (central->f.log() * (Rat(1) / Rat(9))).exp();
  const long long want[5] = {1, 1, 4, 22, 140};
  for (int n = 0; n <= 4; ++n)
    if (g.coeff(2 * n, -n, -n) != Rat(want[n])) {
      std::ostringstream os;
      os << "ninth-root coefficient at t^" << 2 * n << " is "
         << rat_str(g.coeff(2 * n, -n, -n));
      return os.str();
    }
  Series relation =
      Series::monomial(k, 1, 2, -1, -1) * g.pow(4) - g + Series::one(k);
  if (!relation.is_zero()) return "algebraic relation for the ninth root fails";

  // (b) the first nontrivial off-diagonal rays.
  for (auto [a, b] : {std::pair<int, int>{3, 1}, {1, 3}}) {
    const Wall* r = find_ray(done, -a, -b);
    if (!r) return "missing the (3,1)/(1,3) ray";
    if (r->f != (Series::one(k) + Series::monomial(k, 1, 4, -a, -b)).pow(3))
      return "cube function mismatch on the (3,1)/(1,3) ray";
  }

  // (c) periodicity of supports and transported coefficients.
  std::set<std::pair<ZZ, ZZ>> supports;
  for (const Wall& w : done.walls) {
    if (w.kind == WallKind::Line) {
      supports.insert({w.m.a < 0 ? -w.m.a : w.m.a, w.m.b < 0 ? -w.m.b : w.m.b});
    } else {
      supports.insert({-w.m.a, -w.m.b});
    }
  }
  auto function_on = [&](ZZ a, ZZ b) -> const Series* {
    for (const Wall& w : done.walls) {
      Vec2 s = support_dir(w);
      if ((s.a == a && s.b == b) || (w.kind == WallKind::Line && s.a == -a && s.b == -b))
        return &w.f;
    }
    return nullptr;
  };
  for (const auto& [a, b] : supports) {
    for (int sign : {+1, -1}) {
      // forward map (a,b) -> (3a-b, a); backward (a,b) -> (b, 3b-a).
      ZZ ia = sign > 0 ? 3 * a - b : b;
      ZZ ib = sign > 0 ? a : 3 * b - a;
      if (ia < 0 || ib < 0 || ia + ib > k || (ia == 0 && ib == 0)) continue;
      if (!supports.count({ia, ib})) {
        std::ostringstream os;
        os << "periodicity image (" << ia << ", " << ib << ") of (" << a << ", " << b
           << ") is absent";
        return os.str();
      }
      const Series* src = function_on(a, b);
      const Series* dst = function_on(ia, ib);
      if (!src || !dst) return "support lookup failed";
      long long wsrc = static_cast<long long>(a + b);
      long long wdst = static_cast<long long>(ia + ib);
      for (long long j = 1; j * wdst <= k && j * wsrc <= k; ++j) {
        Rat cs = src->coeff(static_cast<int>(j * wsrc), static_cast<long long>(-j * a),
                            static_cast<long long>(-j * b));
        Rat cd = dst->coeff(static_cast<int>(j * wdst), static_cast<long long>(-j * ia),
                            static_cast<long long>(-j * ib));
        if (cs != cd) {
          std::ostringstream os;
          os << "coefficient transport (" << a << ", " << b << ") -> (" << ia << ", " << ib
             << ") fails at step " << j;
          return os.str();
        }
      }
    }
  }
  return "";
}

// ---- criterion 4: enumerative extraction ------------------------------------

std::string c4() {
  std::vector<GwRow> rows = extract_gw(1, 1, {1, 1}, 12);
  for (int d = 1; d <= 6; ++d) {
    const GwRow* row = nullptr;
    for (const GwRow& r : rows)
      if (r.d == d) row = &r;
    if (!row) return "missing degree " + std::to_string(d);
    Rat want = Rat(d % 2 == 1 ? 1 : -1) / Rat(d * d);
    if (row->t_deg != 2 * d || row->n_tilde != want)
      return "wrong value at degree " + std::to_string(d) + ": " + rat_str(row->n_tilde);
  }

  auto logs = [](int ell, int order) {
    std::vector<Rat> out;
    for (const GwRow& r : extract_gw(ell, ell, {1, 1}, order)) out.push_back(r.log_coeff);
    return out;
  };
  if (logs(2, 4) != std::vector<Rat>{Rat(4), Rat(2)}) return "l = 2 log coefficients wrong";
  if (logs(3, 6) != std::vector<Rat>{Rat(9), Rat(63) / Rat(2), Rat(165)})
    return "l = 3 log coefficients wrong";
  return "";
}

// ---- criterion 5: randomized consistency ------------------------------------

std::string c5() {
  ConsistencyReport r = run_consistency_suite(50, 6, 20240814);
  if (!r.ok) return r.detail;
  if (r.diagrams != 50) return "wrong diagram count";
  return "";
}

// ---- criterion 6: monodromy of the quartic and quintic models ---------------

std::string c6() {
  TropicalManifold quartic = quartic_complex().man;
  Discriminant dq = discriminant(quartic);
  if (dq.faces.size() != 6) return "quartic: expected 6 essential faces";
  for (const EssentialFace& f : dq.faces) {
    if (!f.unipotent) return "quartic: holonomy not unipotent";
    if (f.divisors != std::vector<ZZ>{4}) return "quartic: elementary divisors are not {4}";
  }

  TropicalManifold quintic = quintic_complex().man;
  Discriminant d = discriminant(quintic);
  int positive = 0, negative = 0;
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    const GammaNode& node = d.nodes[i];
    if (node.at_subface && node.faces.size() != 3) continue;  // pass-through edge node
    TripleReport rep = monodromy_triple_check(quintic, d, static_cast<int>(i));
    if (!rep.product_identity) return "quintic: T1*T2*T3 != I at a node";
    if (!rep.unipotent_rank_one) return "quintic: some (T_i - I) is not square-zero rank one";
    if (!rep.dual_is_transpose_inverse) return "quintic: dual holonomy mismatch";
    VertexKind want = node.at_subface ? VertexKind::Negative : VertexKind::Positive;
    VertexKind want_dual = node.at_subface ? VertexKind::Positive : VertexKind::Negative;
    if (rep.kind != want || rep.dual_kind != want_dual)
      return "quintic: vertex type classification mismatch";
    (node.at_subface ? negative : positive)++;
  }
  if (positive == 0 || negative == 0) return "quintic: both vertex types must occur";
  return "";
}

// ---- criterion 7: discrete Legendre involution -------------------------------

std::string c7() {
  const std::vector<std::vector<VecZ>> polygons = {
      {{-2, -1}, {0, -1}, {1, 1}},
      {{-2, -1}, {0, -1}, {1, 2}},
      {{-2, -1}, {0, 1}, {2, -1}},
      {{-2, -1}, {1, -1}, {1, 2}},
      {{-2, -1}, {1, 0}, {1, 1}},
      {{-2, -1}, {-1, -1}, {-1, 0}, {2, 1}},
      {{-2, -1}, {-1, -1}, {0, 1}, {1, 0}},
      {{-2, -1}, {-1, -1}, {0, 1}, {2, 1}},
      {{-2, -1}, {-1, -1}, {1, 0}, {1, 2}},
      {{-2, -1}, {-1, -1}, {1, 1}, {2, 1}},
      {{-2, -1}, {0, -1}, {0, 1}, {2, 1}},
      {{-2, -1}, {0, -1}, {1, 0}, {1, 2}},
      {{-2, -1}, {-1, -1}, {-1, 0}, {1, 0}, {1, 1}},
      {{-2, -1}, {-1, -1}, {0, 1}, {1, 0}, {1, 1}},
      {{-2, -1}, {-1, -1}, {0, 1}, {1, 0}, {2, 1}},
      {{-2, -1}, {-1, -1}, {-1, 0}, {1, 0}, {1, 1}, {2, 1}},
  };
  for (size_t i = 0; i < polygons.size(); ++i) {
    EmbeddedComplex ec = boundary_complex(hull(polygons[i]));
    canonical_phi(ec);
    TropicalManifold once = discrete_legendre(ec.man);
    if (discrete_legendre(once) != ec.man)
      return "double transform differs on polygon " + std::to_string(i);
  }

  EmbeddedComplex big = boundary_complex(hull({{-1, -1}, {-1, 2}, {2, -1}}));
  EmbeddedComplex small = boundary_complex(hull({{-1, -1}, {0, 1}, {1, 0}}));
  canonical_phi(big);
  canonical_phi(small);
  if (polar_dual(big.hull).vertices != small.hull.vertices)
    return "polar duality does not pair the triangles";
  if (!manifolds_isomorphic(discrete_legendre(big.man), small.man))
    return "transform of the large triangle is not the small one";
  if (!manifolds_isomorphic(discrete_legendre(small.man), big.man))
    return "transform of the small triangle is not the large one";
  return "";
}

// ---- criterion 8: balanced corner loci ---------------------------------------

std::string c8() {
  TropicalPolynomial line;
  line.terms[{0, 0}] = 0;
  line.terms[{1, 0}] = 0;
  line.terms[{0, 1}] = 0;
  TropicalCurve2D lc = corner_locus_2d(line);
  VecZ total = {0, 0};
  int rays = 0;
  for (const CurveEdge& e : lc.edges)
    if (e.b == -1) {
      ++rays;
      total[0] += e.weight * e.dir[0];
      total[1] += e.weight * e.dir[1];
    }
  if (rays != 3 || total != VecZ{0, 0}) return "tropical line rays do not cancel";

  std::vector<VecZ> grid;
  for (long long i = 0; i <= 3; ++i)
    for (long long j = 0; i + j <= 3; ++j) grid.push_back({i, j});
  std::mt19937 rng(20240814);
  std::uniform_int_distribution<int> num_terms(2, 10);
  std::uniform_int_distribution<long long> numer(-6, 6);
  std::uniform_int_distribution<long long> denom(1, 4);
  int done = 0;
  while (done < 200) {
    std::vector<VecZ> pts = grid;
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(num_terms(rng));
    TropicalPolynomial g;
    for (const VecZ& p : pts) g.terms[p] = Rat(numer(rng)) / Rat(denom(rng));
    if (g.terms.size() < 2) continue;
    TropicalCurve2D c = corner_locus_2d(g);
    std::vector<BalanceViolation> bad = check_balanced(c);
    if (!bad.empty()) {
      std::ostringstream os;
      os << "sample " << done << " unbalanced at vertex " << bad[0].vertex;
      return os.str();
    }
    ++done;
  }
  return "";
}

}  // namespace

int main() {
  criterion(1, "two unit lines scatter to the single (1,1) ray at orders 2..12", 1000, c1);
  criterion(2, "squared lines: central fourth power and paired side rays at order 12", 30000,
            c2);
  criterion(3, "cubed lines at order 10: ninth root, cube rays, periodicity", 600000, c3);
  criterion(4, "log coefficients and N(2d,d) = (-1)^(d+1)/d^2 up to degree 6", 0, c4);
  criterion(5, "50 random diagrams complete with identity loops at 3 base angles", 300000, c5);
  criterion(6, "quartic divisor-4 loops; quintic triples with both vertex types", 0, c6);
  criterion(7, "Legendre involution on the 16 reflexive polygons; Batyrev swap", 10000, c7);
  criterion(8, "200 random corner loci balanced; tropical line rays cancel", 0, c8);

  if (failures == 0) {
    std::cout << "acceptance: all criteria PASS\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return 1;
}
