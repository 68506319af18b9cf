#include "tropic/scatter.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "tropic/errors.hpp"

namespace tropic {

ZZ content2(Vec2 v) { return gcd_z(v.a < 0 ? -v.a : v.a, v.b < 0 ? -v.b : v.b); }

Vec2 prim2(Vec2 v) {
  if (is_zero(v)) throw InternalError("primitive part of zero direction");
  ZZ g = content2(v);
  return {v.a / g, v.b / g};
}

Vec2 support_dir(const Wall& w) {
  if (w.kind == WallKind::Ray) return -w.m;
  return std::max(w.m, -w.m);
}

void validate_diagram(Diagram& d) {
  for (Wall& w : d.walls) {
    if (w.f.order() != d.order)
      throw InternalError("wall function order differs from diagram order");
    if (w.f.coeff(0, 0, 0) != 1 || w.f.graded_part(0).terms().size() != 1)
      throw ParseError("wall function must have constant term 1");
    Vec2 m{0, 0};
    for (const auto& [key, c] : w.f.terms()) {
      if (key.t_deg == 0) continue;
      Vec2 w_mono{key.a, key.b};
      if (is_zero(w_mono))
        throw ParseError("wall function monomials must involve x or y");
      Vec2 p = prim2(w_mono);
      if (is_zero(m))
        m = p;
      else if (m != p)
        throw ParseError("wall function monomials must share one direction");
    }
    if (is_zero(m)) {
      // f = 1: inert wall; keep the declared direction.
      if (is_zero(w.m)) throw ParseError("trivial wall needs an explicit direction");
      w.m = prim2(w.m);
      continue;
    }
    if (!is_zero(w.m)) {
      Vec2 declared = prim2(w.m);
      bool ok = (w.kind == WallKind::Ray) ? declared == m
                                          : (declared == m || declared == -m);
      if (!ok) throw ParseError("wall direction conflicts with its function");
    }
    w.m = m;
  }
}

Automorphism identity_autom(int order) {
  return {Series::monomial(order, Rat(1), 0, 1, 0),
          Series::monomial(order, Rat(1), 0, 0, 1)};
}

Automorphism crossing_autom(const Wall& w, Vec2 p) {
  Vec2 n{p.b, -p.a};
  int order = w.f.order();
  Series ux = Series::monomial(order, Rat(1), 0, 1, 0) * w.f.pow(n.a);
  Series uy = Series::monomial(order, Rat(1), 0, 0, 1) * w.f.pow(n.b);
  return {ux, uy};
}

namespace {

Series cached_pow(const Series& base, ZZ e, std::map<ZZ, Series>& cache) {
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  Series p = base.pow(e);
  cache.emplace(e, p);
  return p;
}

// Crossing action on a series: each monomial z^w picks up f^<n,w>.
Series apply_crossing(const Series& s, const Series& f, Vec2 n,
                      std::map<ZZ, Series>& cache) {
  Series out(s.order());
  for (const auto& [key, c] : s.terms()) {
    ZZ e = n.a * key.a + n.b * key.b;
    Series term = Series::monomial(s.order(), c, key.t_deg, key.a, key.b);
    if (e == 0)
      out += term;
    else
      out += term * cached_pow(f, e, cache);
  }
  return out;
}

}  // namespace

Series apply_autom(const Automorphism& th, const Series& s) {
  if (th.ux.order() != s.order() || th.uy.order() != s.order())
    throw InternalError("automorphism order mismatch");
  std::map<ZZ, Series> px, py;
  Series out(s.order());
  for (const auto& [key, c] : s.terms()) {
    Series term = Series::monomial(s.order(), c, key.t_deg, 0, 0);
    if (key.a != 0) term = term * cached_pow(th.ux, key.a, px);
    if (key.b != 0) term = term * cached_pow(th.uy, key.b, py);
    out += term;
  }
  return out;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  return {apply_autom(a, b.ux), apply_autom(a, b.uy)};
}

namespace {

// Log-derivative helpers: d/dxi scales each monomial by its x-exponent.
Series d_xi(const Series& s) {
  Series r(s.order());
  for (const auto& [key, c] : s.terms())
    if (key.a != 0) r.set_coeff(key.t_deg, key.a, key.b, c * key.a);
  return r;
}

Series d_eta(const Series& s) {
  Series r(s.order());
  for (const auto& [key, c] : s.terms())
    if (key.b != 0) r.set_coeff(key.t_deg, key.a, key.b, c * key.b);
  return r;
}

// Writes u = c z^w (1 + v); returns (w, log(1 + v)).
std::pair<Vec2, Series> log_unit(const Series& u) {
  Series head = u.graded_part(0);
  if (head.terms().size() != 1)
    throw InternalError("automorphism image is not a unit");
  const auto& [key, c] = *head.terms().begin();
  Series rest = u * Series::monomial(u.order(), Rat(1) / c, 0, -key.a, -key.b);
  return {Vec2{key.a, key.b}, rest.log()};
}

}  // namespace

bool is_symplectic(const Automorphism& th) {
  int order = th.ux.order();
  Series xinv = Series::monomial(order, Rat(1), 0, -1, 0);
  Series yinv = Series::monomial(order, Rat(1), 0, 0, -1);
  auto [wx, lx] = log_unit(th.ux * xinv);
  auto [wy, ly] = log_unit(th.uy * yinv);
  Series one = Series::one(order);
  Series a = one * Rat(1 + wx.a) + d_xi(lx);
  Series b = one * Rat(wx.b) + d_eta(lx);
  Series c = one * Rat(wy.a) + d_xi(ly);
  Series d = one * Rat(1 + wy.b) + d_eta(ly);
  return a * d - b * c == one;
}

namespace {

// Sector of v relative to direction r: 0 along r, 1 in (0, pi) ccw,
// 2 opposite r, 3 in (pi, 2 pi).
int sector(Vec2 r, Vec2 v) {
  ZZ cr = cross(r, v);
  if (cr > 0) return 1;
  if (cr < 0) return 3;
  return dot(r, v) > 0 ? 0 : 2;
}

struct Event {
  Vec2 p;            // crossing direction (primitive)
  size_t wall_idx;
};

std::vector<Event> crossing_events(const Diagram& d) {
  std::vector<Event> ev;
  for (size_t i = 0; i < d.walls.size(); ++i) {
    const Wall& w = d.walls[i];
    if (is_zero(w.m)) throw InternalError("wall without direction");
    Vec2 m = prim2(w.m);
    if (w.kind == WallKind::Ray) {
      ev.push_back({-m, i});
    } else {
      ev.push_back({m, i});
      ev.push_back({-m, i});
    }
  }
  return ev;
}

}  // namespace

Vec2 default_base_dir(const Diagram& d) {
  std::vector<Vec2> dirs;
  for (const Event& e : crossing_events(d)) dirs.push_back(e.p);
  std::sort(dirs.begin(), dirs.end(), [](Vec2 u, Vec2 v) {
    int su = sector(Vec2{1, 0}, u), sv = sector(Vec2{1, 0}, v);
    if (su != sv) return su < sv;
    ZZ cr = cross(u, v);
    if (cr != 0) return cr > 0;
    return u < v;
  });
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  if (dirs.empty()) return {1, 0};
  if (dirs.size() == 1) return {-dirs[0].b, dirs[0].a};
  Vec2 u = dirs[0], v = dirs[1];
  if (cross(u, v) > 0) return prim2(u + v);
  return {-u.b, u.a};
}

Automorphism loop_product(const Diagram& d, Vec2 base, int order) {
  if (is_zero(base)) throw InternalError("zero base direction");
  std::vector<Event> ev = crossing_events(d);
  for (const Event& e : ev)
    if (sector(base, e.p) == 0)
      throw InternalError("base direction lies on a wall support");
  std::stable_sort(ev.begin(), ev.end(), [&](const Event& x, const Event& y) {
    int sx = sector(base, x.p), sy = sector(base, y.p);
    if (sx != sy) return sx < sy;
    ZZ cr = cross(x.p, y.p);
    if (cr != 0) return cr > 0;
    return false;  // parallel events commute; keep wall order
  });
  std::vector<Series> trunc(d.walls.size(), Series(order));
  std::vector<std::map<ZZ, Series>> caches(d.walls.size());
  for (size_t i = 0; i < d.walls.size(); ++i)
    trunc[i] = d.walls[i].f.truncated(order);
  Automorphism acc = identity_autom(order);
  for (const Event& e : ev) {
    Vec2 n{e.p.b, -e.p.a};
    acc.ux = apply_crossing(acc.ux, trunc[e.wall_idx], n, caches[e.wall_idx]);
    acc.uy = apply_crossing(acc.uy, trunc[e.wall_idx], n, caches[e.wall_idx]);
  }
  return acc;
}

namespace {

struct Deviation {
  Rat gamma_x, gamma_y;
};

}  // namespace

Diagram scatter(const Diagram& d, int target_order) {
  if (d.order != target_order)
    throw InternalError("diagram order differs from scatter target");
  Diagram cur = d;
  validate_diagram(cur);
  for (int k = 1; k <= target_order; ++k) {
    Automorphism a = loop_product(cur, default_base_dir(cur), k);
    Series dx = a.ux - Series::monomial(k, Rat(1), 0, 1, 0);
    Series dy = a.uy - Series::monomial(k, Rat(1), 0, 0, 1);
    for (int j = 0; j < k; ++j)
      if (!dx.graded_part(j).is_zero() || !dy.graded_part(j).is_zero())
        throw InternalError("loop deviation below the current order");
    std::map<Vec2, Deviation> dev;
    Series gx = dx.graded_part(k), gy = dy.graded_part(k);
    for (const auto& [key, c] : gx.terms()) dev[Vec2{key.a - 1, key.b}].gamma_x = c;
    for (const auto& [key, c] : gy.terms()) dev[Vec2{key.a, key.b - 1}].gamma_y = c;
    if (dev.empty()) continue;
    std::map<Vec2, Series> inserts;  // keyed by emanation direction
    for (const auto& [m, g] : dev) {
      if (is_zero(m))
        throw InternalError("loop deviation has no monomial direction");
      if (m.a * g.gamma_x + m.b * g.gamma_y != 0)
        throw InternalError("loop deviation is not Hamiltonian");
      ZZ c2 = content2(m);
      Rat alpha = (m.b != 0) ? Rat(c2) * g.gamma_x / m.b : -Rat(c2) * g.gamma_y / m.a;
      Series factor = Series::one(target_order) +
                      Series::monomial(target_order, alpha, k, m.a, m.b);
      Vec2 p = prim2(-m);
      auto [it, inserted] = inserts.try_emplace(p, factor);
      if (!inserted) it->second *= factor;
    }
    for (auto& [p, g] : inserts) {
      bool merged = false;
      for (Wall& w : cur.walls) {
        if (w.kind == WallKind::Ray && w.m == -p) {
          w.f *= g;
          merged = true;
          break;
        }
      }
      if (!merged) cur.walls.push_back(Wall{WallKind::Ray, -p, g});
    }
    Automorphism check = loop_product(cur, default_base_dir(cur), k);
    if (check.ux != Series::monomial(k, Rat(1), 0, 1, 0) ||
        check.uy != Series::monomial(k, Rat(1), 0, 0, 1))
      throw InternalError("loop still deviates after correction");
  }
  return cur;
}

std::vector<GwRow> extract_gw(int l1, int l2, Vec2 out_dir, int order) {
  if (l1 < 1 || l2 < 1) throw ParseError("line multiplicities must be at least 1");
  if (is_zero(out_dir) || content2(out_dir) != 1)
    throw ParseError("outgoing direction must be primitive");
  Vec2 e1{1, 0}, e2{0, 1};
  if (out_dir == e1 || out_dir == -e1 || out_dir == e2 || out_dir == -e2)
    throw UnsupportedError("outgoing direction lies on an initial line");
  Series fx = (Series::one(order) + Series::monomial(order, Rat(1), 1, -1, 0)).pow(l1);
  Series fy = (Series::one(order) + Series::monomial(order, Rat(1), 1, 0, -1)).pow(l2);
  Diagram d{order, {Wall{WallKind::Line, Vec2{-1, 0}, fx},
                    Wall{WallKind::Line, Vec2{0, -1}, fy}}};
  Diagram full = scatter(d, order);
  std::vector<GwRow> rows;
  for (const Wall& w : full.walls) {
    if (w.kind != WallKind::Ray || support_dir(w) != out_dir) continue;
    Series lg = w.f.log();
    std::map<std::pair<ZZ, int>, Rat> by_deg;
    for (const auto& [key, c] : lg.terms()) {
      Vec2 mono{key.a, key.b};
      Vec2 p = prim2(mono);
      if (p != -out_dir)
        throw InternalError("outgoing wall carries a foreign monomial");
      by_deg[{content2(mono), key.t_deg}] += c;
    }
    for (const auto& [dk, c] : by_deg)
      rows.push_back(GwRow{dk.first, dk.second, c, c / dk.first});
    break;
  }
  return rows;
}

}  // namespace tropic
