#include "tropic/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropic/errors.hpp"

namespace tropic {

namespace {

int affine_rank(const std::vector<VecZ>& pts) {
  if (pts.empty()) return -1;
  std::vector<VecZ> rows;
  for (size_t i = 1; i < pts.size(); ++i) {
    VecZ r(pts[i].size());
    for (size_t j = 0; j < r.size(); ++j) r[j] = pts[i][j] - pts[0][j];
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return 0;
  return mat_rank(MatZ::from_rows(rows));
}

ZZ cross2(const VecZ& o, const VecZ& a, const VecZ& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Convex position vertices in counterclockwise cyclic order (monotone chain).
std::vector<VecZ> ccw_hull_2d(std::vector<VecZ> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n < 3) throw UnsupportedError("polygon hull needs a full-dimensional set");
  std::vector<VecZ> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw UnsupportedError("polygon hull needs a full-dimensional set");
  return h;
}

LatticePolytope finish(int dim, std::vector<VecZ> verts,
                       std::vector<std::pair<VecZ, ZZ>> planes,
                       const std::vector<VecZ>& all_pts) {
  LatticePolytope p;
  p.dim = dim;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  p.vertices = std::move(verts);
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
  (void)all_pts;
  for (const auto& [nu, off] : planes) {
    Facet f;
    f.normal = nu;
    f.offset = off;
    for (int i = 0; i < static_cast<int>(p.vertices.size()); ++i) {
      ZZ v = 0;
      for (size_t j = 0; j < nu.size(); ++j) v += nu[j] * p.vertices[i][j];
      if (v == -off) f.vertex_ids.push_back(i);
    }
    p.facets.push_back(std::move(f));
  }
  return p;
}

LatticePolytope hull_1d(const std::vector<VecZ>& points) {
  ZZ lo = points[0][0], hi = points[0][0];
  for (const VecZ& q : points) {
    lo = std::min(lo, q[0]);
    hi = std::max(hi, q[0]);
  }
  std::vector<std::pair<VecZ, ZZ>> planes = {{{1}, -lo}, {{-1}, hi}};
  return finish(1, {{lo}, {hi}}, std::move(planes), points);
}

LatticePolytope hull_2d(const std::vector<VecZ>& points) {
  std::vector<VecZ> cyc = ccw_hull_2d(points);
  std::vector<std::pair<VecZ, ZZ>> planes;
  for (size_t i = 0; i < cyc.size(); ++i) {
    const VecZ& a = cyc[i];
    const VecZ& b = cyc[(i + 1) % cyc.size()];
    VecZ nu = primitive({-(b[1] - a[1]), b[0] - a[0]});
    // Inner normal for ccw orientation points left of the edge.
    ZZ off = -(nu[0] * a[0] + nu[1] * a[1]);
    planes.emplace_back(nu, off);
  }
  return finish(2, cyc, std::move(planes), points);
}

LatticePolytope hull_nd(const std::vector<VecZ>& points, int dim) {
  size_t n = points.size();
  std::vector<std::pair<VecZ, ZZ>> planes;
  std::vector<int> idx(dim);
  // Enumerate candidate hyperplanes through dim points.
  std::vector<int> comb(dim);
  for (int i = 0; i < dim; ++i) comb[i] = i;
  auto advance = [&]() {
    int i = dim - 1;
    while (i >= 0 && comb[i] == static_cast<int>(n) - dim + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < dim; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  std::set<std::pair<VecZ, ZZ>> seen;
  do {
    std::vector<VecZ> rows;
    for (int i = 1; i < dim; ++i) {
      VecZ r(dim);
      for (int j = 0; j < dim; ++j)
        r[j] = points[comb[i]][j] - points[comb[0]][j];
      rows.push_back(std::move(r));
    }
    auto ker = kernel_basis(MatZ::from_rows(rows));
    if (ker.size() != 1) continue;
    VecZ nu = primitive(ker[0]);
    ZZ v0 = 0;
    for (int j = 0; j < dim; ++j) v0 += nu[j] * points[comb[0]][j];
    ZZ lo = v0, hi = v0;
    for (const VecZ& q : points) {
      ZZ v = 0;
      for (int j = 0; j < dim; ++j) v += nu[j] * q[j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo == hi) continue;
    if (v0 == lo)
      seen.emplace(nu, -v0);
    else if (v0 == hi) {
      for (ZZ& x : nu) x = -x;
      seen.emplace(nu, v0);
    }
  } while (advance());
  planes.assign(seen.begin(), seen.end());
  // Vertices: points whose tight facet normals span the whole space.
  std::vector<VecZ> verts;
  for (const VecZ& q : points) {
    std::vector<VecZ> tight;
    for (const auto& [nu, off] : planes) {
      ZZ v = 0;
      for (int j = 0; j < dim; ++j) v += nu[j] * q[j];
      if (v == -off) tight.push_back(nu);
    }
    if (static_cast<int>(tight.size()) >= dim &&
        mat_rank(MatZ::from_rows(tight)) == dim)
      verts.push_back(q);
  }
  return finish(dim, std::move(verts), std::move(planes), points);
}

}  // namespace

LatticePolytope hull(const std::vector<VecZ>& points) {
  if (points.empty()) throw UnsupportedError("hull of an empty set");
  int dim = static_cast<int>(points[0].size());
  for (const VecZ& p : points)
    if (static_cast<int>(p.size()) != dim)
      throw InternalError("mixed dimensions in hull input");
  if (affine_rank(points) != dim)
    throw UnsupportedError("hull input is not full-dimensional");
  if (dim == 1) return hull_1d(points);
  if (dim == 2) return hull_2d(points);
  return hull_nd(points, dim);
}

std::vector<PolyFace> proper_faces(const LatticePolytope& p) {
  std::set<std::vector<int>> sets;
  for (const Facet& f : p.facets) sets.insert(f.vertex_ids);
  // Close under intersection.
  for (;;) {
    std::set<std::vector<int>> next = sets;
    for (const auto& a : sets)
      for (const auto& b : sets) {
        std::vector<int> c;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(c));
        if (!c.empty()) next.insert(std::move(c));
      }
    if (next.size() == sets.size()) break;
    sets.swap(next);
  }
  std::vector<PolyFace> out;
  for (const auto& s : sets) {
    std::vector<VecZ> pts;
    for (int i : s) pts.push_back(p.vertices[i]);
    out.push_back(PolyFace{s, affine_rank(pts)});
  }
  std::sort(out.begin(), out.end(), [](const PolyFace& a, const PolyFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertex_ids < b.vertex_ids;
  });
  return out;
}

bool contains_origin_interior(const LatticePolytope& p) {
  for (const Facet& f : p.facets)
    if (!(f.offset > 0)) return false;
  return true;
}

bool is_reflexive(const LatticePolytope& p) {
  if (p.facets.empty()) return false;
  for (const Facet& f : p.facets)
    if (f.offset != 1) return false;
  return true;
}

LatticePolytope polar_dual(const LatticePolytope& p) {
  if (!is_reflexive(p))
    throw UnsupportedError("polar dual requires a reflexive polytope");
  std::vector<VecZ> verts;
  for (const Facet& f : p.facets) verts.push_back(f.normal);
  return hull(verts);
}

std::vector<VecZ> lattice_points(const LatticePolytope& p) {
  int dim = p.dim;
  VecZ lo(dim), hi(dim);
  for (int j = 0; j < dim; ++j) {
    lo[j] = hi[j] = p.vertices[0][j];
    for (const VecZ& v : p.vertices) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  }
  std::vector<VecZ> out;
  VecZ cur = lo;
  for (;;) {
    bool inside = true;
    for (const Facet& f : p.facets) {
      ZZ v = 0;
      for (int j = 0; j < dim; ++j) v += f.normal[j] * cur[j];
      if (v < -f.offset) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(cur);
    int j = 0;
    while (j < dim && cur[j] == hi[j]) {
      cur[j] = lo[j];
      ++j;
    }
    if (j == dim) break;
    ++cur[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_interior_points(const LatticePolytope& p) {
  int cnt = 0;
  for (const VecZ& q : lattice_points(p)) {
    bool strict = true;
    for (const Facet& f : p.facets) {
      ZZ v = 0;
      for (size_t j = 0; j < q.size(); ++j) v += f.normal[j] * q[j];
      if (v == -f.offset) {
        strict = false;
        break;
      }
    }
    if (strict) ++cnt;
  }
  return cnt;
}

int count_boundary_points(const LatticePolytope& p) {
  return static_cast<int>(lattice_points(p).size()) - count_interior_points(p);
}

bool unimodular_equivalent_2d(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.dim != 2 || q.dim != 2)
    throw InternalError("unimodular comparison is two-dimensional");
  if (p.vertices.size() != q.vertices.size()) return false;
  if (lattice_points(p).size() != lattice_points(q).size()) return false;
  if (count_interior_points(p) != count_interior_points(q)) return false;
  std::vector<VecZ> vp = ccw_hull_2d(p.vertices);
  std::vector<VecZ> vq = ccw_hull_2d(q.vertices);
  size_t n = vp.size();
  std::set<VecZ> qset(q.vertices.begin(), q.vertices.end());
  for (size_t r = 0; r < n; ++r) {
    for (int flip = 0; flip < 2; ++flip) {
      const VecZ& a0 = vp[0];
      const VecZ& a1 = vp[1];
      const VecZ& b0 = vq[r];
      const VecZ& b1 = flip ? vq[(r + n - 1) % n] : vq[(r + 1) % n];
      // Solve g * [a0 a1] = [b0 b1] over Q, keep integral det +-1 solutions.
      ZZ det = a0[0] * a1[1] - a0[1] * a1[0];
      if (det == 0) continue;
      // adj([a0 a1]) applied on the right.
      ZZ g00 = b0[0] * a1[1] - b1[0] * a0[1];
      ZZ g01 = -b0[0] * a1[0] + b1[0] * a0[0];
      ZZ g10 = b0[1] * a1[1] - b1[1] * a0[1];
      ZZ g11 = -b0[1] * a1[0] + b1[1] * a0[0];
      if (g00 % det || g01 % det || g10 % det || g11 % det) continue;
      MatZ g = MatZ::from_rows({{g00 / det, g01 / det}, {g10 / det, g11 / det}});
      ZZ d = mat_det(g);
      if (d != 1 && d != -1) continue;
      bool ok = true;
      for (const VecZ& v : p.vertices)
        if (!qset.count(mat_apply(g, v))) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
  }
  return false;
}

bool affine_equivalent_2d(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.dim != 2 || q.dim != 2)
    throw InternalError("unimodular comparison is two-dimensional");
  if (p.vertices.size() != q.vertices.size()) return false;
  if (lattice_points(p).size() != lattice_points(q).size()) return false;
  if (count_interior_points(p) != count_interior_points(q)) return false;
  std::vector<VecZ> vp = ccw_hull_2d(p.vertices);
  std::vector<VecZ> vq = ccw_hull_2d(q.vertices);
  size_t n = vp.size();
  // Compare anchored at a vertex: map edge fans, translation handled by
  // subtracting the anchor on both sides.
  VecZ a0 = {vp[1][0] - vp[0][0], vp[1][1] - vp[0][1]};
  VecZ a1 = {vp[2 % n][0] - vp[0][0], vp[2 % n][1] - vp[0][1]};
  for (size_t r = 0; r < n; ++r) {
    for (int flip = 0; flip < 2; ++flip) {
      auto at = [&](size_t i) -> const VecZ& {
        return flip ? vq[(r + 2 * n - i) % n] : vq[(r + i) % n];
      };
      VecZ b0 = {at(1)[0] - at(0)[0], at(1)[1] - at(0)[1]};
      VecZ b1 = {at(2)[0] - at(0)[0], at(2)[1] - at(0)[1]};
      ZZ det = a0[0] * a1[1] - a0[1] * a1[0];
      if (det == 0) continue;
      ZZ g00 = b0[0] * a1[1] - b1[0] * a0[1];
      ZZ g01 = -b0[0] * a1[0] + b1[0] * a0[0];
      ZZ g10 = b0[1] * a1[1] - b1[1] * a0[1];
      ZZ g11 = -b0[1] * a1[0] + b1[1] * a0[0];
      if (g00 % det || g01 % det || g10 % det || g11 % det) continue;
      MatZ g = MatZ::from_rows({{g00 / det, g01 / det}, {g10 / det, g11 / det}});
      ZZ d = mat_det(g);
      if (d != 1 && d != -1) continue;
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) {
        VecZ rel = {vp[i][0] - vp[0][0], vp[i][1] - vp[0][1]};
        VecZ img = mat_apply(g, rel);
        ok = img[0] == at(i)[0] - at(0)[0] && img[1] == at(i)[1] - at(0)[1];
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace tropic
