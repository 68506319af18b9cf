#include "tropic/models.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "tropic/errors.hpp"

namespace tropic {

namespace {

ZZ dot_vec(const VecZ& a, const VecZ& b) {
  ZZ s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VecZ sub_vec(const VecZ& a, const VecZ& b) {
  VecZ d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Integral local coordinates of `points` within their saturated affine span.
std::vector<VecZ> local_coords(const std::vector<VecZ>& points, int ambient_dim,
                               int expect_dim, MatZ* basis_out) {
  std::vector<VecZ> edges;
  for (size_t i = 1; i < points.size(); ++i)
    edges.push_back(sub_vec(points[i], points[0]));
  std::vector<VecZ> basis = saturation_basis(edges, ambient_dim);
  if (static_cast<int>(basis.size()) != expect_dim)
    throw ParseError("cell is not full-dimensional in the boundary");
  MatZ s = MatZ::from_cols(basis);
  std::vector<VecZ> out;
  for (const VecZ& p : points) {
    std::vector<Rat> rhs, sol;
    for (ZZ x : sub_vec(p, points[0])) rhs.push_back(Rat(x));
    if (!solve_unique(s, rhs, sol))
      throw InternalError("cell point outside its own span");
    VecZ y;
    for (const Rat& r : sol) {
      if (denominator(r) != 1)
        throw InternalError("cell point not integral in saturated basis");
      y.push_back(static_cast<ZZ>(numerator(r)));
    }
    out.push_back(y);
  }
  if (basis_out) *basis_out = s;
  return out;
}

// Shared assembly: vertices (ambient, lex-sorted), one facet normal per cell.
EmbeddedComplex assemble(const LatticePolytope& delta,
                         const std::vector<VecZ>& points,
                         const std::vector<std::vector<int>>& cells_in) {
  EmbeddedComplex ec;
  ec.hull = delta;
  ec.ambient = points;
  TropicalManifold& m = ec.man;
  m.dim = delta.dim - 1;
  m.num_vertices = static_cast<int>(points.size());
  // Frames: projection chart data per vertex.
  for (const VecZ& p : points) ec.frame.push_back(complete_primitive(primitive(p)));
  for (const std::vector<int>& vids : cells_in) {
    Cell cell;
    cell.vids = vids;
    std::vector<VecZ> pts;
    for (int v : vids) pts.push_back(points[v]);
    MatZ basis;
    cell.coords = local_coords(pts, delta.dim, m.dim, &basis);
    int ci = static_cast<int>(m.cells.size());
    // Identify the unique facet of the polytope carrying this cell.
    int found = -1;
    for (size_t f = 0; f < delta.facets.size(); ++f) {
      bool tight = true;
      for (const VecZ& p : pts)
        if (dot_vec(delta.facets[f].normal, p) != -delta.facets[f].offset) {
          tight = false;
          break;
        }
      if (tight) {
        if (found >= 0) throw ParseError("cell is contained in a ridge");
        found = static_cast<int>(f);
      }
    }
    if (found < 0) throw ParseError("cell does not lie in a single facet");
    ec.cell_normal.push_back(delta.facets[found].normal);
    for (int v : vids) {
      // Chart linear part: projection along the vertex ray composed with the
      // cell basis; unimodular because the facet has lattice distance one.
      const MatZ& u = ec.frame[v];
      MatZ uinv = inverse_unimodular(u);
      MatZ a(m.dim, m.dim);
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) {
          ZZ s = 0;
          for (int k = 0; k < delta.dim; ++k) s += uinv.at(i + 1, k) * basis.at(k, j);
          a.at(i, j) = s;
        }
      ZZ d = mat_det(a);
      if (d != 1 && d != -1)
        throw InternalError("projection chart is not unimodular");
      m.charts[{v, ci}] = a;
    }
    m.cells.push_back(std::move(cell));
  }
  return ec;
}

}  // namespace

EmbeddedComplex boundary_complex(const LatticePolytope& delta) {
  if (!is_reflexive(delta))
    throw UnsupportedError("boundary complex needs a reflexive polytope");
  std::vector<std::vector<int>> cells;
  for (const Facet& f : delta.facets) cells.push_back(f.vertex_ids);
  std::sort(cells.begin(), cells.end());
  return assemble(delta, delta.vertices, cells);
}

EmbeddedComplex boundary_complex_subdivided(
    const LatticePolytope& delta, const std::vector<VecZ>& points,
    const std::vector<std::vector<int>>& cells) {
  if (!is_reflexive(delta))
    throw UnsupportedError("boundary complex needs a reflexive polytope");
  // Canonical order: points lex-sorted, cells ascending vid lists, sorted.
  std::vector<VecZ> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("duplicate subdivision point");
  std::map<VecZ, int> id;
  for (size_t i = 0; i < sorted.size(); ++i) id[sorted[i]] = static_cast<int>(i);
  for (const VecZ& p : sorted) {
    bool on_boundary = false;
    for (const Facet& f : delta.facets) {
      ZZ v = dot_vec(f.normal, p);
      if (v < -f.offset) throw ParseError("subdivision point outside the polytope");
      if (v == -f.offset) on_boundary = true;
    }
    if (!on_boundary) throw ParseError("subdivision point interior to the polytope");
  }
  std::vector<std::vector<int>> remapped;
  for (const std::vector<int>& cell : cells) {
    if (cell.size() != static_cast<size_t>(delta.dim))
      throw UnsupportedError("only simplicial subdivisions are supported");
    std::vector<int> vids;
    for (int v : cell) {
      if (v < 0 || v >= static_cast<int>(points.size()))
        throw ParseError("cell vertex index out of range");
      vids.push_back(id.at(points[v]));
    }
    std::sort(vids.begin(), vids.end());
    if (std::adjacent_find(vids.begin(), vids.end()) != vids.end())
      throw ParseError("cell repeats a vertex");
    remapped.push_back(std::move(vids));
  }
  std::sort(remapped.begin(), remapped.end());
  if (std::adjacent_find(remapped.begin(), remapped.end()) != remapped.end())
    throw ParseError("duplicate cell");
  // Closed-covering axiom: every codimension-one subface in exactly two cells.
  std::map<std::vector<int>, int> seen;
  for (const std::vector<int>& vids : remapped)
    for (size_t drop = 0; drop < vids.size(); ++drop) {
      std::vector<int> face;
      for (size_t i = 0; i < vids.size(); ++i)
        if (i != drop) face.push_back(vids[i]);
      ++seen[face];
    }
  for (const auto& [face, count] : seen) {
    (void)face;
    if (count != 2)
      throw ParseError("decomposition is not closed: a codimension-one face is in " +
                       std::to_string(count) + " cells");
  }
  return assemble(delta, sorted, remapped);
}

void canonical_phi(EmbeddedComplex& ec) {
  TropicalManifold& m = ec.man;
  m.phi.clear();
  for (int v = 0; v < m.num_vertices; ++v) {
    std::vector<int> cs = cells_with_vertex(m, v);
    if (cs.empty()) throw InternalError("isolated vertex");
    const VecZ& n0 = ec.cell_normal[cs.front()];
    for (int c : cs) {
      VecZ w = sub_vec(n0, ec.cell_normal[c]);
      VecZ s(m.dim);
      for (int j = 0; j < m.dim; ++j) s[j] = dot_vec(w, ec.frame[v].col(j + 1));
      m.phi[{v, c}] = s;
    }
  }
  m.has_phi = true;
}

LatticePolytope reflexive_simplex(int dim, int k) {
  std::vector<VecZ> vs;
  VecZ base(dim, -1);
  vs.push_back(base);
  for (int i = 0; i < dim; ++i) {
    VecZ v = base;
    v[i] += k;
    vs.push_back(v);
  }
  return hull(vs);
}

EmbeddedComplex quartic_complex() {
  EmbeddedComplex ec = boundary_complex(reflexive_simplex(3, 4));
  canonical_phi(ec);
  return ec;
}

EmbeddedComplex quintic_complex() {
  LatticePolytope delta = reflexive_simplex(4, 5);
  const int k = 5;
  std::vector<VecZ> points;
  std::vector<std::vector<int>> cells;
  std::map<VecZ, int> id;
  auto point_id = [&](const VecZ& b) {
    VecZ amb(4);
    for (int i = 0; i < 4; ++i) amb[i] = b[i] - 1;
    auto [it, fresh] = id.try_emplace(amb, static_cast<int>(points.size()));
    if (fresh) points.push_back(amb);
    return it->second;
  };
  // Facet f < 4 fixes b[f] = 0; facet 4 is the slanted one (sum = k).  Local
  // coordinates u parameterize the facet as k * (standard 3-simplex).
  auto embed = [&](int f, const VecZ& u) {
    VecZ b(4, 0);
    if (f < 4) {
      int t = 0;
      for (int i = 0; i < 4; ++i)
        if (i != f) b[i] = u[t++];
    } else {
      b = {u[0], u[1], u[2], k - u[0] - u[1] - u[2]};
    }
    return b;
  };
  for (int f = 0; f < 5; ++f) {
    auto add_cell = [&](const std::vector<VecZ>& us) {
      std::vector<int> vids;
      for (const VecZ& u : us) vids.push_back(point_id(embed(f, u)));
      cells.push_back(vids);
    };
    for (ZZ x = 0; x < k; ++x)
      for (ZZ y = 0; x + y < k; ++y)
        for (ZZ z = 0; x + y + z < k; ++z) {
          VecZ q = {x, y, z};
          auto off = [&](ZZ a, ZZ b, ZZ c) { return VecZ{x + a, y + b, z + c}; };
          // Upward unit simplex at q.
          add_cell({q, off(1, 0, 0), off(0, 1, 0), off(0, 0, 1)});
          if (x + y + z + 2 <= k) {
            // Octahedron between the levels, split along a fixed diagonal.
            VecZ a = off(1, 0, 0), fa = off(0, 1, 1);
            VecZ b2 = off(0, 1, 0), c2 = off(0, 0, 1);
            VecZ d2 = off(1, 1, 0), e2 = off(1, 0, 1);
            add_cell({a, fa, b2, d2});
            add_cell({a, fa, d2, e2});
            add_cell({a, fa, e2, c2});
            add_cell({a, fa, c2, b2});
          }
          if (x + y + z + 3 <= k)
            // Downward unit simplex.
            add_cell({off(1, 1, 0), off(1, 0, 1), off(0, 1, 1), off(1, 1, 1)});
        }
  }
  EmbeddedComplex ec = boundary_complex_subdivided(delta, points, cells);
  canonical_phi(ec);
  return ec;
}

TropicalManifold focus_focus_manifold() {
  TropicalManifold m;
  m.dim = 2;
  m.num_vertices = 4;
  m.cells.push_back({{0, 1, 2}, {{0, 0}, {1, 0}, {0, 1}}});
  m.cells.push_back({{1, 2, 3}, {{1, 0}, {0, 1}, {1, 1}}});
  MatZ eye = MatZ::identity(2);
  for (int v : {0, 1, 2}) m.charts[{v, 0}] = eye;
  for (int v : {1, 2, 3}) m.charts[{v, 1}] = eye;
  // Crossing the cut at vertex 2 shears along the shared edge.
  m.charts[{2, 1}] = MatZ::from_rows({{0, -1}, {1, 2}});
  // The function vanishing on the first triangle with unit kink.
  m.phi[{0, 0}] = {0, 0};
  m.phi[{1, 0}] = {0, 0};
  m.phi[{2, 0}] = {0, 0};
  m.phi[{1, 1}] = {1, 1};
  m.phi[{2, 1}] = {1, 1};
  m.phi[{3, 1}] = {1, 1};
  m.has_phi = true;
  return m;
}

TropicalManifold circle_complex(int n) {
  if (n < 2) throw UnsupportedError("circle needs at least two segments");
  TropicalManifold m;
  m.dim = 1;
  m.num_vertices = n;
  MatZ one = MatZ::identity(1);
  for (int i = 0; i < n; ++i) {
    int a = i, b = (i + 1) % n;
    Cell cell;
    if (a < b)
      cell = {{a, b}, {{0}, {1}}};
    else
      cell = {{b, a}, {{1}, {0}}};
    int ci = static_cast<int>(m.cells.size());
    m.charts[{a, ci}] = one;
    m.charts[{b, ci}] = one;
    // Slope 0 ahead of the vertex, -1 behind: the standard convex kink.
    m.phi[{a, ci}] = {0};
    m.phi[{b, ci}] = {-1};
    m.cells.push_back(std::move(cell));
  }
  m.has_phi = true;
  return m;
}

}  // namespace tropic
