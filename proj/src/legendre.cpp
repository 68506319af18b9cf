#include "tropic/legendre.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "tropic/errors.hpp"

namespace tropic {

namespace {

ZZ dot_vec(const VecZ& a, const VecZ& b) {
  ZZ s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VecZ neg(const VecZ& v) {
  VecZ out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

std::vector<int> shared_vids(const Cell& a, const Cell& b) {
  std::vector<int> out;
  std::set_intersection(a.vids.begin(), a.vids.end(), b.vids.begin(),
                        b.vids.end(), std::back_inserter(out));
  return out;
}

int local_rank(const TropicalManifold& m, int c, const std::vector<int>& vids) {
  if (vids.size() < 2) return 0;
  std::vector<VecZ> rows;
  const VecZ& x0 = cell_local(m, c, vids[0]);
  for (size_t i = 1; i < vids.size(); ++i) {
    VecZ r(m.dim);
    const VecZ& xi = cell_local(m, c, vids[i]);
    for (int j = 0; j < m.dim; ++j) r[j] = xi[j] - x0[j];
    rows.push_back(std::move(r));
  }
  return mat_rank(MatZ::from_rows(rows));
}

bool strictly_convex_at(const TropicalManifold& m, int v) {
  std::vector<int> cs = cells_with_vertex(m, v);
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j) {
      std::vector<int> shared = shared_vids(m.cells[cs[i]], m.cells[cs[j]]);
      if (local_rank(m, cs[i], shared) != m.dim - 1) continue;
      // The function on the far cell must rise strictly off the wall.
      int off = -1;
      for (int w : m.cells[cs[j]].vids)
        if (!std::binary_search(shared.begin(), shared.end(), w)) {
          off = w;
          break;
        }
      if (off < 0) return false;
      VecZ d = chart_dir(m, v, cs[j], off);
      ZZ rise = dot_vec(m.phi.at({v, cs[j]}), d) - dot_vec(m.phi.at({v, cs[i]}), d);
      if (rise <= 0) return false;
    }
  return true;
}

// Every wall of the fan at v must be shared with exactly one partner cell;
// otherwise the fan has boundary or branching and is not complete.
void require_complete_at(const TropicalManifold& m, int v) {
  std::vector<int> cs = cells_with_vertex(m, v);
  for (int c : cs) {
    const Cell& cell = m.cells[c];
    LatticePolytope lp = hull(cell.coords);
    if (lp.vertices.size() != cell.coords.size())
      throw UnsupportedError("cell " + std::to_string(c) +
                             " lists a point that is not one of its vertices");
    std::map<VecZ, int> vid_of;
    for (size_t i = 0; i < cell.coords.size(); ++i)
      vid_of[cell.coords[i]] = cell.vids[i];
    for (const Facet& f : lp.facets) {
      std::vector<int> wall;
      for (int i : f.vertex_ids) wall.push_back(vid_of.at(lp.vertices[i]));
      std::sort(wall.begin(), wall.end());
      if (!std::binary_search(wall.begin(), wall.end(), v)) continue;
      int partners = 0;
      for (int c2 : cs) {
        if (c2 == c) continue;
        if (std::includes(m.cells[c2].vids.begin(), m.cells[c2].vids.end(),
                          wall.begin(), wall.end()))
          ++partners;
      }
      if (partners != 1)
        throw UnsupportedError("the fan at vertex " + std::to_string(v) +
                               " is not complete");
    }
  }
}

}  // namespace

bool is_strictly_convex(const TropicalManifold& m) {
  if (!m.has_phi) return false;
  for (int v = 0; v < m.num_vertices; ++v)
    if (!strictly_convex_at(m, v)) return false;
  return true;
}

LatticePolytope newton_polytope(const TropicalManifold& m, int v) {
  if (v < 0 || v >= m.num_vertices)
    throw ParseError("vertex index out of range");
  if (!m.has_phi)
    throw UnsupportedError("manifold carries no piecewise linear function");
  require_complete_at(m, v);
  if (!strictly_convex_at(m, v))
    throw UnsupportedError("function is not strictly convex at vertex " +
                           std::to_string(v));
  std::vector<VecZ> pts;
  for (int c : cells_with_vertex(m, v)) pts.push_back(neg(m.phi.at({v, c})));
  return hull(pts);
}

TropicalManifold discrete_legendre(const TropicalManifold& m) {
  validate_manifold(m);
  if (!m.has_phi || !is_strictly_convex(m))
    throw UnsupportedError(
        "discrete Legendre transform needs a strictly convex function");
  for (int v = 0; v < m.num_vertices; ++v) require_complete_at(m, v);
  TropicalManifold d;
  d.dim = m.dim;
  d.num_vertices = static_cast<int>(m.cells.size());
  for (int v = 0; v < m.num_vertices; ++v) {
    Cell dual;
    dual.vids = cells_with_vertex(m, v);
    for (int c : dual.vids) {
      dual.coords.push_back(neg(m.phi.at({v, c})));
      d.charts[{c, v}] = mat_transpose(chart_at(m, v, c));
      d.phi[{c, v}] = neg(cell_local(m, c, v));
    }
    d.cells.push_back(std::move(dual));
  }
  d.has_phi = true;
  try {
    validate_manifold(d);
  } catch (const ParseError& e) {
    throw InternalError(std::string("transform produced an invalid complex: ") +
                        e.what());
  }
  return d;
}

namespace {

// Unimodular L and integral t with L * xa[i] + t = xb[i] for all i.
bool affine_match(const std::vector<VecZ>& xa, const std::vector<VecZ>& xb,
                  int dim, MatZ& l_out) {
  int k = static_cast<int>(xa.size());
  MatZ x(dim, k - 1), y(dim, k - 1);
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < dim; ++i) {
      x.at(i, j - 1) = xa[j][i] - xa[0][i];
      y.at(i, j - 1) = xb[j][i] - xb[0][i];
    }
  // Greedily pick dim independent edge columns.
  std::vector<int> pick;
  std::vector<VecZ> cols;
  for (int j = 0; j < k - 1 && static_cast<int>(pick.size()) < dim; ++j) {
    cols.push_back(x.col(j));
    if (mat_rank(MatZ::from_cols(cols)) == static_cast<int>(cols.size()))
      pick.push_back(j);
    else
      cols.pop_back();
  }
  if (static_cast<int>(pick.size()) != dim) return false;
  MatZ xs(dim, dim), ys(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      xs.at(i, j) = x.at(i, pick[j]);
      ys.at(i, j) = y.at(i, pick[j]);
    }
  MatZ l(dim, dim);
  MatZ xst = mat_transpose(xs);
  for (int i = 0; i < dim; ++i) {
    std::vector<Rat> rhs, sol;
    for (int j = 0; j < dim; ++j) rhs.push_back(Rat(ys.at(i, j)));
    if (!solve_unique(xst, rhs, sol)) return false;
    for (int j = 0; j < dim; ++j) {
      if (denominator(sol[j]) != 1) return false;
      l.at(i, j) = static_cast<ZZ>(numerator(sol[j]));
    }
  }
  ZZ det = mat_det(l);
  if (det != 1 && det != -1) return false;
  VecZ t(dim);
  VecZ lx0 = mat_apply(l, xa[0]);
  for (int i = 0; i < dim; ++i) t[i] = xb[0][i] - lx0[i];
  for (int p = 0; p < k; ++p) {
    VecZ im = mat_apply(l, xa[p]);
    for (int i = 0; i < dim; ++i)
      if (im[i] + t[i] != xb[p][i]) return false;
  }
  l_out = l;
  return true;
}

struct IsoSearch {
  const TropicalManifold& a;
  const TropicalManifold& b;
  std::map<std::vector<int>, int> bcells;
  std::vector<std::vector<int>> a_incident;
  std::vector<std::vector<size_t>> profile_a, profile_b;
  std::vector<int> perm;
  std::vector<char> used;

  IsoSearch(const TropicalManifold& a_, const TropicalManifold& b_)
      : a(a_), b(b_), perm(a_.num_vertices, -1), used(b_.num_vertices, 0) {
    for (size_t c = 0; c < b.cells.size(); ++c)
      bcells[b.cells[c].vids] = static_cast<int>(c);
    a_incident.resize(a.num_vertices);
    profile_a.resize(a.num_vertices);
    profile_b.resize(b.num_vertices);
    for (size_t c = 0; c < a.cells.size(); ++c)
      for (int v : a.cells[c].vids) {
        a_incident[v].push_back(static_cast<int>(c));
        profile_a[v].push_back(a.cells[c].vids.size());
      }
    for (const Cell& cell : b.cells)
      for (int v : cell.vids) profile_b[v].push_back(cell.vids.size());
    for (auto& p : profile_a) std::sort(p.begin(), p.end());
    for (auto& p : profile_b) std::sort(p.begin(), p.end());
  }

  bool cells_still_match(int v) {
    for (int c : a_incident[v]) {
      std::vector<int> image;
      bool full = true;
      for (int x : a.cells[c].vids) {
        if (perm[x] < 0) {
          full = false;
          break;
        }
        image.push_back(perm[x]);
      }
      if (!full) continue;
      std::sort(image.begin(), image.end());
      if (!bcells.count(image)) return false;
    }
    return true;
  }

  bool geometric() {
    int dim = a.dim;
    std::vector<int> cmap(a.cells.size());
    std::vector<MatZ> l(a.cells.size());
    for (size_t c = 0; c < a.cells.size(); ++c) {
      std::vector<int> image;
      for (int x : a.cells[c].vids) image.push_back(perm[x]);
      std::sort(image.begin(), image.end());
      auto it = bcells.find(image);
      if (it == bcells.end()) return false;
      cmap[c] = it->second;
      std::vector<VecZ> xb;
      for (int x : a.cells[c].vids)
        xb.push_back(cell_local(b, cmap[c], perm[x]));
      if (!affine_match(a.cells[c].coords, xb, dim, l[c])) return false;
    }
    for (int v = 0; v < a.num_vertices; ++v) {
      if (a_incident[v].empty()) continue;
      MatZ g;
      bool have = false;
      for (int c : a_incident[v]) {
        MatZ lhs = mat_mul(chart_at(b, perm[v], cmap[c]), l[c]);
        MatZ cand = mat_mul(lhs, inverse_unimodular(chart_at(a, v, c)));
        if (!have) {
          g = cand;
          have = true;
        } else if (cand != g) {
          return false;
        }
      }
      if (a.has_phi) {
        VecZ shift;
        bool have_shift = false;
        for (int c : a_incident[v]) {
          VecZ pulled =
              mat_apply(mat_transpose(g), b.phi.at({perm[v], cmap[c]}));
          const VecZ& sa = a.phi.at({v, c});
          VecZ diff(dim);
          for (int i = 0; i < dim; ++i) diff[i] = pulled[i] - sa[i];
          if (!have_shift) {
            shift = diff;
            have_shift = true;
          } else if (diff != shift) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool search(int v) {
    if (v == a.num_vertices) return geometric();
    for (int w = 0; w < b.num_vertices; ++w) {
      if (used[w] || profile_a[v] != profile_b[w]) continue;
      perm[v] = w;
      used[w] = 1;
      if (cells_still_match(v) && search(v + 1)) return true;
      perm[v] = -1;
      used[w] = 0;
    }
    return false;
  }
};

}  // namespace

bool manifolds_isomorphic(const TropicalManifold& a, const TropicalManifold& b) {
  if (a.dim != b.dim || a.num_vertices != b.num_vertices ||
      a.cells.size() != b.cells.size() || a.has_phi != b.has_phi)
    return false;
  IsoSearch s(a, b);
  return s.search(0);
}

}  // namespace tropic
