#include "tropic/complex.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tropic/errors.hpp"

namespace tropic {

namespace {

MatZ edge_matrix(const Cell& cell, int dim) {
  MatZ m(dim, static_cast<int>(cell.coords.size()) - 1);
  for (int j = 1; j < static_cast<int>(cell.coords.size()); ++j)
    for (int i = 0; i < dim; ++i)
      m.at(i, j - 1) = cell.coords[j][i] - cell.coords[0][i];
  return m;
}

ZZ dot_vec(const VecZ& a, const VecZ& b) {
  ZZ s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

VecZ chart_dir(const TropicalManifold& m, int v, int c, int w) {
  // Direction from v toward w in the chart at v, through cell c.
  const VecZ& xv = cell_local(m, c, v);
  const VecZ& xw = cell_local(m, c, w);
  VecZ d(xv.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = xw[i] - xv[i];
  return mat_apply(chart_at(m, v, c), d);
}

void validate_manifold(const TropicalManifold& m) {
  if (m.dim < 1) throw ParseError("manifold dimension must be positive");
  if (m.num_vertices < 1) throw ParseError("manifold has no vertices");
  if (m.cells.empty()) throw ParseError("manifold has no maximal cells");
  for (size_t ci = 0; ci < m.cells.size(); ++ci) {
    const Cell& cell = m.cells[ci];
    const std::string where = " in cell " + std::to_string(ci);
    if (cell.vids.size() < static_cast<size_t>(m.dim) + 1)
      throw ParseError("too few vertices" + where);
    if (cell.vids.size() != cell.coords.size())
      throw ParseError("vertex/coordinate count mismatch" + where);
    for (size_t i = 0; i < cell.vids.size(); ++i) {
      if (cell.vids[i] < 0 || cell.vids[i] >= m.num_vertices)
        throw ParseError("vertex label out of range" + where);
      if (i && cell.vids[i] <= cell.vids[i - 1])
        throw ParseError("vertex labels not ascending" + where);
      if (cell.coords[i].size() != static_cast<size_t>(m.dim))
        throw ParseError("coordinate dimension mismatch" + where);
    }
    if (mat_rank(edge_matrix(cell, m.dim)) != m.dim)
      throw ParseError("cell coordinates do not span" + where);
    for (int v : cell.vids) {
      auto it = m.charts.find({v, static_cast<int>(ci)});
      if (it == m.charts.end())
        throw ParseError("missing chart for vertex " + std::to_string(v) + where);
      const MatZ& a = it->second;
      if (a.rows != m.dim || a.cols != m.dim)
        throw ParseError("chart of wrong shape" + where);
      ZZ d = mat_det(a);
      if (d != 1 && d != -1)
        throw ParseError("chart not unimodular for vertex " + std::to_string(v) + where);
    }
  }
  for (const auto& [key, a] : m.charts) {
    (void)a;
    auto [v, c] = key;
    if (c < 0 || c >= static_cast<int>(m.cells.size()) ||
        !std::binary_search(m.cells[c].vids.begin(), m.cells[c].vids.end(), v))
      throw ParseError("chart attached to a non-incident pair");
  }
  if (m.has_phi) {
    for (size_t ci = 0; ci < m.cells.size(); ++ci)
      for (int v : m.cells[ci].vids) {
        auto it = m.phi.find({v, static_cast<int>(ci)});
        if (it == m.phi.end())
          throw ParseError("missing slope for vertex " + std::to_string(v) +
                           " in cell " + std::to_string(ci));
        if (it->second.size() != static_cast<size_t>(m.dim))
          throw ParseError("slope of wrong dimension");
      }
    // Continuity: the two local values of the function agree on every shared
    // vertex direction.
    for (int v = 0; v < m.num_vertices; ++v) {
      std::vector<int> cs = cells_with_vertex(m, v);
      for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = i + 1; j < cs.size(); ++j)
          for (int w : m.cells[cs[i]].vids) {
            if (w == v) continue;
            const std::vector<int>& other = m.cells[cs[j]].vids;
            if (!std::binary_search(other.begin(), other.end(), w)) continue;
            ZZ a = dot_vec(m.phi.at({v, cs[i]}), chart_dir(m, v, cs[i], w));
            ZZ b = dot_vec(m.phi.at({v, cs[j]}), chart_dir(m, v, cs[j], w));
            if (a != b)
              throw ParseError("slopes discontinuous at vertex " + std::to_string(v));
          }
    }
  }
  // Where two cells meet, the charts of every shared vertex must place the
  // shared face consistently, and (with phi) the kink covector across a
  // common wall must not depend on the vertex where it is measured.
  for (size_t ci = 0; ci < m.cells.size(); ++ci)
    for (size_t cj = ci + 1; cj < m.cells.size(); ++cj) {
      std::vector<int> shared;
      std::set_intersection(m.cells[ci].vids.begin(), m.cells[ci].vids.end(),
                            m.cells[cj].vids.begin(), m.cells[cj].vids.end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      int a = static_cast<int>(ci), b = static_cast<int>(cj);
      for (int v : shared)
        for (int w : shared) {
          if (w == v) continue;
          if (chart_dir(m, v, a, w) != chart_dir(m, v, b, w))
            throw ParseError("charts disagree on the face shared by cells " +
                             std::to_string(ci) + " and " + std::to_string(cj));
        }
      if (!m.has_phi) continue;
      std::vector<VecZ> pts;
      for (int v : shared) pts.push_back(cell_local(m, a, v));
      Cell face{shared, pts};
      if (mat_rank(edge_matrix(face, m.dim)) != m.dim - 1) continue;
      bool first = true;
      VecZ kink;
      for (int v : shared) {
        VecZ diff(m.dim);
        const VecZ& si = m.phi.at({v, a});
        const VecZ& sj = m.phi.at({v, b});
        for (int k = 0; k < m.dim; ++k) diff[k] = sj[k] - si[k];
        VecZ local = mat_apply(mat_transpose(chart_at(m, v, a)), diff);
        if (first) {
          kink = local;
          first = false;
        } else if (local != kink) {
          throw ParseError("kink varies along the wall shared by cells " +
                           std::to_string(ci) + " and " + std::to_string(cj));
        }
      }
    }
}

const VecZ& cell_local(const TropicalManifold& m, int c, int v) {
  const Cell& cell = m.cells.at(c);
  auto it = std::lower_bound(cell.vids.begin(), cell.vids.end(), v);
  if (it == cell.vids.end() || *it != v)
    throw InternalError("vertex not in cell");
  return cell.coords[static_cast<size_t>(it - cell.vids.begin())];
}

std::vector<int> cells_with_vertex(const TropicalManifold& m, int v) {
  std::vector<int> out;
  for (size_t c = 0; c < m.cells.size(); ++c)
    if (std::binary_search(m.cells[c].vids.begin(), m.cells[c].vids.end(), v))
      out.push_back(static_cast<int>(c));
  return out;
}

const MatZ& chart_at(const TropicalManifold& m, int v, int c) {
  auto it = m.charts.find({v, c});
  if (it == m.charts.end()) throw InternalError("missing chart");
  return it->second;
}

MatZ hop(const TropicalManifold& m, int v, int w, int c) {
  return mat_mul(chart_at(m, w, c), inverse_unimodular(chart_at(m, v, c)));
}

namespace {

MatZ chain_product(const TropicalManifold& m, const std::vector<int>& vs,
                   const std::vector<int>& cs, bool dual) {
  if (vs.empty() || vs.size() != cs.size() + 1)
    throw ParseError("chain must alternate vertices and cells");
  if (vs.front() != vs.back()) throw ParseError("chain is not closed");
  MatZ t = MatZ::identity(m.dim);
  for (size_t i = 0; i < cs.size(); ++i) {
    int c = cs[i];
    if (c < 0 || c >= static_cast<int>(m.cells.size()))
      throw ParseError("cell index out of range in chain");
    const std::vector<int>& vids = m.cells[c].vids;
    for (int v : {vs[i], vs[i + 1]})
      if (!std::binary_search(vids.begin(), vids.end(), v))
        throw ParseError("chain not incident at step " + std::to_string(i));
    MatZ h = hop(m, vs[i], vs[i + 1], c);
    if (dual) h = mat_transpose(inverse_unimodular(h));
    t = mat_mul(h, t);
  }
  return t;
}

}  // namespace

MatZ monodromy(const TropicalManifold& m, const std::vector<int>& vs,
               const std::vector<int>& cs) {
  return chain_product(m, vs, cs, false);
}

MatZ monodromy_dual(const TropicalManifold& m, const std::vector<int>& vs,
                    const std::vector<int>& cs) {
  return chain_product(m, vs, cs, true);
}

bool is_identity(const MatZ& t) { return t == MatZ::identity(t.rows); }

bool is_unipotent(const MatZ& t) {
  MatZ n = mat_sub(t, MatZ::identity(t.rows));
  MatZ p = n;
  for (int i = 1; i < t.rows; ++i) p = mat_mul(p, n);
  return is_zero(p);
}

Discriminant discriminant(const TropicalManifold& m) {
  Discriminant out;
  if (m.dim == 1) return out;  // codimension-two locus is empty
  for (const Cell& cell : m.cells)
    if (cell.vids.size() != static_cast<size_t>(m.dim) + 1)
      throw UnsupportedError("discriminant requires simplicial maximal cells");
  std::map<std::vector<int>, std::vector<int>> codim1;
  for (size_t c = 0; c < m.cells.size(); ++c) {
    const std::vector<int>& vids = m.cells[c].vids;
    for (size_t drop = 0; drop < vids.size(); ++drop) {
      std::vector<int> face;
      for (size_t i = 0; i < vids.size(); ++i)
        if (i != drop) face.push_back(vids[i]);
      codim1[face].push_back(static_cast<int>(c));
    }
  }
  for (const auto& [face, cs] : codim1) {
    if (cs.size() != 2) continue;
    MatZ t = monodromy(m, {face[0], face[1], face[0]}, {cs[0], cs[1]});
    if (is_identity(t)) continue;
    EssentialFace ef;
    ef.vids = face;
    ef.cell_a = cs[0];
    ef.cell_b = cs[1];
    ef.base_vertex = face[0];
    ef.holonomy = t;
    ef.divisors = elementary_divisors(mat_sub(t, MatZ::identity(m.dim)));
    ef.unipotent = is_unipotent(t);
    out.faces.push_back(std::move(ef));
  }
  // Barycentric segments from each essential face to its subfaces of
  // dimension >= 1, and the graph nodes they support.
  std::map<std::vector<int>, std::vector<int>> sub_incidence;
  for (size_t fi = 0; fi < out.faces.size(); ++fi) {
    const std::vector<int>& vids = out.faces[fi].vids;
    int n = static_cast<int>(vids.size());
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
      std::vector<int> sub;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) sub.push_back(vids[i]);
      out.segments.push_back({static_cast<int>(fi), sub});
      sub_incidence[sub].push_back(static_cast<int>(fi));
    }
  }
  for (size_t fi = 0; fi < out.faces.size(); ++fi)
    out.nodes.push_back({false, out.faces[fi].vids, {static_cast<int>(fi)}});
  for (const auto& [sub, faces] : sub_incidence)
    out.nodes.push_back({true, sub, faces});
  return out;
}

VertexKind classify_triple(const std::array<MatZ, 3>& t) {
  int n = t[0].rows;
  MatZ rows(3 * n, n), cols(n, 3 * n);
  for (int k = 0; k < 3; ++k) {
    MatZ d = mat_sub(t[k], MatZ::identity(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        rows.at(k * n + i, j) = d.at(i, j);
        cols.at(i, k * n + j) = d.at(i, j);
      }
  }
  bool kernel_plane = mat_rank(rows) == 1;
  bool image_line = mat_rank(cols) == 1;
  if (kernel_plane && !image_line) return VertexKind::Positive;
  if (image_line && !kernel_plane) return VertexKind::Negative;
  return VertexKind::Unknown;
}

TripleReport monodromy_triple_check(const TropicalManifold& m,
                                    const Discriminant& disc, int node_index) {
  if (node_index < 0 || node_index >= static_cast<int>(disc.nodes.size()))
    throw ParseError("discriminant node index out of range");
  const GammaNode& node = disc.nodes[node_index];
  std::array<std::vector<int>, 3> vs, cs;
  if (!node.at_subface) {
    const EssentialFace& f = disc.faces[node.faces[0]];
    if (f.vids.size() != 3)
      throw UnsupportedError("node is not trivalent");
    int u1 = f.vids[0], u2 = f.vids[1], u3 = f.vids[2];
    int sa = f.cell_a, sb = f.cell_b;
    // Legs toward the three edges of the face; the product telescopes.
    vs = {{{u1, u3, u1}, {u1, u2, u3, u1}, {u1, u2, u1}}};
    cs = {{{sa, sb}, {sa, sb, sa}, {sb, sa}}};
  } else {
    if (node.vids.size() != 2 || node.faces.size() != 3)
      throw UnsupportedError("node is not trivalent");
    int ua = node.vids[0], ub = node.vids[1];
    std::vector<int> around;
    for (int c : cells_with_vertex(m, ua)) {
      const std::vector<int>& vids = m.cells[c].vids;
      if (std::binary_search(vids.begin(), vids.end(), ub)) around.push_back(c);
    }
    if (around.size() != 3)
      throw UnsupportedError("subface is not surrounded by three cells");
    int s1 = around[0], s2 = around[1], s3 = around[2];
    vs = {{{ua, ub, ua}, {ua, ub, ua}, {ua, ub, ua}}};
    cs = {{{s3, s1}, {s2, s3}, {s1, s2}}};
  }
  TripleReport rep;
  for (int k = 0; k < 3; ++k) {
    rep.t[k] = monodromy(m, vs[k], cs[k]);
    rep.t_dual[k] = monodromy_dual(m, vs[k], cs[k]);
  }
  rep.product_identity = is_identity(mat_mul(mat_mul(rep.t[0], rep.t[1]), rep.t[2]));
  rep.unipotent_rank_one = true;
  for (int k = 0; k < 3; ++k) {
    MatZ n = mat_sub(rep.t[k], MatZ::identity(m.dim));
    if (!is_zero(mat_mul(n, n)) || mat_rank(n) != 1) rep.unipotent_rank_one = false;
  }
  rep.kind = classify_triple(rep.t);
  rep.dual_is_transpose_inverse = true;
  for (int k = 0; k < 3; ++k)
    if (rep.t_dual[k] != mat_transpose(inverse_unimodular(rep.t[k])))
      rep.dual_is_transpose_inverse = false;
  rep.dual_kind = classify_triple(rep.t_dual);
  return rep;
}

}  // namespace tropic
