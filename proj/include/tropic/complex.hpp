#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "tropic/intmat.hpp"

namespace tropic {

// One maximal cell of an integral tropical manifold.  `vids` are global
// vertex labels (ascending); `coords[i]` is the position of `vids[i]` in the
// cell's own integral coordinates.
struct Cell {
  std::vector<int> vids;
  std::vector<VecZ> coords;

  bool operator==(const Cell&) const = default;
};

// Integral tropical manifold given by maximal cells with integral local
// coordinates plus the vertex charts.  For a vertex v contained in cell c,
// charts[{v,c}] is the linear part A of the transition taking cell
// coordinates into the fan chart at v:  x  |->  A * (x - x_v), where x_v is
// v's local position in c.  All charts into one vertex share the codomain,
// so the fan of v is assembled from the images of the incident cells.
//
// phi[{v,c}] is the slope of the local representative of a multi-valued
// piecewise linear function on the cone of c in the chart at v (value 0 at
// the vertex itself).
struct TropicalManifold {
  int dim = 0;
  int num_vertices = 0;
  std::vector<Cell> cells;
  std::map<std::pair<int, int>, MatZ> charts;
  std::map<std::pair<int, int>, VecZ> phi;
  bool has_phi = false;

  bool operator==(const TropicalManifold&) const = default;
};

// Structural checks: vertex labels in range and ascending per cell, local
// coordinates affinely spanning, one unimodular chart per incidence, and phi
// slopes (when present) continuous across shared faces.  Throws ParseError
// naming the violated condition.
void validate_manifold(const TropicalManifold& m);

// Local position of vertex v in cell c.
const VecZ& cell_local(const TropicalManifold& m, int c, int v);

// Indices of the maximal cells containing vertex v, ascending.
std::vector<int> cells_with_vertex(const TropicalManifold& m, int v);

const MatZ& chart_at(const TropicalManifold& m, int v, int c);

// Direction from v toward w in the chart at v, through their common cell c.
VecZ chart_dir(const TropicalManifold& m, int v, int c, int w);

// Transition of vertex charts v -> w through the interior of cell c.
MatZ hop(const TropicalManifold& m, int v, int w, int c);

// Holonomy of the lattice-tangent local system along a closed alternating
// chain  vs = v_0, v_1, ..., v_k = v_0  with cs[i] the cell used between
// v_i and v_{i+1}.  Result is expressed in the chart at v_0.  Throws
// ParseError on a chain that is not closed or not incident.
MatZ monodromy(const TropicalManifold& m, const std::vector<int>& vs,
               const std::vector<int>& cs);

// Dual-lattice holonomy along the same chain (inverse transpose hops).
MatZ monodromy_dual(const TropicalManifold& m, const std::vector<int>& vs,
                    const std::vector<int>& cs);

bool is_identity(const MatZ& t);

// T unipotent: (T - I)^dim == 0.
bool is_unipotent(const MatZ& t);

// A codimension-one face where the affine structure fails to extend: the
// two-cell loop around it has nontrivial holonomy.
struct EssentialFace {
  std::vector<int> vids;       // ascending
  int cell_a = 0, cell_b = 0;  // the two incident maximal cells, a < b
  int base_vertex = 0;         // chart in which `holonomy` is expressed
  MatZ holonomy;               // loop base -> through cell_a -> through cell_b
  std::vector<ZZ> divisors;    // elementary divisors of (T - I)
  bool unipotent = false;
};

// Barycentric segment of the discriminant graph: joins the barycenter of
// essential face `face` to the barycenter of its subface `sub_vids`.
struct GammaSegment {
  int face = 0;
  std::vector<int> sub_vids;
};

// A candidate vertex of the discriminant graph with its incident essential
// faces.  Face barycenters have at_subface == false; barycenters of shared
// subfaces have at_subface == true.
struct GammaNode {
  bool at_subface = false;
  std::vector<int> vids;
  std::vector<int> faces;  // indices into Discriminant::faces
};

struct Discriminant {
  std::vector<EssentialFace> faces;
  std::vector<GammaSegment> segments;
  std::vector<GammaNode> nodes;
};

// Discriminant of a simplicial manifold: essential codimension-one faces,
// the barycentric segments they span, and the resulting graph nodes.
// Requires simplicial maximal cells when dim >= 2 (UnsupportedError).
Discriminant discriminant(const TropicalManifold& m);

enum class VertexKind {
  Positive,  // kernels of (T_i - I) share a plane: discriminant locally planar
  Negative,  // images of (T_i - I) share a line
  Unknown,
};

// Monodromy report at a trivalent discriminant-graph node.
struct TripleReport {
  std::array<MatZ, 3> t;       // t[0]*t[1]*t[2] == identity when consistent
  bool product_identity = false;
  bool unipotent_rank_one = false;  // every (t_i - I): square zero, rank 1
  VertexKind kind = VertexKind::Unknown;
  std::array<MatZ, 3> t_dual;  // dual-lattice holonomies of the same loops
  bool dual_is_transpose_inverse = false;
  VertexKind dual_kind = VertexKind::Unknown;
};

// Loop monodromies around the three discriminant legs at a trivalent node.
// Throws UnsupportedError when the node is not trivalent or the local cell
// configuration is not the supported simplicial one.
TripleReport monodromy_triple_check(const TropicalManifold& m,
                                    const Discriminant& disc, int node_index);

// Classification shared with the report: the common-kernel / common-image
// test on three unipotent matrices.
VertexKind classify_triple(const std::array<MatZ, 3>& t);

}  // namespace tropic
