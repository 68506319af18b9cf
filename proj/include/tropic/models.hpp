#pragma once

#include <vector>

#include "tropic/complex.hpp"
#include "tropic/polytope.hpp"

namespace tropic {

// A tropical manifold built on the boundary of a reflexive polytope,
// remembering the ambient data needed for slope computations and output.
struct EmbeddedComplex {
  TropicalManifold man;
  std::vector<VecZ> ambient;       // ambient position per manifold vertex
  std::vector<VecZ> cell_normal;   // inner normal of the facet carrying each cell
  std::vector<MatZ> frame;         // unimodular frame per vertex; column 0 = vertex
  LatticePolytope hull;
};

// Boundary complex of a reflexive polytope: cells are the facets, vertex
// charts are the projections along the vertex ray.  Throws UnsupportedError
// when the polytope is not reflexive.
EmbeddedComplex boundary_complex(const LatticePolytope& delta);

// Boundary complex with a prescribed simplicial subdivision: `points` are the
// cell vertices (ambient coordinates, must lie on the boundary), `cells`
// index into `points`.  Validates the decomposition axioms and throws
// ParseError naming the violated one.
EmbeddedComplex boundary_complex_subdivided(
    const LatticePolytope& delta, const std::vector<VecZ>& points,
    const std::vector<std::vector<int>>& cells);

// The canonical strictly convex multi-valued function induced by the
// polytope's defining inequalities (one slope per facet, localized at each
// vertex against its first incident cell).
void canonical_phi(EmbeddedComplex& ec);

// k * standard simplex in dimension dim, shifted to center the unique
// interior lattice point at the origin (k = dim + 1 gives the reflexive one).
LatticePolytope reflexive_simplex(int dim, int k);

// Boundary of the reflexive 3-simplex (the K3 quartic picture): four
// triangle cells, six singular edges.
EmbeddedComplex quartic_complex();

// Boundary of the reflexive 4-simplex with the standard unit triangulation
// of every facet: 625 simplicial cells on 125 vertices.
EmbeddedComplex quintic_complex();

// The elementary focus-focus surface: two unit triangles glued along one
// edge, with a single shear chart producing one singular point.
TropicalManifold focus_focus_manifold();

// Circle R/nZ decomposed into n unit segments with the standard strictly
// convex function (slope gap one at every vertex).
TropicalManifold circle_complex(int n);

}  // namespace tropic
