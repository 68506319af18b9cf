#pragma once

#include <vector>

#include "tropic/intmat.hpp"

namespace tropic {

// Supporting halfspace dot(normal, x) >= -offset with primitive inner normal.
struct Facet {
  VecZ normal;
  ZZ offset = 0;
  std::vector<int> vertex_ids;  // vertices lying on the facet, ascending
};

// Full-dimensional lattice polytope, vertices sorted lexicographically.
struct LatticePolytope {
  int dim = 0;
  std::vector<VecZ> vertices;
  std::vector<Facet> facets;
};

// Convex hull of a full-dimensional point set; throws UnsupportedError when
// the affine span is a proper subspace.
LatticePolytope hull(const std::vector<VecZ>& points);

// A face of the polytope: the vertices tight on a set of facets.
struct PolyFace {
  std::vector<int> vertex_ids;  // ascending
  int dim = 0;
};

// All proper nonempty faces (vertices, edges, ..., facets), deduplicated.
std::vector<PolyFace> proper_faces(const LatticePolytope& p);

bool contains_origin_interior(const LatticePolytope& p);

// Every facet at integral distance one from the origin.
bool is_reflexive(const LatticePolytope& p);

// Polar dual of a reflexive polytope (vertices = inner facet normals).
LatticePolytope polar_dual(const LatticePolytope& p);

std::vector<VecZ> lattice_points(const LatticePolytope& p);
int count_interior_points(const LatticePolytope& p);
int count_boundary_points(const LatticePolytope& p);

// Existence of g in GL_2(Z) with g(P) = Q (vertex sets as subsets of Z^2).
bool unimodular_equivalent_2d(const LatticePolytope& p, const LatticePolytope& q);

// Existence of g in GL_2(Z) and a translation with g(P) + t = Q.
bool affine_equivalent_2d(const LatticePolytope& p, const LatticePolytope& q);

}  // namespace tropic
