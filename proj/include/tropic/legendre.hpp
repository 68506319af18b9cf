#pragma once

#include "tropic/complex.hpp"
#include "tropic/polytope.hpp"

namespace tropic {

// True when the multi-valued function has a strictly positive kink across
// every wall of every vertex fan.  A manifold without a function is never
// strictly convex.  Assumes a validated manifold.
bool is_strictly_convex(const TropicalManifold& m);

// Newton polytope of the local representative at v: the convex hull of the
// negated slopes, cut out by <x,y> >= -phi(y).  Requires the fan at v to be
// complete and the function strictly convex there; throws UnsupportedError
// otherwise.
LatticePolytope newton_polytope(const TropicalManifold& m, int v);

// Discrete Legendre transform: vertices and maximal cells trade places, the
// new cells are the Newton polytopes, charts transpose, and the new function
// records the old cell coordinates.  Applying it twice reproduces the input
// verbatim.  Requires a closed manifold with strictly convex phi.
TropicalManifold discrete_legendre(const TropicalManifold& m);

// Integral affine isomorphism up to relabeling: a vertex bijection matching
// the cell structure, per-cell unimodular affine identifications, compatible
// chart changes at every vertex, and functions agreeing up to a linear shift
// per vertex.  Backtracking search; intended for desk-scale complexes.
bool manifolds_isomorphic(const TropicalManifold& a, const TropicalManifold& b);

}  // namespace tropic
