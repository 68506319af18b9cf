#pragma once

#include <array>
#include <map>
#include <vector>

#include "tropic/intmat.hpp"
#include "tropic/rational.hpp"

namespace tropic {

// Min-plus polynomial: evaluation takes the minimum over terms of
// coefficient + <exponent, x>.
struct TropicalPolynomial {
  std::map<VecZ, Rat> terms;  // exponent -> coefficient
};

Rat trop_eval(const TropicalPolynomial& g, const std::vector<Rat>& x);

// One edge of a plane tropical curve: a segment between two vertices
// (b >= 0) or a ray leaving vertex a (b == -1).  `dir` is the primitive
// integer direction from a toward b respectively along the ray.
struct CurveEdge {
  int a = -1;
  int b = -1;
  VecZ dir;
  ZZ weight = 1;

  bool operator==(const CurveEdge&) const = default;
};

struct TropicalCurve2D {
  std::vector<std::array<Rat, 2>> vertices;
  std::vector<CurveEdge> edges;
};

// The corner locus of a two-variable polynomial with the dual-subdivision
// weights: bounded edges dual to interior edges of the induced regular
// subdivision of the Newton polygon, rays dual to its boundary edges.
TropicalCurve2D corner_locus_2d(const TropicalPolynomial& g);

// Abstract parameterized curve: vertices may be flagged as boundary points
// (where the balancing condition is waived); zero-weight edges are
// contracted and contribute nothing to balancing.
struct ParamCurveVertex {
  std::array<Rat, 2> pos;
  bool boundary = false;
};

struct ParamTropicalCurve {
  std::vector<ParamCurveVertex> vertices;
  std::vector<CurveEdge> edges;
};

struct BalanceViolation {
  int vertex = -1;
  VecZ excess;
};

// Weighted sum of primitive outgoing directions at every interior vertex of
// valency > 1; returns the vertices where the sum is nonzero.
std::vector<BalanceViolation> check_balanced(const ParamTropicalCurve& c);
std::vector<BalanceViolation> check_balanced(const TropicalCurve2D& c);

}  // namespace tropic
