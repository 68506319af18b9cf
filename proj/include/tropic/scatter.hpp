#pragma once

#include <optional>
#include <vector>

#include "tropic/intmat.hpp"
#include "tropic/series.hpp"

namespace tropic {

struct Vec2 {
  ZZ a = 0;
  ZZ b = 0;
  auto operator<=>(const Vec2&) const = default;
};

inline Vec2 operator+(Vec2 u, Vec2 v) { return {u.a + v.a, u.b + v.b}; }
inline Vec2 operator-(Vec2 u) { return {-u.a, -u.b}; }
inline ZZ cross(Vec2 u, Vec2 v) { return u.a * v.b - u.b * v.a; }
inline ZZ dot(Vec2 u, Vec2 v) { return u.a * v.a + u.b * v.b; }
inline bool is_zero(Vec2 v) { return v.a == 0 && v.b == 0; }
ZZ content2(Vec2 v);
Vec2 prim2(Vec2 v);  // throws on zero

// A wall of a two-dimensional scattering diagram. `m` is the primitive
// monomial direction: every monomial of f - 1 is a positive multiple of m.
// A ray emanates from the origin in direction -m; a line spans R*m.
enum class WallKind { Line, Ray };

struct Wall {
  WallKind kind = WallKind::Ray;
  Vec2 m;
  Series f;
};

// Emanation direction of a ray, or the canonical orientation of a line
// (lexicographically largest of +-m, so lines print deterministically).
Vec2 support_dir(const Wall& w);

struct Diagram {
  int order = 0;
  std::vector<Wall> walls;
};

// Checks the wall-form invariants (f = 1 mod t, monomials positive multiples
// of a common primitive m) and normalizes each wall's m; throws ParseError on
// user-facing violations. Walls with f = 1 are kept but inert.
void validate_diagram(Diagram& d);

// Substitution automorphism x -> ux, y -> uy; both must be a unit monomial
// times (1 + higher order).
struct Automorphism {
  Series ux, uy;
};

Automorphism identity_autom(int order);

// Automorphism for crossing wall w at a point of its support in direction p
// (p = -m for a ray, +-m for a line), moving counterclockwise: z^w maps to
// z^w f^<n,w> with n = (p_b, -p_a).
Automorphism crossing_autom(const Wall& w, Vec2 p);

// theta(s): substitute the generator images into s.
Series apply_autom(const Automorphism& th, const Series& s);

// Composition "a after b": (a o b)(s) = a(b(s)).
Automorphism compose(const Automorphism& a, const Automorphism& b);

// Exactness of the log-coordinate Jacobian: the map preserves the standard
// symplectic form iff this returns true.
bool is_symplectic(const Automorphism& th);

// A direction not parallel to any wall support, chosen deterministically
// inside an angular gap between adjacent supports.
Vec2 default_base_dir(const Diagram& d);

// Path-ordered product of all crossing automorphisms along a full
// counterclockwise loop around the origin starting at direction base,
// computed modulo t^(order+1).
Automorphism loop_product(const Diagram& d, Vec2 base, int order);

// Order-by-order completion: inserts rays until the loop around the origin
// is the identity modulo t^(target_order+1). Input walls are preserved;
// inserted rays merge multiplicatively when they share a support.
Diagram scatter(const Diagram& d, int target_order);

// Log coefficients of the function on the outgoing ray of the completed
// two-line diagram with multiplicities l1, l2. Row d holds the coefficient
// of t^s z^(-d*out) in log f together with that value divided by d.
struct GwRow {
  long long d = 0;
  int t_deg = 0;
  Rat log_coeff;
  Rat n_tilde;
};
std::vector<GwRow> extract_gw(int l1, int l2, Vec2 out_dir, int order);

}  // namespace tropic
