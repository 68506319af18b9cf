#pragma once

#include <optional>
#include <string>

#include "tropic/models.hpp"
#include "tropic/scatter.hpp"
#include "tropic/tropcurve.hpp"

namespace tropic {

// Canonical rational text: "p" or "p/q" with positive q.
Rat parse_rat(const std::string& s);

// ---- scattering diagram documents -----------------------------------------
// {"order": k, "walls": [{"kind": "line"|"ray", "dir": [a, b], "f": "<series>"}]}
// `dir` is the emanation direction of a ray, respectively the canonical
// orientation of a line.  Canonical emission sorts walls counterclockwise by
// the angle of their support from the positive x-axis.
std::string diagram_to_doc(const Diagram& d);
Diagram diagram_from_doc(const std::string& text,
                         std::optional<int> order_override = std::nullopt);
std::string diagram_to_text(const Diagram& d);
// Supports drawn from the origin; each function label keeps `label_terms`
// leading terms.
std::string diagram_to_svg(const Diagram& d, int label_terms);

// ---- polytope / complex documents ------------------------------------------
// {"dim": n, "vertices": [[ints]], "cells"?: [[vertex ids]],
//  "phi"?: [per vertex: [per incident cell, ascending: [n-1 ints]]]}
// Vertices must be distinct and lexicographically sorted (the canonical
// order), so document indices coincide with manifold vertex labels.  Without
// "cells" the vertices must be exactly the polytope's own, and the cells are
// its facets.  Without "phi" the canonical facet-induced function is
// attached.
struct ComplexDoc {
  bool plain = true;      // document carried no explicit cells
  bool with_phi = false;  // document carried explicit slopes
  EmbeddedComplex ec;
};
ComplexDoc complex_from_doc(const std::string& text);
std::string polytope_to_doc(const LatticePolytope& p);

// ---- tropical curve documents ----------------------------------------------
// Input grammar: min(c + a*X + b*Y, ...) with rational c and integer a, b.
TropicalPolynomial parse_min_poly(const std::string& text);
std::string curve_to_doc(const TropicalCurve2D& c);
TropicalCurve2D curve_from_doc(const std::string& text);
std::string curve_to_text(const TropicalCurve2D& c);
std::string curve_to_svg(const TropicalCurve2D& c);

}  // namespace tropic
