#include "tropic/docio.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropic/complex.hpp"
#include "tropic/errors.hpp"

namespace tropic {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string("document is not well-formed: ") + e.what(), line, col);
  }
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("document must be an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("document is missing field '") + key + "'");
  return *it;
}

long long need_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::string need_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

VecZ need_int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  VecZ v;
  for (const Json& e : j) v.push_back(need_int(e, what));
  return v;
}

// Counterclockwise order from the positive x-axis, then kind, then content.
bool wall_before(const Wall& x, const Wall& y) {
  Vec2 u = support_dir(x);
  Vec2 v = support_dir(y);
  auto half = [](Vec2 w) { return (w.b > 0 || (w.b == 0 && w.a > 0)) ? 0 : 1; };
  if (half(u) != half(v)) return half(u) < half(v);
  ZZ cr = cross(u, v);
  if (cr != 0) return cr > 0;
  if (x.kind != y.kind) return x.kind == WallKind::Line;
  return x.f.to_string() < y.f.to_string();
}

std::vector<Wall> canonical_walls(const Diagram& d) {
  std::vector<Wall> walls = d.walls;
  std::stable_sort(walls.begin(), walls.end(), wall_before);
  return walls;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::string series_label(const Series& f, int max_terms) {
  if (max_terms < 1) max_terms = 1;
  if (static_cast<int>(f.terms().size()) <= max_terms) return f.to_string();
  Series head(f.order());
  int kept = 0;
  for (const auto& [key, c] : f.terms()) {
    if (kept++ == max_terms) break;
    head.set_coeff(key.t_deg, key.a, key.b, c);
  }
  return head.to_string() + " + ...";
}

// Coordinates in milli-units for display output, rounded half-up.
ZZ to_milli(const Rat& r) {
  Rat s = r * 1000 + Rat(1) / Rat(2);
  Int n = numerator(s);
  Int d = denominator(s);
  Int q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return static_cast<ZZ>(q);
}

}  // namespace

Rat parse_rat(const std::string& s) {
  size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& part, bool sign_ok) {
    if (part.empty()) return false;
    size_t i = (sign_ok && part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  if (!digits(num, true) || !digits(den, false))
    throw ParseError("'" + s + "' is not a rational number");
  Rat r{Int(num)};
  Int d{den};
  if (d == 0) throw ParseError("'" + s + "' divides by zero");
  return r / Rat(d);
}

// ---- scattering diagram documents -----------------------------------------

std::string diagram_to_doc(const Diagram& d) {
  Json j;
  j["order"] = d.order;
  j["walls"] = Json::array();
  for (const Wall& w : canonical_walls(d)) {
    Json wj;
    wj["kind"] = w.kind == WallKind::Line ? "line" : "ray";
    Vec2 dir = support_dir(w);
    wj["dir"] = {dir.a, dir.b};
    wj["f"] = w.f.to_string();
    j["walls"].push_back(wj);
  }
  return j.dump(2) + "\n";
}

Diagram diagram_from_doc(const std::string& text, std::optional<int> order_override) {
  Json j = parse_json(text);
  Diagram d;
  long long doc_order = need_int(need(j, "order"), "order");
  d.order = order_override ? *order_override : static_cast<int>(doc_order);
  if (d.order < 0) throw ParseError("order must be nonnegative");
  const Json& walls = need(j, "walls");
  if (!walls.is_array()) throw ParseError("'walls' must be an array");
  for (const Json& wj : walls) {
    Wall w;
    std::string kind = need_string(need(wj, "kind"), "wall kind");
    if (kind == "line")
      w.kind = WallKind::Line;
    else if (kind == "ray")
      w.kind = WallKind::Ray;
    else
      throw ParseError("wall kind must be \"line\" or \"ray\"");
    VecZ dir = need_int_list(need(wj, "dir"), "wall dir");
    if (dir.size() != 2 || (dir[0] == 0 && dir[1] == 0))
      throw ParseError("wall dir must be a nonzero integer pair");
    Vec2 dv{dir[0], dir[1]};
    w.m = w.kind == WallKind::Ray ? -dv : dv;
    w.f = parse_series(need_string(need(wj, "f"), "wall function"), d.order);
    d.walls.push_back(w);
  }
  validate_diagram(d);
  return d;
}

std::string diagram_to_text(const Diagram& d) {
  std::ostringstream out;
  std::vector<Wall> walls = canonical_walls(d);
  out << "order: " << d.order << "\n";
  out << "walls: " << walls.size() << "\n";
  for (const Wall& w : walls) {
    Vec2 dir = support_dir(w);
    out << "  " << (w.kind == WallKind::Line ? "line" : "ray ") << " dir [" << dir.a
        << ", " << dir.b << "]  f = " << w.f.to_string() << "\n";
  }
  return out.str();
}

std::string diagram_to_svg(const Diagram& d, int label_terms) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-220 -220 440 440\" "
         "font-size=\"10\" font-family=\"monospace\">\n";
  out << "  <circle cx=\"0\" cy=\"0\" r=\"3\" fill=\"black\"/>\n";
  for (const Wall& w : canonical_walls(d)) {
    Vec2 dir = support_dir(w);
    ZZ span = std::max(dir.a < 0 ? -dir.a : dir.a, dir.b < 0 ? -dir.b : dir.b);
    ZZ k = 160 / span;
    ZZ x = dir.a * k, y = -dir.b * k;  // svg y axis points down
    ZZ x0 = w.kind == WallKind::Line ? -x : 0;
    ZZ y0 = w.kind == WallKind::Line ? -y : 0;
    out << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x << "\" y2=\""
        << y << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << (x * 11) / 16 << "\" y=\"" << (y * 11) / 16 - 4 << "\">"
        << xml_escape(series_label(w.f, label_terms)) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// ---- polytope / complex documents ------------------------------------------

ComplexDoc complex_from_doc(const std::string& text) {
  Json j = parse_json(text);
  long long dim = need_int(need(j, "dim"), "dim");
  if (dim < 1) throw ParseError("dim must be positive");
  const Json& vj = need(j, "vertices");
  if (!vj.is_array() || vj.empty()) throw ParseError("'vertices' must be a nonempty array");
  std::vector<VecZ> vertices;
  for (const Json& e : vj) {
    VecZ v = need_int_list(e, "vertex");
    if (static_cast<long long>(v.size()) != dim)
      throw ParseError("vertex does not have 'dim' coordinates");
    vertices.push_back(v);
  }
  for (size_t i = 1; i < vertices.size(); ++i)
    if (!(vertices[i - 1] < vertices[i]))
      throw ParseError("vertices must be distinct and lexicographically sorted");

  LatticePolytope p = hull(vertices);
  ComplexDoc doc;
  if (j.contains("cells")) {
    doc.plain = false;
    const Json& cj = j.at("cells");
    if (!cj.is_array()) throw ParseError("'cells' must be an array");
    std::vector<std::vector<int>> cells;
    for (const Json& e : cj) {
      VecZ ids = need_int_list(e, "cell");
      std::vector<int> cell;
      for (ZZ id : ids) cell.push_back(static_cast<int>(id));
      cells.push_back(cell);
    }
    doc.ec = boundary_complex_subdivided(p, vertices, cells);
  } else {
    if (p.vertices != vertices)
      throw ParseError("vertex list must be exactly the polytope's vertices when no cells are given");
    doc.ec = boundary_complex(p);
  }

  if (j.contains("phi")) {
    doc.with_phi = true;
    const Json& pj = j.at("phi");
    if (!pj.is_array() || pj.size() != vertices.size())
      throw ParseError("'phi' must list slopes for every vertex");
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
      std::vector<int> inc = cells_with_vertex(doc.ec.man, v);
      const Json& entry = pj[v];
      if (!entry.is_array() || entry.size() != inc.size())
        throw ParseError("phi at vertex " + std::to_string(v) +
                         " must have one slope per incident cell");
      for (size_t k = 0; k < inc.size(); ++k) {
        VecZ slope = need_int_list(entry[k], "phi slope");
        if (static_cast<long long>(slope.size()) != dim - 1)
          throw ParseError("phi slopes must have dim - 1 entries");
        doc.ec.man.phi[{v, inc[k]}] = slope;
      }
    }
    doc.ec.man.has_phi = true;
    validate_manifold(doc.ec.man);
  } else {
    canonical_phi(doc.ec);
  }
  return doc;
}

std::string polytope_to_doc(const LatticePolytope& p) {
  Json j;
  j["dim"] = p.dim;
  j["vertices"] = Json::array();
  for (const VecZ& v : p.vertices) j["vertices"].push_back(v);
  return j.dump(2) + "\n";
}

// ---- tropical curve documents ----------------------------------------------

namespace {

// Cursor over the min(...) grammar with 1-based positions for errors.
struct MinCursor {
  const std::string& s;
  size_t i = 0;
  int line = 1, col = 1;

  bool eof() const { return i >= s.size(); }
  char peek() const { return eof() ? '\0' : s[i]; }
  void advance() {
    if (eof()) return;
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s[i]))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  bool eat(char c) {
    skip_ws();
    if (peek() != c) return false;
    advance();
    return true;
  }
};

Rat read_number(MinCursor& cur) {
  cur.skip_ws();
  std::string digits;
  while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    digits += cur.peek();
    cur.advance();
  }
  if (digits.empty()) cur.fail("expected a number");
  Int num(digits);
  if (cur.eat('/')) {
    std::string den;
    cur.skip_ws();
    while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      den += cur.peek();
      cur.advance();
    }
    if (den.empty()) cur.fail("expected a denominator");
    Int d(den);
    if (d == 0) cur.fail("denominator is zero");
    return Rat(num) / Rat(d);
  }
  return Rat(num);
}

// One affine term: c + a*X + b*Y in any order, atoms joined by +/-.
void read_term(MinCursor& cur, TropicalPolynomial& g) {
  Rat c = 0;
  ZZ a = 0, b = 0;
  bool first = true;
  while (true) {
    cur.skip_ws();
    int sign = 1;
    if (cur.eat('-'))
      sign = -1;
    else if (cur.eat('+'))
      sign = 1;
    else if (!first)
      break;
    cur.skip_ws();
    char ch = cur.peek();
    if (ch == 'X' || ch == 'x' || ch == 'Y' || ch == 'y') {
      cur.advance();
      (ch == 'X' || ch == 'x' ? a : b) += sign;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      Rat value = read_number(cur);
      cur.skip_ws();
      bool star = cur.eat('*');
      cur.skip_ws();
      char v = cur.peek();
      if (v == 'X' || v == 'x' || v == 'Y' || v == 'y') {
        cur.advance();
        if (denominator(value) != 1)
          cur.fail("coefficients of X and Y must be integers");
        (v == 'X' || v == 'x' ? a : b) += sign * static_cast<ZZ>(numerator(value));
      } else if (star) {
        cur.fail("expected X or Y after '*'");
      } else {
        c += Rat(sign) * value;
      }
    } else {
      cur.fail("expected a number, X, or Y");
    }
    first = false;
    cur.skip_ws();
    if (cur.peek() != '+' && cur.peek() != '-') break;
  }
  VecZ key{a, b};
  auto it = g.terms.find(key);
  if (it == g.terms.end() || c < it->second) g.terms[key] = c;
}

}  // namespace

TropicalPolynomial parse_min_poly(const std::string& text) {
  MinCursor cur{text};
  cur.skip_ws();
  for (char c : {'m', 'i', 'n'}) {
    if (cur.peek() != c) cur.fail("expected 'min('");
    cur.advance();
  }
  cur.expect('(');
  TropicalPolynomial g;
  do {
    read_term(cur, g);
  } while (cur.eat(','));
  cur.expect(')');
  cur.skip_ws();
  if (!cur.eof()) cur.fail("unexpected trailing input");
  return g;
}

std::string curve_to_doc(const TropicalCurve2D& c) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : c.vertices) j["vertices"].push_back({rat_str(v[0]), rat_str(v[1])});
  j["edges"] = Json::array();
  for (const CurveEdge& e : c.edges) {
    Json ej;
    ej["ends"] = e.b == -1 ? Json::array({e.a}) : Json::array({e.a, e.b});
    ej["dir"] = {e.dir[0], e.dir[1]};
    ej["weight"] = e.weight;
    j["edges"].push_back(ej);
  }
  return j.dump(2) + "\n";
}

TropicalCurve2D curve_from_doc(const std::string& text) {
  Json j = parse_json(text);
  TropicalCurve2D c;
  const Json& vj = need(j, "vertices");
  if (!vj.is_array()) throw ParseError("'vertices' must be an array");
  for (const Json& e : vj) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("curve vertex must be a pair of rationals");
    c.vertices.push_back({parse_rat(need_string(e[0], "coordinate")),
                          parse_rat(need_string(e[1], "coordinate"))});
  }
  const Json& ej = need(j, "edges");
  if (!ej.is_array()) throw ParseError("'edges' must be an array");
  const int n = static_cast<int>(c.vertices.size());
  for (const Json& e : ej) {
    CurveEdge edge;
    VecZ ends = need_int_list(need(e, "ends"), "edge ends");
    if (ends.empty() || ends.size() > 2)
      throw ParseError("edge ends must list one or two vertices");
    edge.a = static_cast<int>(ends[0]);
    edge.b = ends.size() == 2 ? static_cast<int>(ends[1]) : -1;
    if (edge.a < 0 || edge.a >= n || edge.b < -1 || edge.b >= n)
      throw ParseError("edge references a vertex that does not exist");
    edge.dir = need_int_list(need(e, "dir"), "edge dir");
    if (edge.dir.size() != 2) throw ParseError("edge dir must be an integer pair");
    edge.weight = need_int(need(e, "weight"), "edge weight");
    if (edge.weight < 0) throw ParseError("edge weight must be nonnegative");
    c.edges.push_back(edge);
  }
  return c;
}

std::string curve_to_text(const TropicalCurve2D& c) {
  std::ostringstream out;
  out << "vertices: " << c.vertices.size() << "\n";
  for (size_t i = 0; i < c.vertices.size(); ++i)
    out << "  v" << i << " = (" << rat_str(c.vertices[i][0]) << ", "
        << rat_str(c.vertices[i][1]) << ")\n";
  out << "edges: " << c.edges.size() << "\n";
  for (const CurveEdge& e : c.edges) {
    if (e.b == -1)
      out << "  v" << e.a << " -> inf";
    else
      out << "  v" << e.a << " -- v" << e.b << " ";
    out << "  dir [" << e.dir[0] << ", " << e.dir[1] << "]  weight " << e.weight << "\n";
  }
  return out.str();
}

std::string curve_to_svg(const TropicalCurve2D& c) {
  // Everything in exact milli-units so the output is deterministic.
  ZZ lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  std::vector<std::array<ZZ, 2>> pos;
  for (const auto& v : c.vertices) {
    ZZ x = to_milli(v[0]), y = to_milli(v[1]);
    pos.push_back({x, y});
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  ZZ diag = std::max<ZZ>({hi_x - lo_x, hi_y - lo_y, 1000});
  std::ostringstream body;
  for (const CurveEdge& e : c.edges) {
    ZZ x1 = pos[e.a][0], y1 = pos[e.a][1], x2, y2;
    if (e.b == -1) {
      ZZ span = std::max(e.dir[0] < 0 ? -e.dir[0] : e.dir[0],
                         e.dir[1] < 0 ? -e.dir[1] : e.dir[1]);
      ZZ k = (2 * diag) / span + 1;
      x2 = x1 + e.dir[0] * k;
      y2 = y1 + e.dir[1] * k;
    } else {
      x2 = pos[e.b][0];
      y2 = pos[e.b][1];
    }
    body << "  <line x1=\"" << x1 << "\" y1=\"" << -y1 << "\" x2=\"" << x2 << "\" y2=\""
         << -y2 << "\" stroke=\"black\" stroke-width=\"" << (e.weight > 1 ? 60 : 25)
         << "\"/>\n";
    if (e.weight > 1)
      body << "  <text x=\"" << (x1 + x2) / 2 + 60 << "\" y=\"" << -(y1 + y2) / 2 - 60
           << "\">" << e.weight << "</text>\n";
  }
  for (const auto& p : pos)
    body << "  <circle cx=\"" << p[0] << "\" cy=\"" << -p[1] << "\" r=\"70\" fill=\"black\"/>\n";

  ZZ pad = diag / 2 + 500;
  ZZ min_x = lo_x - pad, min_y = -hi_y - pad;
  ZZ width = (hi_x - lo_x) + 2 * pad, height = (hi_y - lo_y) + 2 * pad;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << min_x << " " << min_y
      << " " << width << " " << height << "\" font-size=\"300\" font-family=\"monospace\">\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace tropic
