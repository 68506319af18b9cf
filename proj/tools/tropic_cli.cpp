#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropic/complex.hpp"
#include "tropic/docio.hpp"
#include "tropic/errors.hpp"
#include "tropic/legendre.hpp"
#include "tropic/selftest.hpp"

using namespace tropic;

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::string out;  // empty = stdout
  bool verbose = false;
};

bool wants(const Options& o, const char* name) {
  if (o.format == "json") return std::string(name) == "json-like";
  return o.format == name;
}

// Inline specs start with '{' (documents) or "min" (polynomials); everything
// else is a file path.
std::string read_source(const std::string& arg) {
  size_t i = 0;
  while (i < arg.size() && std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
  if (i < arg.size() && (arg[i] == '{' || arg.compare(i, 3, "min") == 0)) return arg;
  std::ifstream f(arg, std::ios::binary);
  if (!f) throw IoError("cannot open '" + arg + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("failed reading '" + arg + "'");
  return ss.str();
}

void emit(const Options& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
    return;
  }
  std::string path = opt.out;
  if (path.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("TROPIC_OUT_DIR"))
      if (*dir) path = std::string(dir) + "/" + path;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

int parse_small_int(const std::string& tok, const char* what) {
  if (tok.empty()) throw ParseError(std::string(what) + " is empty");
  size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) throw ParseError(std::string(what) + " '" + tok + "' is not an integer");
  for (size_t k = i; k < tok.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(tok[k])))
      throw ParseError(std::string(what) + " '" + tok + "' is not an integer");
  if (tok.size() > 7) throw ParseError(std::string(what) + " '" + tok + "' is out of range");
  return std::stoi(tok);
}

std::pair<int, int> parse_int_pair(const std::string& s, const char* what) {
  size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw ParseError(std::string(what) + " must be two integers separated by a comma");
  return {parse_small_int(s.substr(0, comma), what),
          parse_small_int(s.substr(comma + 1), what)};
}

std::string matrix_text(const MatZ& m, const std::string& indent) {
  std::ostringstream out;
  for (int i = 0; i < m.rows; ++i) {
    out << indent << "[";
    for (int j = 0; j < m.cols; ++j) out << " " << m.at(i, j);
    out << " ]\n";
  }
  return out.str();
}

Json matrix_json(const MatZ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(static_cast<long long>(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

// ---- scatter ----------------------------------------------------------------

int cmd_scatter(const std::string& input, std::optional<int> order, int label_terms,
                const Options& opt) {
  Diagram d = diagram_from_doc(read_source(input), order);
  if (d.order < 1) throw UnsupportedError("scattering needs a truncation order of at least 1");
  Diagram done = scatter(d, d.order);

  Automorphism lp = loop_product(done, default_base_dir(done), done.order);
  Automorphism id = identity_autom(done.order);
  bool consistent = lp.ux == id.ux && lp.uy == id.uy;
  if (opt.verbose) {
    if (consistent)
      std::cerr << "loop residual: identity\n";
    else
      std::cerr << "loop residual: ux = " << lp.ux.to_string() << ", uy = " << lp.uy.to_string()
                << "\n";
  }
  if (!consistent) throw InternalError("completed diagram failed the loop consistency check");

  if (wants(opt, "svg"))
    emit(opt, diagram_to_svg(done, label_terms));
  else if (wants(opt, "json-like"))
    emit(opt, diagram_to_doc(done));
  else
    emit(opt, diagram_to_text(done));
  return 0;
}

// ---- gw ----------------------------------------------------------------------

int cmd_gw(const std::string& ells, int order, const std::string& out_dir, const Options& opt) {
  auto [l1, l2] = parse_int_pair(ells, "--ells");
  auto [oa, ob] = parse_int_pair(out_dir, "--out-dir");
  if (l1 < 1 || l2 < 1) throw UnsupportedError("multiplicities must be at least 1");
  if (order < 1) throw UnsupportedError("the extraction needs order >= 1");
  std::vector<GwRow> rows = extract_gw(l1, l2, Vec2{oa, ob}, order);

  if (wants(opt, "svg")) throw UnsupportedError("coefficient tables have no svg rendering");
  if (wants(opt, "json-like")) {
    Json j;
    j["ells"] = {l1, l2};
    j["order"] = order;
    j["out_dir"] = {oa, ob};
    j["rows"] = Json::array();
    for (const GwRow& r : rows) {
      Json row;
      row["t"] = r.t_deg;
      row["d"] = r.d;
      row["log"] = rat_str(r.log_coeff);
      row["n_tilde"] = rat_str(r.n_tilde);
      j["rows"].push_back(row);
    }
    emit(opt, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "ells: (" << l1 << ", " << l2 << ")  order: " << order << "  out: [" << oa << ", "
        << ob << "]\n";
    for (const GwRow& r : rows)
      out << "  t^" << r.t_deg << "  d=" << r.d << "  log=" << rat_str(r.log_coeff)
          << "  N=" << rat_str(r.n_tilde) << "\n";
    emit(opt, out.str());
  }
  return 0;
}

// ---- legendre ------------------------------------------------------------------

int cmd_legendre(const std::string& input, const Options& opt) {
  ComplexDoc cd = complex_from_doc(read_source(input));
  LatticePolytope dual = polar_dual(cd.ec.hull);

  TropicalManifold dlt = discrete_legendre(cd.ec.man);
  EmbeddedComplex dual_bc = boundary_complex(dual);
  canonical_phi(dual_bc);
  bool swaps = manifolds_isomorphic(dlt, dual_bc.man);
  bool involution = discrete_legendre(dlt) == cd.ec.man;
  if (opt.verbose)
    std::cerr << "transform swaps the boundary complexes: " << yesno(swaps) << "\n"
              << "double transform returns the original: " << yesno(involution) << "\n";
  if (!involution) throw InternalError("discrete Legendre transform is not an involution here");

  if (wants(opt, "svg")) throw UnsupportedError("polytope documents have no svg rendering");
  if (wants(opt, "json-like")) {
    emit(opt, polytope_to_doc(dual));
  } else {
    std::ostringstream out;
    out << "dual vertices: " << dual.vertices.size() << "\n";
    for (const VecZ& v : dual.vertices) {
      out << "  (";
      for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
      out << ")\n";
    }
    out << "transform swaps the boundary complexes: " << yesno(swaps) << "\n";
    emit(opt, out.str());
  }
  return 0;
}

// ---- monodromy -------------------------------------------------------------------

void parse_loop(const std::string& s, std::vector<int>& vs, std::vector<int>& cs) {
  std::istringstream in(s);
  std::string tok;
  bool want_vertex = true;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 'v' && tok[0] != 'c'))
      throw ParseError("loop tokens look like v<k> or c<k>: got '" + tok + "'");
    bool is_vertex = tok[0] == 'v';
    if (is_vertex != want_vertex)
      throw ParseError("loop must alternate vertex and cell tokens, starting and ending at a vertex");
    int value = parse_small_int(tok.substr(1), "loop index");
    if (value < 0) throw ParseError("loop indices are nonnegative");
    (is_vertex ? vs : cs).push_back(value);
    want_vertex = !want_vertex;
  }
  if (vs.size() < 2 || vs.size() != cs.size() + 1)
    throw ParseError("a loop needs the form 'v a c b v c ... v a'");
}

int cmd_monodromy(const std::string& input, const std::string& loop, const Options& opt) {
  ComplexDoc cd = complex_from_doc(read_source(input));
  std::vector<int> vs, cs;
  parse_loop(loop, vs, cs);

  MatZ t = monodromy(cd.ec.man, vs, cs);
  MatZ t_dual = monodromy_dual(cd.ec.man, vs, cs);
  MatZ delta = mat_sub(t, MatZ::identity(t.rows));
  bool unipotent = is_unipotent(t);
  std::vector<ZZ> divisors = elementary_divisors(delta);
  int rank = mat_rank(delta);
  bool dual_ok = is_identity(mat_mul(mat_transpose(t_dual), t));
  if (opt.verbose)
    std::cerr << "loop through " << cs.size() << " cells; unipotent: " << yesno(unipotent)
              << "\n";

  if (wants(opt, "svg")) throw UnsupportedError("monodromy reports have no svg rendering");
  if (wants(opt, "json-like")) {
    Json j;
    j["matrix"] = matrix_json(t);
    j["unipotent"] = unipotent;
    j["rank"] = rank;
    Json divs = Json::array();
    for (const ZZ& dv : divisors) divs.push_back(static_cast<long long>(dv));
    j["divisors"] = divs;
    j["dual_matrix"] = matrix_json(t_dual);
    j["dual_is_transpose_inverse"] = dual_ok;
    emit(opt, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "monodromy:\n" << matrix_text(t, "  ");
    out << "unipotent: " << yesno(unipotent) << "\n";
    out << "rank(T - I): " << rank << "\n";
    out << "divisors(T - I): [";
    for (size_t i = 0; i < divisors.size(); ++i) out << (i ? ", " : "") << divisors[i];
    out << "]\n";
    out << "dual monodromy:\n" << matrix_text(t_dual, "  ");
    out << "dual equals transpose inverse: " << yesno(dual_ok) << "\n";
    emit(opt, out.str());
  }
  return 0;
}

// ---- tropcurve --------------------------------------------------------------------

int cmd_tropcurve(const std::string& input, const Options& opt) {
  TropicalPolynomial g = parse_min_poly(read_source(input));
  TropicalCurve2D c = corner_locus_2d(g);
  if (!check_balanced(c).empty())
    throw InternalError("corner locus failed its own balancing check");
  if (opt.verbose) {
    size_t rays = 0;
    for (const CurveEdge& e : c.edges) rays += e.b == -1;
    std::cerr << "vertices: " << c.vertices.size() << ", bounded edges: "
              << c.edges.size() - rays << ", rays: " << rays << ", balanced: yes\n";
  }
  if (wants(opt, "svg"))
    emit(opt, curve_to_svg(c));
  else if (wants(opt, "json-like"))
    emit(opt, curve_to_doc(c));
  else
    emit(opt, curve_to_text(c));
  return 0;
}

// ---- selftest ---------------------------------------------------------------------

int cmd_selftest(int count, int order, unsigned seed, const Options& opt) {
  ConsistencyReport r = run_consistency_suite(count, order, seed);
  std::ostringstream out;
  out << "diagrams completed: " << r.diagrams << "\n"
      << "crossings checked: " << r.walls_checked << "\n"
      << "result: " << (r.ok ? "ok" : r.detail) << "\n";
  emit(opt, out.str());
  if (!r.ok) throw InternalError(r.detail);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scattering diagrams, affine monodromy, Legendre duality, tropical curves"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json-like", "json", "svg"}))
      ->capture_default_str();
  app.add_option("--out", opt.out,
                 "write output to this file (TROPIC_OUT_DIR prefixes bare names)");
  app.add_flag("--verbose", opt.verbose, "progress and invariant reports on stderr");

  std::string scatter_input, gw_ells, gw_out_dir = "1,1", legendre_input;
  std::string monodromy_input, monodromy_loop, curve_input;
  int scatter_order = -1, gw_order = 0, label_terms = 3;
  int st_count = 50, st_order = 6;
  unsigned st_seed = 20240814;

  CLI::App* sc = app.add_subcommand("scatter", "complete a diagram to consistency");
  sc->add_option("input", scatter_input, "diagram document (path or inline)")->required();
  sc->add_option("--order", scatter_order, "truncation order (overrides the document)");
  sc->add_option("--label-terms", label_terms, "series terms kept in svg labels")
      ->capture_default_str();

  CLI::App* gw = app.add_subcommand("gw", "log/enumerative coefficients of a two-line diagram");
  gw->add_option("--ells", gw_ells, "multiplicities, e.g. 1,1")->required();
  gw->add_option("--order", gw_order, "truncation order")->required();
  gw->add_option("--out-dir", gw_out_dir, "outgoing ray direction")->capture_default_str();

  CLI::App* lg = app.add_subcommand("legendre", "polar dual and transform report");
  lg->add_option("input", legendre_input, "complex document (path or inline)")->required();

  CLI::App* mo = app.add_subcommand("monodromy", "holonomy along a vertex-cell chain");
  mo->add_option("input", monodromy_input, "complex document (path or inline)")->required();
  mo->add_option("--loop", monodromy_loop, "chain like 'v0 c0 v1 c1 v0'")->required();

  CLI::App* tc = app.add_subcommand("tropcurve", "corner locus of a min-plus polynomial");
  tc->add_option("input", curve_input, "min(...) expression (inline or path)")->required();

  CLI::App* st = app.add_subcommand("selftest", "randomized consistency property suite");
  st->add_option("--count", st_count, "number of diagrams")->capture_default_str();
  st->add_option("--order", st_order, "truncation order")->capture_default_str();
  st->add_option("--seed", st_seed, "deterministic seed")->capture_default_str();

  for (CLI::App* sub : {sc, gw, lg, mo, tc, st}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(sc))
      return cmd_scatter(scatter_input,
                         scatter_order >= 0 ? std::optional<int>(scatter_order) : std::nullopt,
                         label_terms, opt);
    if (app.got_subcommand(gw)) return cmd_gw(gw_ells, gw_order, gw_out_dir, opt);
    if (app.got_subcommand(lg)) return cmd_legendre(legendre_input, opt);
    if (app.got_subcommand(mo)) return cmd_monodromy(monodromy_input, monodromy_loop, opt);
    if (app.got_subcommand(tc)) return cmd_tropcurve(curve_input, opt);
    if (app.got_subcommand(st)) return cmd_selftest(st_count, st_order, st_seed, opt);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line > 0) std::cerr << " at " << e.line << ":" << e.col;
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 5;
  }
}
