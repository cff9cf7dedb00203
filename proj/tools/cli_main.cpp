// liecli: command-line front end of the engine.

#include "CLI11.hpp"
#include "json.hpp"
#include "lie/acceptance.hpp"
#include "lie/parse.hpp"

#include <iostream>
#include <optional>
#include <set>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace lie;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;
constexpr int kExitVerify = 4;

struct Request {
  std::string command;
  std::string algebra = "A1";
  std::string ordering;  // empty: default
  std::string expr;
  std::string w;
  std::string format = "text";
  std::optional<int> k;
  std::optional<int> partial;
  std::uint64_t seed = SuiteOptions{}.seed;
  int max_depth = 64;
  std::size_t limit = 100;
  bool slow = false;
  std::string suite;
};

/// Error on a named field of the request, reported with its text.
class FieldError : public InputError {
 public:
  FieldError(std::string field, std::string text, const std::string& message)
      : InputError(message), field_(std::move(field)), text_(std::move(text)) {}
  const std::string& field() const { return field_; }
  const std::string& text() const { return text_; }

 private:
  std::string field_, text_;
};

std::vector<int> parse_int_list(const std::string& field, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw FieldError(field, text, "expected comma-separated integers, got '" + item + "'");
    }
  }
  return out;
}

RootSystem make_algebra(const std::string& text) {
  if (!text.empty() && text[0] == '[') {
    IntMatrix m;
    try {
      m = json::parse(text).get<IntMatrix>();
    } catch (const json::exception& e) {
      throw FieldError("algebra", text, std::string("Cartan matrix is not an integer matrix: ") + e.what());
    }
    try {
      return RootSystem::from_cartan(m);
    } catch (const InputError& e) {
      throw FieldError("algebra", text, e.what());
    }
  }
  try {
    return RootSystem::from_label(text);
  } catch (const InputError& e) {
    throw FieldError("algebra", text, e.what());
  }
}

// "default", a root list [[1,0],[1,1],[0,1]], or a reduced word of w0 "1,2,1".
NormalOrdering make_ordering(const RootSystem& rs, const std::string& text) {
  if (text.empty() || text == "default") return default_normal_ordering(rs);
  std::vector<int> seq;
  if (!text.empty() && text[0] == '[') {
    std::vector<IntVec> roots;
    try {
      roots = json::parse(text).get<std::vector<IntVec>>();
    } catch (const json::exception& e) {
      throw FieldError("ordering", text, std::string("root list is not a list of integer vectors: ") + e.what());
    }
    for (const auto& r : roots) {
      auto idx = rs.find_positive(r);
      if (!idx) throw FieldError("ordering", text, to_string(r) + " is not a positive root");
      seq.push_back(*idx);
    }
    if (static_cast<int>(seq.size()) != rs.size() ||
        std::set<int>(seq.begin(), seq.end()).size() != seq.size())
      throw FieldError("ordering", text, "the ordering must list every positive root once");
    if (!validate_normal_ordering(rs, seq)) throw FieldError("ordering", text, "not a normal ordering");
    return NormalOrdering(seq);
  }
  std::vector<int> word = parse_int_list("ordering", text);
  for (int& i : word) {
    if (i < 1 || i > rs.rank()) throw FieldError("ordering", text, "simple index out of range");
    --i;
  }
  try {
    return normal_ordering_from_reduced_word(rs, word);
  } catch (const InputError& e) {
    throw FieldError("ordering", text, e.what());
  }
}

// "id" or a word in simple reflections "1,2".
WeylElement make_weyl(const RootSystem& rs, const std::string& text) {
  if (text.empty() || text == "id" || text == "e") return WeylElement::identity(rs.rank());
  std::vector<int> word = parse_int_list("w", text);
  for (int& i : word) {
    if (i < 1 || i > rs.rank()) throw FieldError("w", text, "simple index out of range");
    --i;
  }
  return WeylElement::from_word(rs, word);
}

json roots_json(const RootSystem& rs, const std::vector<int>& idx) {
  json a = json::array();
  for (int i : idx) a.push_back(rs.root(i));
  return a;
}

std::string roots_text(const RootSystem& rs, const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? ", " : "") + to_string(rs.root(idx[i]));
  return s + ")";
}

// --- term arrays ---------------------------------------------------------------

json poly_terms(const ClassicalContext& ctx, const PolyFunc& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    json mono = json::array();
    for (const auto& [s, e] : m) mono.push_back({{"E", ctx.lie().weight(s)}, {"power", e}});
    terms.push_back({{"coefficient", c.to_string()}, {"monomial", mono}});
  }
  return terms;
}

json u_terms(const QuantumContext& q, const UElement& u) {
  json terms = json::array();
  const PbwBasis& b = *u.basis();
  const auto& g = q.lie();
  for (const auto& [m, c] : u.terms()) {
    json left = json::array(), right = json::array();
    UElement::Mono lm(m.size(), 0);
    for (int p = 0; p < b.size(); ++p) {
      if (m[p] == 0) continue;
      const int s = b.symbol_at(p);
      json gen = {{g.is_positive_symbol(s) ? "E" : "F", g.is_positive_symbol(s) ? g.weight(s) : negate(g.weight(s))},
                  {"power", m[p]}};
      if (p < b.ideal_start()) {
        lm[p] = m[p];
        left.push_back(gen);
      } else {
        right.push_back(gen);
      }
    }
    terms.push_back({{"left", left}, {"coefficient", c.weight_shift(b.weight(lm)).to_string()}, {"right", right}});
  }
  return terms;
}

// --- output ----------------------------------------------------------------------

struct Output {
  json data = json::object();
  std::vector<std::string> lines;
};

void emit(const Request& req, const Output& out) {
  if (req.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = req.command;
    j["algebra"] = req.algebra;
    for (const auto& [key, value] : out.data.items()) j[key] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : out.lines) std::cout << l << "\n";
  }
}

// --- commands --------------------------------------------------------------------

Output cmd_roots(const Request& req) {
  auto rs = make_algebra(req.algebra);
  Output out;
  json roots = json::array();
  out.lines.push_back("rank " + std::to_string(rs.rank()) + ", " + std::to_string(rs.size()) + " positive roots");
  for (int a = 0; a < rs.size(); ++a) {
    roots.push_back({{"root", rs.root(a)}, {"coroot", rs.coroot(a)}, {"height", rs.height(a)},
                     {"rho", to_string(rs.rho(a))}});
    out.lines.push_back("  " + to_string(rs.root(a)) + "  coroot " + to_string(rs.coroot(a)) + "  rho " +
                        to_string(rs.rho(a)));
  }
  out.data["rank"] = rs.rank();
  out.data["cartan"] = rs.cartan();
  out.data["positive_roots"] = roots;
  return out;
}

Output cmd_orderings(const Request& req) {
  auto rs = make_algebra(req.algebra);
  Output out;
  if (!req.ordering.empty()) {
    auto ord = make_ordering(rs, req.ordering);
    out.data["ordering"] = roots_json(rs, ord.sequence());
    out.data["valid"] = true;
    out.lines.push_back(roots_text(rs, ord.sequence()) + " is a normal ordering");
    return out;
  }
  auto all = enumerate_normal_orderings(rs, req.limit);
  json list = json::array();
  for (const auto& o : all) {
    list.push_back(roots_json(rs, o.sequence()));
    out.lines.push_back(roots_text(rs, o.sequence()));
  }
  out.data["orderings"] = list;
  out.data["count"] = all.size();
  return out;
}

Output cmd_decompose(const Request& req) {
  auto rs = make_algebra(req.algebra);
  ChevalleyBasis g(rs);
  auto ord = make_ordering(rs, req.ordering);
  LieElement y = parse_lie(g, req.expr);
  Output out;
  json factors = json::array();
  std::vector<ReductionStep<Rational>> steps;
  LieElement h;
  if (req.k) {
    auto d = partial_decompose(g, y, ord, *req.k);
    steps = d.steps;
    h = d.reduced;
  } else {
    auto d = decompose(g, y, ord);
    steps = d.steps;
    h = d.h_part;
  }
  out.lines.push_back("ordering " + roots_text(rs, ord.sequence()));
  out.lines.push_back("factors (beta_N first):");
  for (const auto& s : steps) {
    factors.push_back({{"root", rs.root(s.root)}, {"t", to_string(s.t)}});
    out.lines.push_back("  " + to_string(rs.root(s.root)) + "  t = " + to_string(s.t));
  }
  std::vector<std::string> values;
  for (int i = 0; i < rs.rank(); ++i) values.push_back(to_string(root_value(g, h, rs.simple_index(i))));
  std::string vtext = "[";
  for (std::size_t i = 0; i < values.size(); ++i) vtext += (i ? "," : "") + values[i];
  vtext += "]";
  out.data["ordering"] = roots_json(rs, ord.sequence());
  out.data["factors"] = factors;
  if (req.k) {
    out.data["reduced"] = to_string(g, h);
    out.lines.push_back("reduced: " + to_string(g, h));
  } else {
    out.data["h_part"] = {{"element", to_string(g, h)}, {"root_values", values}};
    out.lines.push_back("h-part: " + to_string(g, h) + "  (simple root values " + vtext + ")");
  }
  return out;
}

Output poly_output(const ClassicalContext& ctx, const PolyFunc& f) {
  Output out;
  out.data["result"] = ctx.to_string(f);
  out.data["terms"] = poly_terms(ctx, f);
  out.lines.push_back(ctx.to_string(f));
  return out;
}

Output cmd_project(const Request& req) {
  auto rs = make_algebra(req.algebra);
  ClassicalContext ctx(rs);
  auto ord = make_ordering(rs, req.ordering);
  PolyFunc f = parse_poly(ctx, req.expr);
  if (!ctx.carrier_b().contains(f)) throw FieldError("expression", req.expr, "P acts on functions on b (E[negative root] only)");
  PolyFunc r = req.partial ? ctx.project_partial(f, ord, *req.partial) : ctx.project(f, ord);
  return poly_output(ctx, r);
}

Output cmd_zhelobenko_classical(const Request& req) {
  auto rs = make_algebra(req.algebra);
  ClassicalContext ctx(rs);
  PolyFunc f = parse_poly(ctx, req.expr);
  NormalOrdering ord;
  int k;
  if (req.k) {
    ord = make_ordering(rs, req.ordering);
    k = *req.k;
  } else {
    auto ad = adapted_normal_ordering(rs, make_weyl(rs, req.w));
    ord = ad.ordering;
    k = ad.k;
  }
  Output out = poly_output(ctx, ctx.zhelobenko_classical(ord, k, f));
  out.data["ordering"] = roots_json(rs, ord.sequence());
  out.data["k"] = k;
  return out;
}

Output vector_output(const QuantumContext& q, const UElement& v) {
  Output out;
  out.data["result"] = q.to_string(v, true);
  out.data["terms"] = u_terms(q, v);
  out.lines.push_back(q.to_string(v, true));
  return out;
}

Output cmd_extremal(const Request& req) {
  auto rs = make_algebra(req.algebra);
  auto ord = make_ordering(rs, req.ordering);
  QuantumContext q(rs, ord);
  auto parsed = parse_u(q, q.verma_basis(), req.expr);
  if (!parsed.is_vector && !parsed.value.is_zero())
    throw FieldError("expression", req.expr, "p acts on vectors of V; end the expression with v0");
  return vector_output(q, q.extremal_projector(parsed.value, ord));
}

Output cmd_zhelobenko_q(const Request& req) {
  auto rs = make_algebra(req.algebra);
  NormalOrdering ord;
  int k;
  if (req.k) {
    ord = make_ordering(rs, req.ordering);
    k = *req.k;
  } else {
    auto ad = adapted_normal_ordering(rs, make_weyl(rs, req.w));
    ord = ad.ordering;
    k = ad.k;
  }
  QuantumContext q(rs, ord);
  auto parsed = parse_u(q, q.twisted_basis(ord, k), req.expr);
  if (!parsed.is_vector && !parsed.value.is_zero())
    throw FieldError("expression", req.expr, "q_w acts on vectors of V_w; end the expression with v0");
  Output out = vector_output(q, q.zhelobenko_qw(ord, k, parsed.value, req.max_depth));
  out.data["ordering"] = roots_json(rs, ord.sequence());
  out.data["k"] = k;
  return out;
}

int cmd_verify(const Request& req) {
  std::vector<int> ids;
  if (req.suite == "all") {
    for (int i = 1; i <= static_cast<int>(suite_names().size()); ++i) ids.push_back(i);
  } else if (int id = suite_id(req.suite); id > 0) {
    ids.push_back(id);
  } else {
    std::string names;
    for (const auto& n : suite_names()) names += " " + n;
    throw FieldError("suite", req.suite, "unknown suite (known: all" + names + ")");
  }
  SuiteOptions opt;
  opt.seed = req.seed;
  opt.slow = req.slow;
  Output out;
  json rows = json::array();
  bool all = true;
  for (int id : ids) {
    SuiteResult r = run_suite(id, opt);
    all = all && r.passed;
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"checks", r.checks},
                    {"seconds", r.seconds}, {"detail", r.detail}});
    char line[160];
    std::snprintf(line, sizeof line, "%d  %-22s %s  %8ld checks  %7.2fs", r.id, r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.checks, r.seconds);
    out.lines.push_back(line);
    if (!r.passed) out.lines.push_back("   " + r.detail);
  }
  out.data["seed"] = req.seed;
  out.data["suites"] = rows;
  out.data["passed"] = all;
  emit(req, out);
  return all ? 0 : kExitVerify;
}

void report_error(const Request& req, const char* kind, const std::string& message, const std::string& field,
                  const std::string& text, std::optional<std::size_t> column) {
  if (req.format == "json") {
    json e = {{"kind", kind}, {"message", message}};
    if (!field.empty()) e["field"] = field;
    if (column) e["column"] = *column;
    json j = {{"schema", 1}, {"command", req.command}, {"error", e}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cerr << kind << " error";
  if (!field.empty()) std::cerr << " in " << field;
  std::cerr << ": " << message << "\n";
  if (column && !text.empty()) {
    std::cerr << "  " << text << "\n  " << std::string(*column - 1, ' ') << "^\n";
  }
}

int dispatch(const Request& req) {
  if (req.command == "verify") return cmd_verify(req);
  Output out;
  if (req.command == "roots") out = cmd_roots(req);
  else if (req.command == "orderings") out = cmd_orderings(req);
  else if (req.command == "decompose") out = cmd_decompose(req);
  else if (req.command == "project") out = cmd_project(req);
  else if (req.command == "zhelobenko-classical") out = cmd_zhelobenko_classical(req);
  else if (req.command == "extremal") out = cmd_extremal(req);
  else if (req.command == "zhelobenko-q") out = cmd_zhelobenko_q(req);
  else throw InternalError("unhandled command " + req.command);
  emit(req, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact extremal projectors and Zhelobenko operators"};
  app.require_subcommand(1);
  Request req;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--algebra", req.algebra, "type label (A2, B2, G2, ...) or Cartan matrix [[2,-1],[-1,2]]");
    sub->add_option("--format", req.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto with_ordering = [&](CLI::App* sub) {
    sub->add_option("--ordering", req.ordering, "\"default\", a root list [[1,0],[1,1],[0,1]] or a reduced word 1,2,1");
  };

  auto* roots = app.add_subcommand("roots", "positive roots, coroots and rho");
  common(roots);

  auto* orderings = app.add_subcommand("orderings", "list normal orderings, or validate --ordering");
  common(orderings);
  with_ordering(orderings);
  orderings->add_option("--limit", req.limit, "maximum number listed");

  auto* decompose = app.add_subcommand("decompose", "y = Ad exp(-t_N e_N)...Ad exp(-t_1 e_1) h for regular y in b");
  common(decompose);
  with_ordering(decompose);
  decompose->add_option("--at", req.expr, "point of b, e.g. \"h:[2] + 3*e[1]\"")->required();
  decompose->add_option("--k", req.k, "stop after beta_k (partial reduction)");

  auto* project = app.add_subcommand("project", "classical extremal projector P or P_{>=k}");
  common(project);
  with_ordering(project);
  project->add_option("expression", req.expr, "function on b, e.g. \"E[-1,0]*E[0,-1]/H[1,1]\"")->required();
  project->add_option("--partial", req.partial, "k for P_{>=k}");

  auto* zc = app.add_subcommand("zhelobenko-classical", "classical Zhelobenko operator Q_w");
  common(zc);
  with_ordering(zc);
  zc->add_option("expression", req.expr, "function on b^w")->required();
  zc->add_option("--w", req.w, "word in simple reflections, e.g. 1,2 (\"id\" for the identity)");
  zc->add_option("--k", req.k, "use --ordering with w = s_{beta_k}...s_{beta_N} instead of --w");

  auto* ext = app.add_subcommand("extremal", "extremal projector p on a vector of V");
  common(ext);
  with_ordering(ext);
  ext->add_option("expression", req.expr, "vector of V, e.g. \"F[1]*v0\"")->required();

  auto* zq = app.add_subcommand("zhelobenko-q", "quantum Zhelobenko operator q_w: V_w -> V");
  common(zq);
  with_ordering(zq);
  zq->add_option("expression", req.expr, "vector of V_w, e.g. \"h[1]*v0\"")->required();
  zq->add_option("--w", req.w, "word in simple reflections");
  zq->add_option("--k", req.k, "use --ordering with w = s_{beta_k}...s_{beta_N} instead of --w");
  zq->add_option("--max-depth", req.max_depth, "series bound");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", req.suite, "suite name or id, or \"all\"")->required();
  verify->add_option("--seed", req.seed, "random seed");
  verify->add_option("--format", req.format, "output format")->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--slow", req.slow, "add B3 and C3 to the projector suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  req.command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(req);
  } catch (const ParseError& e) {
    report_error(req, "input", e.what(), "expression", req.expr, e.column());
    return kExitInput;
  } catch (const FieldError& e) {
    report_error(req, "input", e.what(), e.field(), e.text(), std::nullopt);
    return kExitInput;
  } catch (const InputError& e) {
    report_error(req, "input", e.what(), "", "", std::nullopt);
    return kExitInput;
  } catch (const EngineError& e) {
    report_error(req, "engine", e.what(), "", "", std::nullopt);
    return kExitEngine;
  } catch (const std::exception& e) {
    report_error(req, "internal", e.what(), "", "", std::nullopt);
    return 1;
  }
}
