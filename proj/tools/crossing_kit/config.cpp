#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crossing/error.hpp"

namespace crossing::kit {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Schema, (path.empty() ? std::string("config") : path) + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Object view that rejects keys nobody asked for.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema(path_, "expected an object");
  }

  bool has(const std::string& k) {
    seen_.insert(k);
    return j_.contains(k) && !j_.at(k).is_null();
  }
  const json& at(const std::string& k) {
    if (!has(k)) schema(join(path_, k), "required key missing");
    return j_.at(k);
  }
  std::string path(const std::string& k) const { return join(path_, k); }

  double number(const std::string& k) {
    const json& v = at(k);
    if (!v.is_number()) schema(path(k), "expected a number");
    return v.get<double>();
  }
  double number_or(const std::string& k, double d) { return has(k) ? number(k) : d; }
  int integer_or(const std::string& k, int d) {
    if (!has(k)) return d;
    const json& v = j_.at(k);
    if (!v.is_number_integer()) schema(path(k), "expected an integer");
    return v.get<int>();
  }
  std::string string(const std::string& k) {
    const json& v = at(k);
    if (!v.is_string()) schema(path(k), "expected a string");
    return v.get<std::string>();
  }
  std::string string_or(const std::string& k, const std::string& d) { return has(k) ? string(k) : d; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) schema(join(path_, it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) schema(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Poly1 poly1(const json& v, const std::string& path) { return Poly1(numbers(v, path)); }

// [[i, j, c], ...] for sum c x^i xi^j
Poly2 poly2(const json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array of [i, j, coefficient] terms");
  Poly2 p;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& term = v[t];
    if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() || !term[1].is_number_integer() ||
        !term[2].is_number())
      schema(tp, "expected [i, j, coefficient] with integer powers");
    const int i = term[0].get<int>(), j = term[1].get<int>();
    if (i < 0 || j < 0) schema(tp, "powers must be non-negative");
    p += Poly2::monomial(i, j, term[2].get<double>());
  }
  return p;
}

cplx complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  const auto xs = numbers(v, path);
  if (xs.size() != 2) schema(path, "expected a number or [re, im]");
  return {xs[0], xs[1]};
}

Coupling coupling(const json& v, const std::string& path) {
  Obj o(v, path);
  const std::string shape = o.string("shape");
  Coupling c;
  if (shape == "zero") {
    c = Coupling::zero();
  } else if (shape == "constant") {
    c = Coupling::constant(o.number("amplitude"));
  } else if (shape == "bump") {
    const double r = o.number("radius");
    if (!(r > 0.0)) schema(o.path("radius"), "radius must be positive");
    c = Coupling::bump(o.number("amplitude"), r, o.number_or("center", 0.0));
  } else if (shape == "plateau") {
    const double in = o.number("inner"), out = o.number("outer");
    if (!(0.0 <= in && in < out)) schema(o.path("outer"), "need 0 <= inner < outer");
    c = Coupling::plateau(o.number("amplitude"), in, out, o.number_or("center", 0.0));
  } else {
    schema(o.path("shape"), "expected zero, constant, bump or plateau");
  }
  o.finish();
  return c;
}

std::pair<double, double> interval(Obj& o, std::pair<double, double> d) {
  if (!o.has("interval")) return d;
  const auto xs = numbers(o.at("interval"), o.path("interval"));
  if (xs.size() != 2 || !(xs[0] < 0.0 && 0.0 < xs[1])) schema(o.path("interval"), "expected [a, b] with a < 0 < b");
  return {xs[0], xs[1]};
}

Problem problem(const json& v) {
  Obj o(v, "problem");
  const std::string kind = o.string("kind");
  Problem out;
  if (kind == "model") {
    const auto [a, b] = interval(o, {-1.0, 1.0});
    auto p = NormalFormProblem::polynomial(poly1(o.at("f"), o.path("f")), coupling(o.at("r1"), o.path("r1")),
                                           coupling(o.at("r2"), o.path("r2")), a, b, 1e-2);
    p.points_per_period = o.integer_or("points_per_period", p.points_per_period);
    out = std::move(p);
  } else if (kind == "schrodinger") {
    SchrodingerSweepProblem s;
    s.problem.V1 = poly1(o.at("V1"), o.path("V1"));
    s.problem.V2 = poly1(o.at("V2"), o.path("V2"));
    s.problem.E0 = o.number("E0");
    s.problem.W = coupling(o.at("W"), o.path("W"));
    std::tie(s.problem.x_in, s.problem.x_out) = interval(o, {-1.0, 1.0});
    const std::string c = o.string_or("crossing", s.problem.E0 > 0.0 ? "plus" : "caustic");
    if (c == "plus")
      s.which = CrossingPoint::Plus;
    else if (c == "minus")
      s.which = CrossingPoint::Minus;
    else if (c == "caustic")
      s.which = CrossingPoint::Caustic;
    else
      schema(o.path("crossing"), "expected plus, minus or caustic");
    out = std::move(s);
  } else if (kind == "symbols") {
    SymbolProblem s;
    s.p1 = poly2(o.at("p1"), o.path("p1"));
    s.p2 = poly2(o.at("p2"), o.path("p2"));
    if (o.has("q1")) s.q1 = complex_value(o.at("q1"), o.path("q1"));
    if (o.has("q2")) s.q2 = complex_value(o.at("q2"), o.path("q2"));
    out = std::move(s);
  } else {
    schema(o.path("kind"), "expected model, schrodinger or symbols");
  }
  o.finish();
  return out;
}

void solver(const json& v, SweepOptions& s) {
  Obj o(v, "solver");
  const std::string k = o.string_or("kind", "auto");
  if (k == "auto")
    s.solver = ModelSolver::Auto;
  else if (k == "neumann")
    s.solver = ModelSolver::Neumann;
  else if (k == "ode")
    s.solver = ModelSolver::Ode;
  else
    schema(o.path("kind"), "expected auto, neumann or ode");
  s.neumann_terms = o.integer_or("neumann_terms", s.neumann_terms);
  if (s.neumann_terms < 0) schema(o.path("neumann_terms"), "must be non-negative");
  s.ode_tol = o.number_or("ode_tol", s.ode_tol);
  if (!(s.ode_tol > 0.0)) schema(o.path("ode_tol"), "must be positive");
  o.finish();
}

void extraction(const json& v, SweepOptions& s) {
  Obj o(v, "extraction");
  s.extraction.eps = o.number_or("eps", s.extraction.eps);
  if (o.has("x_plus")) s.extraction.x_plus = o.number("x_plus");
  s.extraction.window = o.integer_or("window", s.extraction.window);
  if (s.extraction.window < 1) schema(o.path("window"), "must be positive");
  s.schrodinger_eps = o.number_or("schrodinger_eps", s.schrodinger_eps);
  o.finish();
}

void tolerances(const json& v, VerdictSpec& t) {
  Obj o(v, "tolerances");
  t.exponent_tol = o.number_or("exponent", t.exponent_tol);
  t.prefactor_rel_tol = o.number_or("prefactor_rel", t.prefactor_rel_tol);
  t.angle_tol = o.number_or("angle", t.angle_tol);
  t.diag_below = o.number_or("diag_below", t.diag_below);
  t.diag_above = o.number_or("diag_above", t.diag_above);
  if (o.has("rel_error")) t.rel_error_tol = o.number("rel_error");
  t.rel_error_max_h = o.number_or("rel_error_max_h", t.rel_error_max_h);
  t.identity_tol = o.number_or("identity", t.identity_tol);
  o.finish();
}

std::vector<double> h_grid(const json& v) {
  Obj o(v, "h_grid");
  const double hmax = o.number("max"), hmin = o.number("min");
  const int n = o.integer_or("points", 12);
  if (!(hmin > 0.0)) schema(o.path("min"), "h must be positive");
  if (!(hmax > hmin)) schema(o.path("max"), "must exceed min");
  if (n < 2) schema(o.path("points"), "need at least 2 points");
  o.finish();
  return geometric_grid(hmax, hmin, n);
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "predict") return Mode::Predict;
  if (s == "solve-model") return Mode::SolveModel;
  if (s == "solve-schrodinger") return Mode::SolveSchrodinger;
  if (s == "sweep") return Mode::Sweep;
  if (s == "verify") return Mode::Verify;
  throw Error(ErrorCode::Schema, "mode: unknown mode '" + s + "'");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Predict: return "predict";
    case Mode::SolveModel: return "solve-model";
    case Mode::SolveSchrodinger: return "solve-schrodinger";
    case Mode::Sweep: return "sweep";
    case Mode::Verify: return "verify";
  }
  return "?";
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("config: invalid JSON: ") + e.what());
  }
  Obj o(j, "");
  RunConfig c;
  if (o.has("mode")) c.mode = parse_mode(o.string("mode"));
  c.problem = problem(o.at("problem"));
  if (o.has("h")) {
    c.h = o.number("h");
    if (!(*c.h > 0.0)) schema("h", "h must be positive");
  }
  if (o.has("h_values") && o.has("h_grid")) schema("h_grid", "give either h_values or h_grid");
  if (o.has("h_values")) {
    c.h_values = numbers(o.at("h_values"), "h_values");
    for (std::size_t i = 0; i < c.h_values.size(); ++i)
      if (!(c.h_values[i] > 0.0)) schema("h_values[" + std::to_string(i) + "]", "h must be positive");
  }
  if (o.has("h_grid")) c.h_values = h_grid(o.at("h_grid"));
  c.sweep.jobs = o.integer_or("jobs", 1);
  if (c.sweep.jobs < 1) schema("jobs", "must be at least 1");
  if (o.has("solver")) solver(o.at("solver"), c.sweep);
  if (o.has("extraction")) extraction(o.at("extraction"), c.sweep);
  if (o.has("tolerances")) tolerances(o.at("tolerances"), c.verdicts);
  if (o.has("properties")) {
    Obj p(o.at("properties"), "properties");
    c.random_polynomials = p.integer_or("random_polynomials", 0);
    if (c.random_polynomials < 0) schema(p.path("random_polynomials"), "must be non-negative");
    p.finish();
  }
  if (o.has("output")) {
    Obj out(o.at("output"), "output");
    if (out.has("csv")) c.csv_path = out.string("csv");
    if (out.has("summary")) c.summary_path = out.string("summary");
    out.finish();
  }
  o.finish();
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<double> default_h_values(const Problem& p) {
  if (std::holds_alternative<NormalFormProblem>(p)) return geometric_grid(1e-1, 1e-4, 12);
  return geometric_grid(1e-2, 1e-4, 8);
}

}  // namespace crossing::kit
