#include "conjtoep/json_io.hpp"

#include <fstream>
#include <sstream>

namespace conjtoep {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw JsonError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw JsonError(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw JsonError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw JsonError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0) throw JsonError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw JsonError("bad integer key \"" + s + "\"");
  }
  if (used != s.size()) throw JsonError("bad integer key \"" + s + "\"");
  return v;
}

std::vector<double> reals(const json& j, const char* what) {
  if (!j.is_array()) throw JsonError(std::string(what) + " must be an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

json window_to_json(Window w) { return json::array({w.max_row, w.max_col}); }

Window window_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw JsonError("window must be [rows, cols]");
  return {count(j[0], "window"), count(j[1], "window")};
}

}  // namespace

json parse_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw JsonError("cannot read " + text.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw JsonError(std::string("malformed JSON: ") + e.what());
  }
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw JsonError("complex value must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw JsonError("matrix must be a nonempty array of rows");
  std::vector<cplx> e;
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != cols) throw JsonError("ragged matrix");
    for (const auto& z : r) e.push_back(complex_from_json(z));
  }
  return ComplexMatrix(j.size(), cols, std::move(e));
}

json symbol_to_json(const LaurentSymbol& phi) {
  json c = json::object();
  for (const auto& [n, v] : phi.coefficients()) c[std::to_string(n)] = complex_to_json(v);
  return {{"coeffs", c}};
}

LaurentSymbol symbol_from_json(const json& j) {
  const json& c = field(j, "coeffs");
  if (!c.is_object()) throw JsonError("coeffs must be an object");
  std::map<int, cplx> m;
  for (const auto& [k, v] : c.items()) m[parse_int(k)] = complex_from_json(v);
  return LaurentSymbol(std::move(m));
}

json family_to_json(const FamilySpec& spec) {
  json j = {{"family", family_name(spec)}};
  if (const auto* t = std::get_if<ThetaXi>(&spec)) {
    j["theta"] = t->theta;
    j["xi"] = t->xi;
  } else if (const auto* a = std::get_if<AlphaDiagonal>(&spec)) {
    json al = json::array();
    for (const cplx& z : a->alphas) al.push_back(complex_to_json(z));
    j["alphas"] = al;
    j["period"] = a->period;
  } else if (const auto* p = std::get_if<CompositionParams>(&spec)) {
    j["alpha"] = complex_to_json(p->alpha);
  } else if (const auto* b = std::get_if<BasisSpec>(&spec)) {
    json cols = json::array();
    for (std::size_t k = 0; k < b->columns.cols(); ++k) {
      json col = json::array();
      for (std::size_t i = 0; i < b->columns.rows(); ++i) col.push_back(complex_to_json(b->columns(i, k)));
      cols.push_back(std::move(col));
    }
    j["columns"] = cols;
  }
  return j;
}

FamilySpec family_from_json(const json& j) {
  const json& f = field(j, "family");
  if (!f.is_string()) throw JsonError("family must be a string");
  const std::string name = f.get<std::string>();
  if (name == "canonical_j") return CanonicalJ{};
  if (name == "theta_xi")
    return ThetaXi{number(field(j, "theta"), "theta"), number(field(j, "xi"), "xi")};
  if (name == "alpha_diag") {
    const json& al = field(j, "alphas");
    if (!al.is_array()) throw JsonError("alphas must be an array");
    AlphaDiagonal a;
    for (const auto& z : al) a.alphas.push_back(complex_from_json(z));
    a.period = j.contains("period") ? count(j["period"], "period") : a.alphas.size();
    return a;
  }
  if (name == "composition") return CompositionParams(complex_from_json(field(j, "alpha")));
  if (name == "basis") {
    const json& cols = field(j, "columns");
    if (!cols.is_array() || cols.empty()) throw JsonError("columns must be a nonempty array");
    std::vector<CVector> v;
    for (const auto& col : cols) {
      if (!col.is_array()) throw JsonError("each column must be an array");
      CVector c;
      for (const auto& z : col) c.push_back(complex_from_json(z));
      v.push_back(std::move(c));
    }
    try {
      return BasisSpec{ComplexMatrix::from_columns(v)};
    } catch (const Error& e) {
      throw JsonError(e.what());
    }
  }
  throw JsonError("unknown family \"" + name + "\"");
}

json poly_symbol_to_json(const PolySymbol& phi) {
  json c = json::object();
  for (const auto& [k, v] : phi.coefficients()) {
    std::string key;
    for (std::size_t i = 0; i < k.size(); ++i) key += (i ? "," : "") + std::to_string(k[i]);
    c[key] = complex_to_json(v);
  }
  return {{"d", phi.dimension()}, {"coeffs", c}};
}

PolySymbol poly_symbol_from_json(const json& j) {
  const std::size_t d = count(field(j, "d"), "d");
  const json& c = field(j, "coeffs");
  if (!c.is_object()) throw JsonError("coeffs must be an object");
  std::map<MultiIndex, cplx> m;
  for (const auto& [key, v] : c.items()) {
    MultiIndex k;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) k.push_back(parse_int(part));
    if (k.size() != d) throw JsonError("index \"" + key + "\" does not have d components");
    m[k] = complex_from_json(v);
  }
  return PolySymbol(d, std::move(m));
}

json poly_conjugation_to_json(const PolyConjugationSpec& s) {
  return {{"family", "poly_theta_xi"}, {"theta", s.theta}, {"xi", s.xi}};
}

PolyConjugationSpec poly_conjugation_from_json(const json& j) {
  const json& f = field(j, "family");
  if (!f.is_string() || f.get<std::string>() != "poly_theta_xi")
    throw JsonError("polydisc conjugation family must be \"poly_theta_xi\"");
  PolyConjugationSpec s{reals(field(j, "theta"), "theta"), reals(field(j, "xi"), "xi")};
  if (s.theta.size() != s.xi.size()) throw JsonError("theta and xi must have the same length");
  return s;
}

json finite_toeplitz_to_json(const FiniteToeplitz& t) {
  json a = json::object();
  for (const auto& [k, v] : t.a) a[std::to_string(k)] = complex_to_json(v);
  return {{"N", t.n}, {"a", a}};
}

FiniteToeplitz finite_toeplitz_from_json(const json& j) {
  FiniteToeplitz t;
  t.n = count(field(j, "N"), "N");
  const json& a = field(j, "a");
  if (!a.is_object()) throw JsonError("a must be an object");
  for (const auto& [k, v] : a.items()) t.a[parse_int(k)] = complex_from_json(v);
  t.validate();
  return t;
}

Conjugation finite_conjugation_from_json(const json& j, std::size_t n) {
  const json& f = field(j, "family");
  if (!f.is_string()) throw JsonError("family must be a string");
  const std::string name = f.get<std::string>();
  if (name == "toeplitz") return toeplitz_conjugation(n);
  if (name == "canonical_j") return Conjugation(ComplexMatrix::identity(n + 1), ExactFinite{});
  if (name == "matrix") {
    ComplexMatrix a = matrix_from_json(field(j, "coeff"));
    if (a.rows() != n + 1) throw Error("conjugation size does not match N");
    return finite_conjugation(std::move(a));
  }
  throw JsonError("unknown finite conjugation family \"" + name + "\"");
}

json report_to_json(const SymmetryReport& r) {
  json verdicts = json::object();
  for (const auto& [k, v] : r.verdicts) verdicts[k] = to_string(v);
  return {{"verdicts", verdicts},
          {"residuals", r.residuals},
          {"tail_bounds", r.tail_bounds},
          {"window", window_to_json(r.window)},
          {"s_toeplitz_window", window_to_json(r.s_toeplitz_window)},
          {"check_range", r.check_range},
          {"degree", r.degree},
          {"tolerance", {{"abs", r.tolerance.absolute}, {"rel", r.tolerance.relative}}},
          {"tail_budget", r.tail_budget},
          {"tail_bound", r.tail_bound},
          {"overall", to_string(r.overall)},
          {"notes", r.notes}};
}

SymmetryReport report_from_json(const json& j) {
  SymmetryReport r;
  try {
    for (const auto& [k, v] : field(j, "verdicts").items()) r.verdicts[k] = verdict_from_string(v.get<std::string>());
    for (const auto& [k, v] : field(j, "residuals").items()) r.residuals[k] = number(v, "residual");
    if (j.contains("tail_bounds"))
      for (const auto& [k, v] : j["tail_bounds"].items()) r.tail_bounds[k] = number(v, "tail bound");
    r.window = window_from_json(field(j, "window"));
    if (j.contains("s_toeplitz_window")) r.s_toeplitz_window = window_from_json(j["s_toeplitz_window"]);
    r.tail_bound = number(field(j, "tail_bound"), "tail_bound");
    if (j.contains("check_range")) r.check_range = count(j["check_range"], "check_range");
    if (j.contains("degree")) r.degree = count(j["degree"], "degree");
    if (j.contains("tolerance")) {
      r.tolerance.absolute = number(field(j["tolerance"], "abs"), "abs");
      r.tolerance.relative = number(field(j["tolerance"], "rel"), "rel");
    }
    if (j.contains("tail_budget")) r.tail_budget = number(j["tail_budget"], "tail_budget");
    r.overall = j.contains("overall") ? verdict_from_string(j["overall"].get<std::string>())
                                      : overall_verdict(r);
    if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw JsonError(e.what());
  }
  for (const auto& [k, v] : r.verdicts)
    if (!r.residuals.count(k)) throw JsonError("criterion \"" + k + "\" has a verdict but no residual");
  return r;
}

json scan_to_json(const ScanReport& r) {
  auto points = [](const std::vector<ScanPoint>& v) {
    json a = json::array();
    for (const auto& p : v)
      a.push_back({{"phi_-1", complex_to_json(p.minus_one)},
                   {"phi_0", complex_to_json(p.zero)},
                   {"phi_1", complex_to_json(p.plus_one)}});
    return a;
  };
  return {{"alpha", complex_to_json(r.alpha)},
          {"degree", r.degree},
          {"tested", r.tested},
          {"constants_tested", r.constants_tested},
          {"passing", points(r.passing)},
          {"inconclusive", points(r.inconclusive)},
          {"disagreements", points(r.disagreements)},
          {"theorem_reproduced", r.theorem_reproduced}};
}

}  // namespace conjtoep
