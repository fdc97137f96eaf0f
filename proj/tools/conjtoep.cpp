// conjtoep: command-line front end for the symmetry checks.
//
// Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 criteria disagree,
// 64 malformed input or usage, 65 invariant violation.

#include "conjtoep/json_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace conjtoep;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInvariant = 65;

struct Options {
  std::string symbol;
  std::string conj;
  std::size_t degree = 32;
  std::string box;
  std::string window;
  double tol_abs = Tolerance{}.absolute;
  double tol_rel = Tolerance{}.relative;
  double tail_budget = kDefaultTailBudget;
  std::optional<std::size_t> kmax;
  std::string out;
  std::string format = "json";
  std::string alpha;
  std::size_t grid_points = 21;
  double grid_min = -1.0;
  double grid_max = 1.0;
  double grid_phase = 0.0;
  bool no_locus = false;
};

std::size_t env_default_degree() {
  const char* v = std::getenv("CONJTOEP_DEFAULT_DEGREE");
  if (!v || !*v) return 32;
  char* end = nullptr;
  const long d = std::strtol(v, &end, 10);
  if (*end != '\0' || d < 0) throw JsonError("CONJTOEP_DEFAULT_DEGREE must be a nonnegative integer");
  return static_cast<std::size_t>(d);
}

std::vector<std::size_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::size_t> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    const long x = std::strtol(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0' || x < 0) throw JsonError(std::string("bad ") + what + ": " + s);
    v.push_back(static_cast<std::size_t>(x));
  }
  if (v.empty()) throw JsonError(std::string("empty ") + what);
  return v;
}

Tolerance tolerance(const Options& o) {
  Tolerance t{o.tol_abs, o.tol_rel};
  t.validate();
  return t;
}

json criterion_json(const CriterionResult& r) {
  return {{"verdict", to_string(r.verdict)},
          {"residual", r.residual},
          {"tail_bound", r.tail_bound},
          {"window", json::array({r.window.max_row, r.window.max_col})}};
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::pass: return kExitPass;
    case Verdict::fail: return kExitFail;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string pretty(const json& j, int indent = 0) {
  std::ostringstream os;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (!j.is_object()) return j.dump();
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << pad << k << ":\n" << pretty(v, indent + 2);
    } else if (v.is_array() && !v.empty() && v[0].is_array() && v[0].size() > 0 && v[0][0].is_array()) {
      os << pad << k << ": [" << v.size() << " x " << v[0].size() << " matrix]\n";
    } else {
      os << pad << std::left << std::setw(24) << (k + ":") << v.dump() << "\n";
    }
  }
  return os.str();
}

void emit(const Options& o, const json& j) {
  const std::string text = o.format == "pretty" ? pretty(j) : j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error("cannot write " + o.out);
  f << text;
}

json effective_config(const std::string& command, const Options& o) {
  json c = {{"command", command},
            {"degree", o.degree},
            {"tolerance", {{"abs", o.tol_abs}, {"rel", o.tol_rel}}},
            {"tail_budget", o.tail_budget}};
  if (o.kmax) c["kmax"] = *o.kmax;
  if (!o.box.empty()) c["box"] = o.box;
  return c;
}

CheckConfig check_config(const Options& o) {
  CheckConfig cfg;
  cfg.tol = tolerance(o);
  cfg.tail_budget = o.tail_budget;
  cfg.range = o.kmax;
  return cfg;
}

int cmd_check(const Options& o) {
  const json sj = parse_json_argument(o.symbol);
  const json cj = parse_json_argument(o.conj);
  const LaurentSymbol phi = symbol_from_json(sj);
  const Conjugation c = materialize(family_from_json(cj), o.degree);
  json config = effective_config("check", o);
  config["symbol"] = sj;
  config["conj"] = cj;
  try {
    const SymmetryReport r = run_all(phi, c, check_config(o));
    json out = report_to_json(r);
    out["config"] = config;
    emit(o, out);
    return verdict_exit(r.overall);
  } catch (const CriterionDisagreement& e) {
    json out = report_to_json(e.report());
    out["config"] = config;
    out["disagreement"] = e.dump();
    emit(o, out);
    std::cerr << "internal criterion disagreement: " << e.what() << "\n" << e.dump();
    return kExitDisagreement;
  }
}

int cmd_factor(const Options& o) {
  const json cj = parse_json_argument(o.conj);
  const Conjugation c = materialize(family_from_json(cj), o.degree);
  const Tolerance tol = tolerance(o);
  const Factorization f = canonical_factorization(c, tol);

  // U J against C on random vectors
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  double recon = 0.0;
  for (int s = 0; s < 100; ++s) {
    CVector x(f.u.cols());
    for (auto& z : x) z = {g(rng), g(rng)};
    const CVector cx = conj(x);
    const CVector ux = f.u * std::span<const cplx>(cx);
    const CVector direct = c.apply(x);
    for (std::size_t i = 0; i < x.size(); ++i) recon = std::max(recon, std::abs(ux[i] - direct[i]));
  }
  json out = {{"family", cj.value("family", "")},
              {"degree", c.degree()},
              {"U", matrix_to_json(f.u)},
              {"window", json::array({f.window.max_row, f.window.max_col})},
              {"tail_bound", f.tail_bound},
              {"residuals",
               {{"symmetry", f.check.symmetry},
                {"unitarity", f.check.unitarity},
                {"reconstruction", recon}}},
              {"config", effective_config("factor", o)}};
  if (!c.note().empty()) out["notes"] = json::array({c.note()});
  emit(o, out);
  return kExitPass;
}

int cmd_xy(const Options& o) {
  const json sj = parse_json_argument(o.symbol);
  const json cj = parse_json_argument(o.conj);
  const LaurentSymbol phi = symbol_from_json(sj);
  const Conjugation c = materialize(family_from_json(cj), o.degree);
  const CheckConfig cfg = check_config(o);
  const std::size_t k_max = default_check_range(phi, c, cfg);
  const std::size_t trunc = std::max<std::size_t>(1, static_cast<std::size_t>(phi.band()));
  const Tolerance tol = tolerance(o);

  json per_k = json::array();
  double worst = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const XYSystem s = build_xy(c, phi, k, trunc, k_max);
    double r = 0.0;
    for (const cplx& z : s.difference()) r = std::max(r, std::abs(z));
    worst = std::max(worst, r);
    per_k.push_back({{"k", k}, {"X", matrix_to_json(s.x)}, {"Y", matrix_to_json(s.y)}, {"residual", r}});
  }
  const Verdict v = decide(worst, 0.0, phi.l1_norm(), tol, 0.0);
  json config = effective_config("xy", o);
  config["symbol"] = sj;
  config["conj"] = cj;
  emit(o, {{"systems", per_k}, {"max_residual", worst}, {"k_max", k_max}, {"truncation", trunc},
           {"verdict", to_string(v)}, {"config", config}});
  return verdict_exit(v);
}

int cmd_check_poly(const Options& o) {
  const json sj = parse_json_argument(o.symbol);
  const json cj = parse_json_argument(o.conj);
  const PolySymbol phi = poly_symbol_from_json(sj);
  const PolyConjugationSpec spec = poly_conjugation_from_json(cj);
  if (o.box.empty()) throw JsonError("check-poly needs --box");
  const BoxTruncation box(parse_list(o.box, "box"));
  if (box.dimension() != phi.dimension() || spec.theta.size() != phi.dimension())
    throw JsonError("symbol, conjugation and box dimensions differ");
  const Tolerance tol = tolerance(o);

  std::vector<std::size_t> w;
  if (!o.window.empty()) {
    w = parse_list(o.window, "window");
  } else {
    for (std::size_t i = 0; i < box.dimension(); ++i) {
      const auto b = static_cast<std::size_t>(phi.band()[i]);
      w.push_back(box.degrees()[i] >= b ? box.degrees()[i] - b : 0);
    }
  }
  const CriterionResult crit = check_poly_criterion(phi, spec.theta, tol);
  const PolyDefinitionResult def = poly_check_definition(phi, spec.theta, spec.xi, box, w, tol, o.tail_budget);

  json out = {{"criterion", criterion_json(crit)}};
  out["definition"] = criterion_json(def.result);
  out["definition"]["tilde_residual"] = def.tilde_residual;

  bool box_ok = true;
  std::vector<std::size_t> wd;
  for (std::size_t n : box.degrees()) {
    box_ok = box_ok && n >= 2;
    wd.push_back(n >= 2 ? n - 2 : 0);
  }
  if (box_ok) {
    const DoublyCommuting dc =
        doubly_commuting_residual(poly_conjugation(spec.theta, spec.xi, box), box, wd);
    out["doubly_commuting"] = {{"commute", dc.commute},
                               {"star_commute", dc.star_commute},
                               {"wandering_dimension", dc.wandering_dimension}};
  }
  json config = effective_config("check-poly", o);
  config["symbol"] = sj;
  config["conj"] = cj;
  out["config"] = config;

  const Verdict a = crit.verdict, b = def.result.verdict;
  const bool disagree = (a == Verdict::pass && b == Verdict::fail) || (a == Verdict::fail && b == Verdict::pass);
  out["overall"] = to_string(disagree ? Verdict::inconclusive : (b == Verdict::inconclusive ? a : b));
  emit(o, out);
  if (disagree) {
    std::cerr << "internal criterion disagreement between coefficient criterion and definition\n";
    return kExitDisagreement;
  }
  return verdict_exit(b == Verdict::inconclusive ? a : b);
}

int cmd_check_finite(const Options& o) {
  const json sj = parse_json_argument(o.symbol);
  const FiniteToeplitz t = finite_toeplitz_from_json(sj);
  const json cj = o.conj.empty() ? json{{"family", "toeplitz"}} : parse_json_argument(o.conj);
  const Conjugation c = finite_conjugation_from_json(cj, t.n);
  const CriterionResult crit = finite_symmetry_criterion(t, c);
  const CriterionResult gen = general_symmetry(t.matrix(), c);
  json config = effective_config("check-finite", o);
  config["symbol"] = sj;
  config["conj"] = cj;
  const bool disagree = crit.verdict != gen.verdict;
  emit(o, {{"finite_criterion", criterion_json(crit)},
           {"general_symmetry", criterion_json(gen)},
           {"overall", to_string(disagree ? Verdict::inconclusive : crit.verdict)},
           {"config", config}});
  if (disagree) {
    std::cerr << "internal criterion disagreement between finite criterion and general check\n";
    return kExitDisagreement;
  }
  return verdict_exit(crit.verdict);
}

int cmd_scan(const Options& o) {
  cplx alpha;
  if (!o.alpha.empty()) {
    alpha = complex_from_json(parse_json_argument(o.alpha));
  } else if (!o.conj.empty()) {
    const FamilySpec f = family_from_json(parse_json_argument(o.conj));
    const auto* p = std::get_if<CompositionParams>(&f);
    if (!p) throw JsonError("scan-trigpoly needs a composition conjugation");
    alpha = p->alpha;
  } else {
    throw JsonError("scan-trigpoly needs --alpha or --conj");
  }
  const CompositionParams p(alpha);
  TrigGrid grid = uniform_grid(o.grid_points, o.grid_min, o.grid_max, std::polar(1.0, o.grid_phase));
  grid.include_locus = !o.no_locus;
  const ScanReport r = scan_trigpoly_theorem(p, grid, o.degree, check_config(o));
  json out = scan_to_json(r);
  json config = effective_config("scan-trigpoly", o);
  config["grid"] = {{"points", o.grid_points}, {"min", o.grid_min}, {"max", o.grid_max},
                    {"phase", o.grid_phase}, {"locus", !o.no_locus}};
  out["config"] = config;
  emit(o, out);
  if (!r.disagreements.empty()) return kExitDisagreement;
  return r.theorem_reproduced ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    o.degree = env_default_degree();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Symmetry checks for Toeplitz operators under conjugations"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* s, bool symbol, bool conj) {
    if (symbol) s->add_option("--symbol", o.symbol, "symbol JSON or @file")->required();
    if (conj) s->add_option("--conj", o.conj, "conjugation JSON or @file")->required();
    s->add_option("--degree", o.degree, "truncation degree N");
    s->add_option("--tol-abs", o.tol_abs, "absolute tolerance");
    s->add_option("--tol-rel", o.tol_rel, "relative tolerance");
    s->add_option("--tail-budget", o.tail_budget, "largest admissible truncation bound");
    s->add_option("--out", o.out, "write output to this path");
    s->add_option("--format", o.format, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
  };

  auto* check = app.add_subcommand("check", "run every criterion for a one-variable symbol");
  add_common(check, true, true);
  check->add_option("--kmax", o.kmax, "largest j, k index checked");

  auto* poly = app.add_subcommand("check-poly", "polydisc criterion and definition");
  add_common(poly, true, true);
  poly->add_option("--box", o.box, "per-axis degrees N1,N2,...")->required();
  poly->add_option("--window", o.window, "per-axis window w1,w2,...");

  auto* finite = app.add_subcommand("check-finite", "finite Toeplitz matrix criteria");
  add_common(finite, true, false);
  finite->add_option("--conj", o.conj, "finite conjugation JSON or @file (default toeplitz)");

  auto* factor = app.add_subcommand("factor", "canonical factorization C = U J");
  add_common(factor, false, true);

  auto* xy = app.add_subcommand("xy", "X(k), Y(k) systems");
  add_common(xy, true, true);
  xy->add_option("--kmax", o.kmax, "largest k");

  auto* scan = app.add_subcommand("scan-trigpoly", "scan phi_-1, phi_0, phi_1 under the composition conjugation");
  add_common(scan, false, false);
  scan->add_option("--conj", o.conj, "composition conjugation JSON or @file");
  scan->add_option("--alpha", o.alpha, "alpha as [re, im]");
  scan->add_option("--grid-points", o.grid_points, "points per axis");
  scan->add_option("--grid-min", o.grid_min, "smallest grid value");
  scan->add_option("--grid-max", o.grid_max, "largest grid value");
  scan->add_option("--grid-phase", o.grid_phase, "grid values are multiplied by exp(i phase)");
  scan->add_flag("--no-locus", o.no_locus, "skip the phi_1 = -(conj(alpha)/alpha) phi_-1 points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*poly) return cmd_check_poly(o);
    if (*finite) return cmd_check_finite(o);
    if (*factor) return cmd_factor(o);
    if (*xy) return cmd_xy(o);
    if (*scan) return cmd_scan(o);
  } catch (const JsonError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}
