// One line per acceptance criterion; exit status 1 if any line fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace conjtoep;
using oracle::kPi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

double max_residual(const SymmetryReport& r) {
  double m = 0.0;
  for (const char* k : kEquivalentCriteria) m = std::max(m, r.residuals.at(k));
  return m;
}

double min_residual(const SymmetryReport& r) {
  double m = 1e300;
  for (const char* k : kEquivalentCriteria) m = std::min(m, r.residuals.at(k));
  return m;
}

bool all_equal(const SymmetryReport& r, Verdict v) {
  for (const char* k : kEquivalentCriteria)
    if (r.verdicts.at(k) != v) return false;
  return true;
}

bool five_identical(const SymmetryReport& r) { return all_equal(r, r.verdicts.at(criterion::definition)); }

CVector diagonal_of(const FamilySpec& fam, std::size_t size) {
  CVector d(size, 1.0);
  if (const auto* t = std::get_if<ThetaXi>(&fam))
    for (std::size_t n = 0; n < size; ++n)
      d[n] = std::exp(cplx(0, t->xi)) * std::exp(cplx(0, -t->theta * static_cast<double>(n)));
  if (const auto* a = std::get_if<AlphaDiagonal>(&fam))
    for (std::size_t n = 0; n < size; ++n) {
      const std::size_t len = a->alphas.size();
      const cplx an = n < len ? a->alphas[n] : a->alphas[len - a->period + (n - len) % a->period];
      d[n] = an * an;
    }
  return d;
}

/// Independent action of C on the first `size` coefficients.
std::function<CVector(const CVector&)> action_of(const FamilySpec& fam) {
  if (const auto* b = std::get_if<BasisSpec>(&fam)) {
    const ComplexMatrix f = b->columns;
    return [f](const CVector& x) { return oracle::basis_apply(f, x); };
  }
  if (const auto* p = std::get_if<CompositionParams>(&fam)) {
    const cplx a = p->alpha;
    return [a](const CVector& x) { return oracle::composition_apply(a, x, x.size(), 1024); };
  }
  return [fam](const CVector& x) { return oracle::diagonal_apply(diagonal_of(fam, x.size()), x); };
}

AlphaDiagonal random_alpha_diagonal(oracle::Random& rng, std::size_t length) {
  AlphaDiagonal a;
  if (rng.integer(0, 1) == 0) {
    // linear phase with random signs
    const double theta = rng.uniform(-kPi, kPi), c = rng.uniform(-kPi, kPi);
    for (std::size_t n = 0; n < length; ++n)
      a.alphas.push_back((rng.integer(0, 1) ? 1.0 : -1.0) * std::polar(1.0, c - static_cast<double>(n) * theta / 2));
    a.period = 1;
  } else {
    // period two with alpha_1 / alpha_0 a power of i
    const cplx a0 = rng.unimodular();
    a.alphas = {a0, a0 * std::pow(cplx(0, 1), rng.integer(0, 3))};
    a.period = 2;
  }
  return a;
}

/// phi with phi_{m-n} = alpha_m^2 conj(alpha_n)^2 phi_{n-m}; coefficients
/// whose ratio is not constant along the diagonal are left at zero.
LaurentSymbol alpha_symmetric_symbol(oracle::Random& rng, const AlphaDiagonal& a, int band) {
  std::map<int, cplx> c{{0, rng.gaussian()}};
  for (int k = 1; k <= band; ++k) {
    const cplx r0 = a.alpha(k) * a.alpha(k) * std::conj(a.alpha(0) * a.alpha(0));
    bool constant = true;
    for (std::size_t m = static_cast<std::size_t>(k); m < 80; ++m) {
      const cplx r = a.alpha(m) * a.alpha(m) * std::conj(a.alpha(m - k) * a.alpha(m - k));
      constant = constant && std::abs(r - r0) < 1e-12;
    }
    if (!constant) continue;
    c[-k] = rng.gaussian();
    c[k] = r0 * c[-k];
  }
  return LaurentSymbol(c);
}

bool alpha_condition_holds(const LaurentSymbol& phi, const AlphaDiagonal& a, std::size_t n_max) {
  for (std::size_t m = 0; m <= n_max; ++m)
    for (std::size_t n = 0; n <= n_max; ++n) {
      const int d = static_cast<int>(m) - static_cast<int>(n);
      const cplx rhs = a.alpha(m) * a.alpha(m) * std::conj(a.alpha(n) * a.alpha(n)) * phi[-d];
      if (std::abs(phi[d] - rhs) > 1e-12 * (1 + phi.l1_norm())) return false;
    }
  return true;
}

LaurentSymbol perturb(oracle::Random& rng, const LaurentSymbol& phi, int band) {
  int k = 0;
  while (k == 0) k = rng.integer(-band, band);
  return phi.with(k, phi[k] + 1e-3 * rng.unimodular());
}

// --- criteria -------------------------------------------------------------

Outcome criterion_equivalence() {
  Outcome o;
  oracle::Random rng(1001);
  const auto t0 = Clock::now();
  std::size_t pass = 0, fail = 0, disagreements = 0, non_constant = 0;
  for (int s = 0; s < 200; ++s) {
    FamilySpec fam;
    switch (s % 5) {
      case 0: fam = CanonicalJ{}; break;
      case 1: fam = ThetaXi{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)}; break;
      case 2: fam = random_alpha_diagonal(rng, 4); break;
      case 3: fam = BasisSpec{rng.unitary(static_cast<std::size_t>(rng.integer(2, 4)))}; break;
      default: fam = CompositionParams(rng.in_disc(0.6)); break;
    }
    const int band = rng.integer(0, 4);
    const bool symmetric = s % 2 == 0;
    LaurentSymbol phi;
    if (std::holds_alternative<CompositionParams>(fam)) {
      phi = symmetric ? LaurentSymbol::constant(rng.gaussian()) : rng.symbol(std::max(band, 1));
    } else if (symmetric) {
      const auto basis = oracle::symmetric_symbols(action_of(fam), 33, 8, band);
      for (const auto& b : basis) phi = phi + rng.uniform(-1.0, 1.0) * b;
      if (basis.empty()) phi = LaurentSymbol::constant(1.0);
    } else {
      phi = rng.symbol(std::max(band, 1));
    }
    const Conjugation c = materialize(fam, 32);
    try {
      const SymmetryReport r = run_all(phi, c);
      const std::string tag = family_name(fam) + " sample " + std::to_string(s);
      o.require(five_identical(r), tag + ": criteria returned different verdicts");
      const Verdict expect = symmetric ? Verdict::pass : Verdict::fail;
      o.require(r.overall == expect, tag + ": verdict " + to_string(r.overall) + " against oracle " + to_string(expect));
      (r.overall == Verdict::pass ? pass : fail) += 1;
      non_constant += r.overall == Verdict::pass && !phi.is_constant();
    } catch (const CriterionDisagreement& e) {
      ++disagreements;
      o.require(false, std::string("disagreement: ") + e.what());
    }
  }
  const double t = seconds_since(t0);
  o.require(t <= 60.0, "runtime above 60 s");
  o.detail << "200 pairs, " << pass << " pass (" << non_constant << " non-constant), " << fail << " fail, " << disagreements
           << " disagreements, " << t << " s";
  return o;
}

struct SymmetricInstance {
  LaurentSymbol phi;
  FamilySpec fam;
};

Outcome separation(const char* label, std::uint64_t seed,
                   const std::function<SymmetricInstance(oracle::Random&)>& draw,
                   std::vector<SymmetricInstance>& instances) {
  Outcome o;
  oracle::Random rng(seed);
  double worst_pass = 0.0, weakest_fail = 1e300;
  for (int s = 0; s < 50; ++s) {
    const SymmetricInstance inst = draw(rng);
    instances.push_back(inst);
    const Conjugation c = materialize(inst.fam, 32);
    const std::string tag = std::string(label) + " sample " + std::to_string(s);
    try {
      const SymmetryReport r = run_all(inst.phi, c);
      o.require(all_equal(r, Verdict::pass), tag + ": symmetric symbol not accepted");
      o.require(max_residual(r) < 1e-10, tag + ": residual above 1e-10");
      worst_pass = std::max(worst_pass, max_residual(r));
      const SymmetryReport q = run_all(perturb(rng, inst.phi, inst.phi.band()), c);
      o.require(all_equal(q, Verdict::fail), tag + ": perturbation not rejected");
      o.require(min_residual(q) >= 1e-4, tag + ": perturbed residual below 1e-4");
      weakest_fail = std::min(weakest_fail, min_residual(q));
    } catch (const CriterionDisagreement& e) {
      o.require(false, tag + ": " + e.what());
    }
  }
  o.detail << "50 symbols, largest symmetric residual " << worst_pass << ", smallest perturbed residual "
           << weakest_fail;
  return o;
}

Outcome finite_exhaustive() {
  Outcome o;
  oracle::Random rng(1004);
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t passed = 0;
  for (int s = 0; s < 1000; ++s) {
    FiniteToeplitz t{static_cast<std::size_t>(rng.integer(1, 8)), {}};
    for (int k = -static_cast<int>(t.n); k <= static_cast<int>(t.n); ++k) t.a[k] = rng.gaussian();
    const Conjugation c = toeplitz_conjugation(t.n);
    const CriterionResult r = finite_symmetry_criterion(t, c);
    const CriterionResult g = general_symmetry(t.matrix(), c);
    worst = std::max({worst, r.residual, g.residual});
    passed += r.verdict == Verdict::pass && g.verdict == Verdict::pass && r.residual < 1e-12 && g.residual < 1e-12;
  }
  const double t = seconds_since(t0);
  o.require(passed == 1000, "not every matrix passed");
  o.require(t <= 5.0, "runtime above 5 s");
  o.detail << passed << "/1000 pass, largest residual " << worst << ", " << t << " s";
  return o;
}

Outcome composition_closed_form() {
  Outcome o;
  oracle::Random rng(1005);
  double worst_oracle = 0.0, worst_sym = 0.0;
  for (int s = 0; s < 20; ++s) {
    const CompositionParams p(rng.in_disc(0.7));
    const int terms = std::max(default_series_terms(p), 64);
    for (int i = 0; i <= 24; ++i)
      for (int j = 0; i + j <= 24; ++j) {
        const cplx u = u_entry(p, i, j);
        worst_oracle = std::max(worst_oracle, std::abs(u - u_entry_oracle(p, i, j, terms)));
        worst_sym = std::max(worst_sym, std::abs(u - u_entry(p, j, i)));
      }
  }
  o.require(worst_oracle < 1e-12, "closed form differs from the oracle");
  o.require(worst_sym < 1e-12, "coefficients not symmetric");
  o.detail << "20 alphas, oracle gap " << worst_oracle << ", symmetry gap " << worst_sym;
  return o;
}

Outcome constant_only() {
  Outcome o;
  const std::pair<cplx, cplx> cases[] = {{0.5, 1.0},
                                         {cplx(0, 0.3), std::polar(1.0, kPi / 3)},
                                         {std::polar(0.6, kPi / 5), 1.0}};
  for (const auto& [alpha, direction] : cases) {
    const auto t0 = Clock::now();
    const ScanReport r = scan_trigpoly_theorem(CompositionParams(alpha), uniform_grid(21, -1.0, 1.0, direction));
    const double t = seconds_since(t0);
    std::size_t non_constant = 0;
    for (const auto& pt : r.passing) non_constant += pt.minus_one != cplx{} || pt.plus_one != cplx{};
    std::ostringstream tag;
    tag << "alpha " << alpha;
    o.require(r.theorem_reproduced, tag.str() + ": scan did not reproduce the statement");
    o.require(non_constant == 0 && r.passing.size() == r.constants_tested, tag.str() + ": passing set is not the constants");
    o.require(t <= 120.0, tag.str() + ": runtime above 120 s");
    o.detail << tag.str() << ": " << r.tested << " points, " << r.passing.size() << " pass, " << r.inconclusive.size()
             << " inconclusive, " << t << " s; ";
  }
  return o;
}

Outcome s_toeplitz(const std::vector<SymmetricInstance>& instances) {
  Outcome o;
  double worst = 0.0;
  for (const auto& inst : instances) {
    const SymmetryReport r = run_all(inst.phi, materialize(inst.fam, 32));
    worst = std::max(worst, r.residuals.at(criterion::s_toeplitz));
    o.require(r.verdicts.at(criterion::s_toeplitz) == Verdict::pass, "symmetric instance fails S-Toeplitz");
  }
  o.require(worst < 1e-10, "S-Toeplitz residual above 1e-10");
  const SymmetryReport z = run_all(LaurentSymbol::monomial(1), materialize(CanonicalJ{}, 32));
  const double zs = z.residuals.at(criterion::s_toeplitz);
  o.require(z.verdicts.at(criterion::s_toeplitz) == Verdict::pass && zs < 1e-12, "(z, J) fails S-Toeplitz");
  o.require(all_equal(z, Verdict::fail) && min_residual(z) >= 1 - 1e-12, "(z, J) not rejected by every criterion");
  o.detail << instances.size() << " symmetric instances, largest S-Toeplitz residual " << worst
           << "; (z, J): S-Toeplitz residual " << zs << ", smallest symmetry residual " << min_residual(z);
  return o;
}

Outcome polydisc() {
  Outcome o;
  oracle::Random rng(1008);
  const Tolerance tol;
  const BoxTruncation box({8, 8});
  std::size_t agree = 0, pass = 0;
  for (int s = 0; s < 100; ++s) {
    const std::vector<double> theta{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    const std::vector<double> xi{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    std::map<MultiIndex, cplx> c;
    const int b = rng.integer(1, 2);
    for (int k0 = -b; k0 <= b; ++k0)
      for (int k1 = -b; k1 <= b; ++k1)
        if (rng.uniform() < 0.5) c[{k0, k1}] = rng.gaussian();
    if (s % 2 == 0) {
      // phi_{-k} = e^{i k.theta} phi_k
      for (int k0 = 0; k0 <= b; ++k0)
        for (int k1 = k0 == 0 ? 1 : -b; k1 <= b; ++k1) {
          const MultiIndex k{k0, k1}, minus{-k0, -k1};
          if (c.count(k))
            c[minus] = std::exp(cplx(0, k0 * theta[0] + k1 * theta[1])) * c[k];
          else
            c.erase(minus);
        }
    }
    const PolySymbol phi(2, c);
    std::vector<std::size_t> w;
    for (std::size_t i = 0; i < 2; ++i) w.push_back(8 - static_cast<std::size_t>(phi.band()[i]));
    const auto crit = check_poly_criterion(phi, theta, tol);
    const auto def = poly_check_definition(phi, theta, xi, box, w, tol);
    const bool same = crit.verdict == def.result.verdict && crit.verdict != Verdict::inconclusive;
    agree += same;
    pass += same && crit.verdict == Verdict::pass;
  }
  o.require(agree == 100, "criterion and definition disagree");

  std::size_t identical = 0;
  for (int s = 0; s < 20; ++s) {
    const auto phi = rng.symbol(rng.integer(0, 4));
    std::map<MultiIndex, cplx> m;
    for (const auto& [k, v] : phi.coefficients()) m[{k}] = v;
    const double theta = rng.uniform(-kPi, kPi), xi = rng.uniform(-kPi, kPi);
    const BoxTruncation b1({24});
    const Conjugation c1 = materialize(ThetaXi{theta, xi}, 24);
    const auto a = poly_check_definition(PolySymbol(1, m), {theta}, {xi}, b1, {16}, tol);
    const auto h = check_definition(phi, c1, 16, tol);
    identical += a.result.residual == h.residual && a.result.verdict == h.verdict &&
                 poly_conjugation({theta}, {xi}, b1).coeff() == c1.coeff() &&
                 poly_toeplitz(PolySymbol(1, m), b1).matrix == toeplitz_matrix(phi, 24).matrix;
  }
  o.require(identical == 20, "d = 1 differs from the one-variable path");
  o.detail << "d = 2: " << agree << "/100 agree (" << pass << " symmetric); d = 1: " << identical
           << "/20 bit-identical";
  return o;
}

Outcome factorization() {
  Outcome o;
  oracle::Random rng(1009);
  std::vector<FamilySpec> fams{CanonicalJ{}, ThetaXi{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)},
                               random_alpha_diagonal(rng, 25), random_alpha_diagonal(rng, 25),
                               BasisSpec{rng.unitary(5)}};
  for (cplx a : {cplx(0.5), cplx(0, 0.3), std::polar(0.6, kPi / 5)}) fams.push_back(CompositionParams(a));
  double worst_sym = 0.0, worst_unit = 0.0, worst_action = 0.0;
  for (const auto& fam : fams) {
    const Conjugation c = materialize(fam, 24);
    const Factorization f = canonical_factorization(c);
    const double sym = max_abs_distance(f.u, f.u.transpose(), f.window);
    const double unit = f.check.unitarity;
    const auto act = action_of(fam);
    double action = 0.0;
    for (int s = 0; s < 100; ++s) {
      const CVector x = rng.vector(25);
      const CVector cx = conj(x);
      const CVector ux = f.u * std::span<const cplx>(cx);
      const CVector ref = act(x);
      for (std::size_t i = 0; i < x.size(); ++i) action = std::max(action, std::abs(ux[i] - ref[i]));
    }
    const std::string tag = family_name(fam);
    o.require(sym < 1e-12, tag + ": U not symmetric");
    o.require(unit < 1e-10 + f.tail_bound, tag + ": U not unitary on the window");
    o.require(action < 1e-10, tag + ": U J does not reproduce C");
    worst_sym = std::max(worst_sym, sym);
    worst_unit = std::max(worst_unit, unit);
    worst_action = std::max(worst_action, action);
  }
  o.detail << fams.size() << " conjugations, symmetry " << worst_sym << ", unitarity " << worst_unit
           << ", action " << worst_action;
  return o;
}

Outcome intertwiner() {
  Outcome o;
  oracle::Random rng(1010);
  const std::size_t degree = 16;
  double worst = 0.0;
  std::size_t absent = 0;
  // C = lambda U J with U z^n = f_n, i.e. coefficient matrix lambda F; F = W W^T is symmetric unitary
  auto symmetric_basis = [&] {
    const ComplexMatrix w = rng.unitary(static_cast<std::size_t>(rng.integer(2, 5)));
    return BasisSpec{w * w.transpose()};
  };
  auto scaled = [&](const BasisSpec& b, cplx lam) {
    const std::size_t r = b.columns.rows();
    auto a = ComplexMatrix::generate(degree + 1, degree + 1, [&](std::size_t i, std::size_t j) {
      if (i < r && j < r) return lam * b.columns(i, j);
      return i == j ? lam : cplx{};
    });
    return Conjugation(std::move(a), Banded{r - 1});
  };
  for (int s = 0; s < 20; ++s) {
    const BasisSpec b = symmetric_basis();
    const cplx lam = rng.unimodular();
    const auto got = intertwine_lambda(scaled(b, lam), b);
    o.require(got.has_value(), "lambda not recovered");
    if (got) worst = std::max(worst, std::abs(*got - lam));
  }
  for (int s = 0; s < 20; ++s) {
    const BasisSpec b = symmetric_basis();
    const BasisSpec other = symmetric_basis();
    const auto got = intertwine_lambda(scaled(other, rng.unimodular()), b);
    absent += !got.has_value();
  }
  o.require(worst < 1e-10, "lambda error above 1e-10");
  o.require(absent == 20, "mismatched pair produced a lambda");
  o.detail << "20 matched: largest lambda error " << worst << "; 20 mismatched: " << absent << " absent";
  return o;
}

}  // namespace

int main() {
  std::vector<SymmetricInstance> symmetric;
  bool all_ok = true;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all_ok = all_ok && o.ok;
    std::printf("%s [%d] %s: %s\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.str().c_str());
    std::fflush(stdout);
  };

  report(1, "criterion equivalence", criterion_equivalence);
  report(2, "theta-xi separation", [&] { return separation("theta-xi", 1002, [](oracle::Random& rng) {
           const double theta = rng.uniform(-kPi, kPi);
           std::map<int, cplx> c{{0, rng.gaussian()}};
           for (int n = 1; n <= 3; ++n) {
             c[-n] = rng.gaussian();
             c[n] = c[-n] * std::polar(1.0, -n * theta);
           }
           return SymmetricInstance{LaurentSymbol(c), ThetaXi{theta, rng.uniform(-kPi, kPi)}};
         }, symmetric); });
  report(3, "alpha-diagonal separation", [&] { return separation("alpha-diagonal", 1003, [](oracle::Random& rng) {
           for (;;) {
             const AlphaDiagonal a = random_alpha_diagonal(rng, 33);
             const LaurentSymbol phi = alpha_symmetric_symbol(rng, a, 3);
             if (phi.band() == 3 && alpha_condition_holds(phi, a, 40)) return SymmetricInstance{phi, a};
           }
         }, symmetric); });
  report(4, "finite toeplitz", finite_exhaustive);
  report(5, "composition closed form", composition_closed_form);
  report(6, "constant-only scan", constant_only);
  report(7, "S-Toeplitz necessity", [&] { return s_toeplitz(symmetric); });
  report(8, "polydisc criterion", polydisc);
  report(9, "factorization round-trip", factorization);
  report(10, "intertwiner", intertwiner);
  return all_ok ? 0 : 1;
}
