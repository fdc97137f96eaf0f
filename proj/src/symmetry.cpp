#include "conjtoep/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace conjtoep {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw Error("unknown verdict: " + s);
}

Verdict decide(double residual, double tail_bound, double scale, const Tolerance& tol,
               double budget) {
  if (!(tail_bound <= budget)) return Verdict::inconclusive;
  return residual <= tol.bound(scale) + tail_bound ? Verdict::pass : Verdict::fail;
}

std::size_t default_check_range(const LaurentSymbol& phi, const Conjugation& c,
                                const CheckConfig& cfg) {
  const std::size_t band = static_cast<std::size_t>(phi.band());
  if (c.degree() < band + 2 * cfg.safety) throw Error("degree too small for symbol band");
  const std::size_t k = std::min(cfg.max_range, c.degree() - band - cfg.safety);
  if (cfg.range) {
    if (*cfg.range + band > c.degree()) throw Error("check range exceeds degree - band");
    return *cfg.range;
  }
  return k;
}

namespace {

double max_row_tail(const Conjugation& c, std::size_t w) {
  double t = 0.0;
  for (std::size_t q = 0; q <= w; ++q) t = std::max(t, c.row_tail(q));
  return t;
}

void require_window(const Conjugation& c, std::size_t w) {
  if (w > c.degree()) throw Error("window exceeds matrix");
}

CVector unit(std::size_t n, std::size_t i) {
  CVector e(n);
  e[i] = 1.0;
  return e;
}

}  // namespace

CVector conjugated_adjoint_column(const ComplexMatrix& a, const ComplexMatrix& t_adjoint,
                                  std::size_t n) {
  const CVector e = unit(a.cols(), n);
  const CVector ce = conj(e);
  const CVector y = a * std::span<const cplx>(ce);     // C e_n
  const CVector z = t_adjoint * std::span<const cplx>(y);  // T^* C e_n
  const CVector cz = conj(z);
  return a * std::span<const cplx>(cz);                // C T^* C e_n
}

double definition_residual(const ComplexMatrix& a, const ComplexMatrix& t,
                           std::span<const std::size_t> indices) {
  const ComplexMatrix th = t.adjoint();
  double r = 0.0;
  for (std::size_t n : indices) {
    const CVector col = conjugated_adjoint_column(a, th, n);
    for (std::size_t m : indices) r = std::max(r, std::abs(col[m] - t(m, n)));
  }
  return r;
}

double sandwich_tail_bound(const LaurentSymbol& phi, const Conjugation& c, std::size_t w) {
  const double norm = phi.l1_norm();
  if (norm == 0.0) return 0.0;
  return 2.0 * norm * max_row_tail(c, w);
}

double s_toeplitz_tail_bound(const LaurentSymbol& phi, const ShiftOperator& s, std::size_t w) {
  const double norm = phi.l1_norm();
  if (norm == 0.0) return 0.0;
  double sigma = 0.0;
  for (std::size_t p = 0; p <= w; ++p) sigma = std::max(sigma, s.column_error[p]);
  return std::min(norm * (2.0 * sigma + sigma * sigma), 2.0 * norm);
}

CriterionResult check_definition(const LaurentSymbol& phi, const Conjugation& c, std::size_t w,
                                 const Tolerance& tol, double tail_budget) {
  require_window(c, w);
  const TruncatedOperator t = toeplitz_matrix(phi, c.degree());
  std::vector<std::size_t> idx(w + 1);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  CriterionResult r;
  r.window = Window::square(w);
  r.tail_bound = sandwich_tail_bound(phi, c, w);
  r.residual = definition_residual(c.coeff(), t.matrix, idx);
  r.verdict = decide(r.residual, r.tail_bound, phi.l1_norm(), tol, tail_budget);
  return r;
}

CriterionResult check_transpose_basis(const LaurentSymbol& phi, const Conjugation& c,
                                      std::size_t w, const Tolerance& tol, double tail_budget) {
  require_window(c, w);
  const ComplexMatrix& u = c.coeff();
  std::vector<CVector> f(w + 1);
  for (std::size_t p = 0; p <= w; ++p) f[p] = u.column(p);

  CriterionResult r;
  r.window = Window::square(w);
  r.tail_bound = sandwich_tail_bound(phi, c, w);
  for (std::size_t p = 0; p <= w; ++p) {
    const CVector tf = apply_toeplitz(phi, f[p]);
    for (std::size_t q = 0; q <= w; ++q) {
      // [T]_{f}(q, p) = <T f_p, f_q> must equal T_{p,q} = phi_{p-q}
      const cplx expected = phi[static_cast<int>(p) - static_cast<int>(q)];
      r.residual = std::max(r.residual, std::abs(inner(tf, f[q]) - expected));
    }
  }
  r.verdict = decide(r.residual, r.tail_bound, phi.l1_norm(), tol, tail_budget);
  return r;
}

ConjugatedToeplitzResult check_conjugated_toeplitz(const LaurentSymbol& phi,
                                                   const Conjugation& c, std::size_t w,
                                                   const Tolerance& tol, double tail_budget) {
  require_window(c, w);
  const ComplexMatrix& u = c.coeff();
  const TruncatedOperator t = toeplitz_matrix(phi, c.degree());
  const ComplexMatrix p = u.adjoint() * t.matrix * u;
  const Window win = Window::square(w);

  ConjugatedToeplitzResult out;
  out.transpose_residual = max_abs_distance(p, t.matrix.transpose(), win);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      out.toeplitz_residual = std::max(out.toeplitz_residual, std::abs(p(i, j) - p(i + 1, j + 1)));

  CriterionResult& r = out.result;
  r.window = win;
  r.tail_bound = sandwich_tail_bound(phi, c, w);
  r.residual = std::max(out.transpose_residual, out.toeplitz_residual);
  // each diagonal difference involves two perturbed entries
  const Verdict vt = decide(out.toeplitz_residual, 2.0 * r.tail_bound, phi.l1_norm(), tol,
                            2.0 * tail_budget);
  const Verdict vr = decide(out.transpose_residual, r.tail_bound, phi.l1_norm(), tol, tail_budget);
  out.toeplitz = vt == Verdict::pass;
  if (vr == Verdict::inconclusive || vt == Verdict::inconclusive)
    r.verdict = Verdict::inconclusive;
  else
    r.verdict = (vr == Verdict::pass && vt == Verdict::pass) ? Verdict::pass : Verdict::fail;
  return out;
}

CriterionResult check_coefficient_equations(const LaurentSymbol& phi, const Conjugation& c,
                                            std::size_t jk_max, const Tolerance& tol) {
  CriterionResult r;
  r.window = Window::square(jk_max);
  const int band = phi.band();
  const int n_max = static_cast<int>(c.degree());
  if (static_cast<int>(jk_max) + band > n_max) {
    // some c_{n,m} with n or m above the degree would be needed
    r.tail_bound = 2.0 * phi.l1_norm();
    r.verdict = phi.l1_norm() == 0.0 ? Verdict::pass : Verdict::inconclusive;
    return r;
  }
  const ComplexMatrix& a = c.coeff();
  // c_{n,m} = <C z^n, z^m> = A_{m,n}
  auto cc = [&](int n, int m) { return a(static_cast<std::size_t>(m), static_cast<std::size_t>(n)); };
  const int kk = static_cast<int>(jk_max);
  for (int j = 0; j <= kk; ++j)
    for (int k = 0; k <= kk; ++k) {
      cplx lhs{}, rhs{};
      for (const auto& [s, v] : phi.coefficients()) {
        const cplx cv = std::conj(v);
        if (s + k >= 0) lhs += cv * cc(s + k, j);
        if (s >= 1) rhs += cv * cc(k, s + j);
        if (s <= 0 && -s <= j) rhs += cv * cc(k, j + s);
      }
      r.residual = std::max(r.residual, std::abs(lhs - rhs));
    }
  r.verdict = decide(r.residual, 0.0, phi.l1_norm(), tol, 0.0);
  return r;
}

CVector XYSystem::difference() const {
  const CVector xp = x * std::span<const cplx>(phi_plus);
  const CVector ym = y * std::span<const cplx>(phi_minus);
  CVector d(xp.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = xp[i] - ym[i];
  return d;
}

XYSystem build_xy(const Conjugation& c, const LaurentSymbol& phi, std::size_t k,
                  std::size_t trunc, std::size_t max_row) {
  if (trunc == 0) throw Error("truncation must be positive");
  if (static_cast<std::size_t>(phi.band()) > trunc) throw Error("symbol band exceeds truncation");
  if (k + trunc > c.degree() || max_row + trunc > c.degree())
    throw Error("X/Y truncation exceeds degree");
  const ComplexMatrix& a = c.coeff();
  auto cc = [&](std::size_t n, std::size_t m) { return a(m, n); };
  XYSystem s;
  s.k = k;
  s.x = ComplexMatrix::generate(max_row + 1, trunc, [&](std::size_t j, std::size_t col) {
    const std::size_t n = col + 1;
    return cc(n + k, j) - cc(k, n + j);
  });
  s.y = ComplexMatrix::generate(max_row + 1, trunc, [&](std::size_t j, std::size_t col) {
    const std::size_t l = col + 1;
    cplx v{};
    if (l <= j) v += cc(k, j - l);
    if (l <= k) v -= cc(k - l, j);
    return v;
  });
  s.phi_plus.resize(trunc);
  s.phi_minus.resize(trunc);
  for (std::size_t n = 1; n <= trunc; ++n) {
    s.phi_plus[n - 1] = std::conj(phi[static_cast<int>(n)]);
    s.phi_minus[n - 1] = std::conj(phi[-static_cast<int>(n)]);
  }
  return s;
}

CriterionResult check_xy(const LaurentSymbol& phi, const Conjugation& c, std::size_t k_max,
                         std::size_t trunc, const Tolerance& tol) {
  CriterionResult r;
  r.window = Window::square(k_max);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const CVector d = build_xy(c, phi, k, trunc, k_max).difference();
    for (const cplx& z : d) r.residual = std::max(r.residual, std::abs(z));
  }
  r.verdict = decide(r.residual, 0.0, phi.l1_norm(), tol, 0.0);
  return r;
}

CriterionResult check_s_toeplitz_necessary(const LaurentSymbol& phi, const Conjugation& c,
                                           std::size_t w, const Tolerance& tol,
                                           double tail_budget) {
  require_window(c, w);
  const ShiftOperator s = shift_from_conjugation(c);
  const TruncatedOperator t = toeplitz_matrix(phi, c.degree());
  CriterionResult r;
  r.window = Window::square(w);
  r.tail_bound = s_toeplitz_tail_bound(phi, s, w);
  double sigma = 0.0;
  for (std::size_t p = 0; p <= w; ++p) sigma = std::max(sigma, s.column_error[p]);
  r.residual = s_toeplitz_residual(t, s, r.window, sigma);
  r.verdict = decide(r.residual, r.tail_bound, phi.l1_norm(), tol, tail_budget);
  return r;
}

Verdict overall_verdict(const SymmetryReport& r) {
  bool all_pass = true, any_pass = false, any_fail = false;
  for (const char* id : kEquivalentCriteria) {
    const auto it = r.verdicts.find(id);
    const Verdict v = it == r.verdicts.end() ? Verdict::inconclusive : it->second;
    all_pass = all_pass && v == Verdict::pass;
    any_pass = any_pass || v == Verdict::pass;
    any_fail = any_fail || v == Verdict::fail;
  }
  if (all_pass) return Verdict::pass;
  if (any_fail && !any_pass) return Verdict::fail;
  return Verdict::inconclusive;
}

namespace {

// Largest w <= range whose bound is within budget (0 if none is).
template <class Bound>
std::size_t widest_window(std::size_t range, double budget, Bound bound) {
  std::size_t w = 0;
  for (std::size_t q = 0; q <= range; ++q) {
    if (!(bound(q) <= budget)) break;
    w = q;
  }
  return w;
}

std::string disagreement_dump(const LaurentSymbol& phi, const Conjugation& c,
                              const SymmetryReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "symbol:";
  for (const auto& [n, v] : phi.coefficients()) os << " " << n << ":" << v;
  os << "\ndegree: " << c.degree() << "\n";
  if (!c.note().empty()) os << "note: " << c.note() << "\n";
  for (const auto& [id, v] : r.verdicts)
    os << id << ": " << to_string(v) << " residual=" << r.residuals.at(id)
       << " tail_bound=" << r.tail_bounds.at(id) << "\n";
  os << "coefficient matrix (window " << r.window.max_row << "):\n";
  for (std::size_t i = 0; i <= r.check_range && i <= c.degree(); ++i) {
    for (std::size_t j = 0; j <= r.check_range && j <= c.degree(); ++j) os << " " << c.coeff()(i, j);
    os << "\n";
  }
  return os.str();
}

}  // namespace

SymmetryReport run_all(const LaurentSymbol& phi, const Conjugation& c, const CheckConfig& cfg) {
  if (c.exact_finite()) throw Error("run_all needs a Hardy-space conjugation, not exact_finite");
  cfg.tol.validate();
  const std::size_t range = default_check_range(phi, c, cfg);
  const std::size_t trunc = std::max<std::size_t>(1, static_cast<std::size_t>(phi.band()));

  const std::size_t w = widest_window(range, cfg.tail_budget, [&](std::size_t q) {
    return sandwich_tail_bound(phi, c, q);
  });
  const ShiftOperator s = shift_from_conjugation(c);
  const std::size_t ws = widest_window(range, cfg.tail_budget, [&](std::size_t q) {
    return s_toeplitz_tail_bound(phi, s, q);
  });

  SymmetryReport rep;
  rep.window = Window::square(w);
  rep.s_toeplitz_window = Window::square(ws);
  rep.check_range = range;
  rep.degree = c.degree();
  rep.tolerance = cfg.tol;
  rep.tail_budget = cfg.tail_budget;
  if (!c.note().empty()) rep.notes.push_back(c.note());

  auto record = [&](const char* id, const CriterionResult& r) {
    rep.verdicts[id] = r.verdict;
    rep.residuals[id] = r.residual;
    rep.tail_bounds[id] = r.tail_bound;
    rep.tail_bound = std::max(rep.tail_bound, r.tail_bound);
  };
  record(criterion::definition, check_definition(phi, c, w, cfg.tol, cfg.tail_budget));
  record(criterion::transpose_basis, check_transpose_basis(phi, c, w, cfg.tol, cfg.tail_budget));
  record(criterion::conjugated_toeplitz,
         check_conjugated_toeplitz(phi, c, w, cfg.tol, cfg.tail_budget).result);
  record(criterion::coefficient_equations, check_coefficient_equations(phi, c, range, cfg.tol));
  record(criterion::xy_system, check_xy(phi, c, range, trunc, cfg.tol));
  record(criterion::s_toeplitz, check_s_toeplitz_necessary(phi, c, ws, cfg.tol, cfg.tail_budget));
  rep.overall = overall_verdict(rep);

  bool any_pass = false, any_fail = false;
  for (const char* id : kEquivalentCriteria) {
    any_pass = any_pass || rep.verdicts[id] == Verdict::pass;
    any_fail = any_fail || rep.verdicts[id] == Verdict::fail;
  }
  if (any_pass && any_fail)
    throw CriterionDisagreement("equivalent criteria disagree", disagreement_dump(phi, c, rep), rep);
  if (rep.verdicts[criterion::definition] == Verdict::pass &&
      rep.verdicts[criterion::s_toeplitz] == Verdict::fail)
    throw CriterionDisagreement("symmetric pair fails the S-Toeplitz condition",
                                disagreement_dump(phi, c, rep), rep);
  return rep;
}

}  // namespace conjtoep
