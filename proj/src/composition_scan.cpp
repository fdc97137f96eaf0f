#include "conjtoep/composition_scan.hpp"

#include <algorithm>
#include <cmath>

namespace conjtoep {

CriterionResult check_w_symmetry_conditions(const LaurentSymbol& phi, const CompositionParams& p,
                                            std::size_t n_max, const Tolerance& tol,
                                            double tail_budget) {
  if (static_cast<int>(n_max) < phi.band()) throw Error("n_max below symbol band");
  const int last = static_cast<int>(n_max);
  std::size_t length = 2 * (n_max + 1) + 16;
  constexpr std::size_t kMaxLength = std::size_t{1} << 17;
  while (length < kMaxLength && !(composition_remainder_bound(p, last, length) < 1e-20))
    length *= 2;

  const auto rows = composition_rows(p, n_max + 1, length);
  std::vector<double> rem(n_max + 1);
  for (std::size_t i = 0; i <= n_max; ++i)
    rem[i] = std::min(1.0, composition_remainder_bound(p, static_cast<int>(i), length));

  const CVector t0 = apply_toeplitz(phi, rows[0]);
  CriterionResult r;
  r.window = Window::square(n_max);
  const double norm = phi.l1_norm();
  for (std::size_t n = 0; n <= n_max; ++n) {
    const int ni = static_cast<int>(n);
    const CVector tn = apply_toeplitz(phi, rows[n]);
    r.residual = std::max(r.residual, std::abs(inner(tn, rows[0]) - phi[ni]));
    r.residual = std::max(r.residual, std::abs(inner(t0, rows[n]) - phi[-ni]));
    if (norm != 0.0)
      r.tail_bound = std::max(r.tail_bound, norm * (rem[n] + rem[0] + rem[n] * rem[0]));
  }
  r.verdict = decide(r.residual, r.tail_bound, norm, tol, tail_budget);
  return r;
}

TrigGrid uniform_grid(std::size_t points, double lo, double hi, cplx direction) {
  if (points == 0) throw Error("grid needs at least one point");
  std::vector<cplx> v(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    v[i] = x * direction;
  }
  return {v, v, v, true};
}

ScanReport scan_trigpoly_theorem(const CompositionParams& p, const TrigGrid& grid,
                                 std::size_t degree, const CheckConfig& cfg) {
  const Conjugation c = materialize(FamilySpec{p}, degree);
  ScanReport rep;
  rep.alpha = p.alpha;
  rep.degree = degree;
  const cplx locus = -std::conj(p.alpha) / p.alpha;

  auto test = [&](cplx m1, cplx z0, cplx p1) {
    const LaurentSymbol phi({{-1, m1}, {0, z0}, {1, p1}});
    const bool constant = m1 == cplx{} && p1 == cplx{};
    ++rep.tested;
    if (constant) ++rep.constants_tested;
    try {
      const SymmetryReport r = run_all(phi, c, cfg);
      if (r.overall == Verdict::pass) rep.passing.push_back({m1, z0, p1});
      if (r.overall == Verdict::inconclusive) rep.inconclusive.push_back({m1, z0, p1});
    } catch (const CriterionDisagreement&) {
      rep.disagreements.push_back({m1, z0, p1});
    }
  };

  for (const cplx& m1 : grid.minus_one)
    for (const cplx& z0 : grid.zero) {
      for (const cplx& p1 : grid.plus_one) test(m1, z0, p1);
      if (grid.include_locus) test(m1, z0, locus * m1);
    }

  const bool only_constants = std::all_of(rep.passing.begin(), rep.passing.end(), [](const ScanPoint& s) {
    return s.minus_one == cplx{} && s.plus_one == cplx{};
  });
  rep.theorem_reproduced = rep.inconclusive.empty() && rep.disagreements.empty() &&
                           only_constants && rep.passing.size() == rep.constants_tested;
  return rep;
}

}  // namespace conjtoep
