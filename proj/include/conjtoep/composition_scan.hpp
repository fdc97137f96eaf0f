#pragma once

// For the weighted composition conjugation only constant trigonometric
// symbols are symmetric. These routines test that statement.

#include "conjtoep/symmetry.hpp"

namespace conjtoep {

/// phi_n = <T W z^n, W 1> and phi_{-n} = <T W 1, W z^n> for n = 0..n_max,
/// using rows of U extended until their remainder is negligible.
CriterionResult check_w_symmetry_conditions(const LaurentSymbol& phi, const CompositionParams& p,
                                            std::size_t n_max, const Tolerance& tol = {},
                                            double tail_budget = kDefaultTailBudget);

/// Values tried for phi_{-1}, phi_0 and phi_1. With include_locus, every
/// (phi_{-1}, phi_0) pair is also tried with phi_1 = -(conj(alpha)/alpha) phi_{-1}.
struct TrigGrid {
  std::vector<cplx> minus_one;
  std::vector<cplx> zero;
  std::vector<cplx> plus_one;
  bool include_locus = true;
};

/// `points` equally spaced values in [lo, hi] times `direction`, on all three axes.
TrigGrid uniform_grid(std::size_t points, double lo, double hi, cplx direction = 1.0);

struct ScanPoint {
  cplx minus_one, zero, plus_one;
};

struct ScanReport {
  cplx alpha;
  std::size_t degree = 0;
  std::size_t tested = 0;
  std::vector<ScanPoint> passing;
  std::vector<ScanPoint> inconclusive;
  std::vector<ScanPoint> disagreements;
  std::size_t constants_tested = 0;
  /// Every constant passes, nothing else does, and nothing is undecided.
  bool theorem_reproduced = false;
};

ScanReport scan_trigpoly_theorem(const CompositionParams& p, const TrigGrid& grid,
                                 std::size_t degree = 32, const CheckConfig& cfg = {});

}  // namespace conjtoep
