#pragma once

// Hardy space of the polydisc D^d, truncated to a box of multi-indices.

#include "conjtoep/symmetry.hpp"

#include <map>

namespace conjtoep {

using MultiIndex = std::vector<int>;

/// phi = sum_k phi_k z^k over k in Z^d, finitely supported.
class PolySymbol {
 public:
  explicit PolySymbol(std::size_t d, std::map<MultiIndex, cplx> coefficients = {});

  std::size_t dimension() const noexcept { return d_; }
  cplx operator[](const MultiIndex& k) const;
  const std::map<MultiIndex, cplx>& coefficients() const noexcept { return coeffs_; }
  /// max |k_i| over the support, per axis.
  const std::vector<int>& band() const noexcept { return band_; }
  double l1_norm() const noexcept;

 private:
  std::size_t d_;
  std::map<MultiIndex, cplx> coeffs_;
  std::vector<int> band_;
};

/// Box 0 <= k_i <= N_i flattened in graded lexicographic order: by total
/// degree, ties broken lexicographically.
class BoxTruncation {
 public:
  explicit BoxTruncation(std::vector<std::size_t> degrees);

  std::size_t dimension() const noexcept { return degrees_.size(); }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::size_t size() const noexcept { return order_.size(); }

  bool contains(const MultiIndex& k) const;
  std::size_t flat(const MultiIndex& k) const;
  const MultiIndex& index(std::size_t flat) const;

  /// Flat indices of the sub-box k_i <= w_i, ascending.
  std::vector<std::size_t> sub_box(const std::vector<std::size_t>& w) const;

 private:
  std::vector<std::size_t> degrees_;
  std::vector<MultiIndex> order_;
  std::map<MultiIndex, std::size_t> position_;
};

/// Entry (flat(k), flat(l)) = phi_{k-l}; every entry is exact.
TruncatedOperator poly_toeplitz(const PolySymbol& phi, const BoxTruncation& box);

/// Flat matrix of M_{z_axis}.
ComplexMatrix poly_multiplication(const BoxTruncation& box, std::size_t axis);

/// e^{i(sum xi_j - sum k_j theta_j)} at flat(k), the diagonal of C_{theta,xi}.
Conjugation poly_conjugation(const std::vector<double>& theta, const std::vector<double>& xi,
                             const BoxTruncation& box);

/// max |e^{i k.theta} phi_k - phi_{-k}| over the support.
CriterionResult check_poly_criterion(const PolySymbol& phi, const std::vector<double>& theta,
                                     const Tolerance& tol = {});

struct PolyDefinitionResult {
  CriterionResult result;
  double tilde_residual = 0.0;  // max |phi_{k-l} - e^{i(l-k).theta} phi_{l-k}| on the window
};

/// ||C T^* C - T|| on the sub-box k_i <= w_i.
PolyDefinitionResult poly_check_definition(const PolySymbol& phi, const std::vector<double>& theta,
                                           const std::vector<double>& xi, const BoxTruncation& box,
                                           const std::vector<std::size_t>& w,
                                           const Tolerance& tol = {},
                                           double tail_budget = kDefaultTailBudget);

struct DoublyCommuting {
  double commute = 0.0;       // max ||S_i S_j - S_j S_i|| on the window
  double star_commute = 0.0;  // max_{i != j} ||S_i^* S_j - S_j S_i^*|| on the window
  std::size_t wandering_dimension = 0;
};

/// S_i = C M_{z_i} C for a diagonal conjugation; needs w_i <= N_i - 2.
DoublyCommuting doubly_commuting_residual(const Conjugation& c, const BoxTruncation& box,
                                          const std::vector<std::size_t>& w);

}  // namespace conjtoep
