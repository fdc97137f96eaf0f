#pragma once

// Weighted composition conjugation C = W J with W f = psi * (f o theta),
// psi = sqrt(1-|alpha|^2) / (1 - conj(alpha) z) and
// theta = (conj(alpha)/alpha) (alpha - z) / (1 - conj(alpha) z).

#include "conjtoep/core.hpp"

#include <vector>

namespace conjtoep {

struct CompositionParams {
  cplx alpha;

  explicit CompositionParams(cplx a);
};

/// Largest i + j accepted by u_entry.
inline constexpr int kMaxClosedFormIndex = 60;

/// <W z^i, z^j> from the closed-form alternating binomial sum.
cplx u_entry(const CompositionParams& p, int i, int j);

/// Smallest series length with |alpha|^terms < 1e-16.
int default_series_terms(const CompositionParams& p);

/// <W z^i, z^j> by expanding theta^i k_alpha as a Cauchy product of
/// sum beta_p z^p and sum gamma_q z^q.
cplx u_entry_oracle(const CompositionParams& p, int i, int j, int series_terms);

/// Rows i = 0..rows-1 of U, coefficients j = 0..length-1, computed by
/// repeated multiplication with theta (numerically stable for all indices).
std::vector<CVector> composition_rows(const CompositionParams& p, std::size_t rows,
                                      std::size_t length);

/// Upper bound for (sum_{j >= start} |u_{i,j}|^2)^{1/2} from the absolute
/// Cauchy-product majorant; infinity if the majorant does not converge yet.
double composition_remainder_bound(const CompositionParams& p, int i, std::size_t start);

struct CompositionMaterial {
  ComplexMatrix coeff;              // u_{i,j}, 0 <= i,j <= degree
  std::vector<double> row_tails;    // bound on ||u_{i, >degree}||
};

CompositionMaterial materialize_composition(const CompositionParams& p, std::size_t degree);

}  // namespace conjtoep
