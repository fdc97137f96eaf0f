#pragma once

// Conjugations and symmetry on C^{N+1}, where every sum is finite.

#include "conjtoep/symmetry.hpp"

#include <map>

namespace conjtoep {

/// Relative round-off allowance of the exact finite checks.
inline constexpr double kFiniteRelTol = 1e-13;

/// (N+1) x (N+1) Toeplitz matrix with entry (i, j) = a_{i-j}, |k| <= N.
struct FiniteToeplitz {
  std::size_t n = 0;
  std::map<int, cplx> a;

  cplx operator[](int k) const;
  ComplexMatrix matrix() const;
  void validate() const;
};

/// Ones where m + n = N: (z_0, ..., z_N) -> (conj z_N, ..., conj z_0).
Conjugation toeplitz_conjugation(std::size_t n);

/// Wraps a symmetric unitary matrix as an exact finite conjugation.
Conjugation finite_conjugation(ComplexMatrix a, const Tolerance& tol = {});

/// max over k, p of |sum_m c_{m,p} conj(a_{m-k}) - sum_m c_{m,k} conj(a_{m-p})|.
CriterionResult finite_symmetry_criterion(const FiniteToeplitz& t, const Conjugation& c);

/// max |T^T - U^H T U| with U from the canonical factorization of c.
CriterionResult general_symmetry(const ComplexMatrix& t, const Conjugation& c);

}  // namespace conjtoep
