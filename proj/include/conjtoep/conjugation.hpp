#pragma once

// A conjugation C on H^2 is stored through its coefficient matrix A in the
// monomial basis: A_{m,n} = <C z^n, z^m>, so C x = A conj(x). The same A is
// the unitary U of the factorization C = U J.

#include "conjtoep/composition.hpp"
#include "conjtoep/hardy.hpp"

#include <optional>
#include <string>
#include <variant>

namespace conjtoep {

/// Row tails above this size make a window untrusted.
inline constexpr double kDefaultTailBudget = 1e-4;

/// A_{m,n} = 0 whenever |m - n| > band (also beyond the stored degree).
struct Banded {
  std::size_t band = 0;
};
/// Dense with geometrically decaying rows; per-row tails are stored.
struct Geometric {
  double ratio = 0.0;
  double constant = 0.0;
};
/// Operator on C^{N+1}; there is nothing beyond the stored block.
struct ExactFinite {};

using Decay = std::variant<Banded, Geometric, ExactFinite>;

class Conjugation {
 public:
  /// Geometric decay needs one tail per row. Throws on a non-square or
  /// non-symmetric matrix, or on entries exceeding 1 in modulus.
  Conjugation(ComplexMatrix coeff, Decay decay, std::vector<double> row_tails = {},
              std::string note = {});

  const ComplexMatrix& coeff() const noexcept { return coeff_; }
  std::size_t degree() const noexcept { return coeff_.rows() - 1; }
  const Decay& decay() const noexcept { return decay_; }
  bool exact_finite() const noexcept { return std::holds_alternative<ExactFinite>(decay_); }
  /// Caveat attached by the constructing family (empty if none).
  const std::string& note() const noexcept { return note_; }

  /// Bound on ||A_{i, >N}||, equal to ||A_{>N, i}|| by symmetry; never above 1.
  double row_tail(std::size_t i) const;
  /// Largest w with row_tail(q) <= budget for all q <= w.
  std::optional<std::size_t> trusted_window(double budget = kDefaultTailBudget) const;

  /// C x = A conj(x) on the truncated space.
  CVector apply(std::span<const cplx> x) const;

 private:
  ComplexMatrix coeff_;
  Decay decay_;
  std::vector<double> row_tails_;
  std::string note_;
};

/// Columns f_n of an R x R unitary block, in the monomial basis. Beyond R
/// the basis continues as z^n.
struct BasisSpec {
  ComplexMatrix columns;
};

struct CanonicalJ {};
struct ThetaXi {
  double theta = 0.0;
  double xi = 0.0;
};
/// alpha_n for n < size() is given; later terms repeat the last `period` entries.
struct AlphaDiagonal {
  std::vector<cplx> alphas;
  std::size_t period = 1;

  cplx alpha(std::size_t n) const;
};

using FamilySpec = std::variant<CanonicalJ, ThetaXi, AlphaDiagonal, CompositionParams, BasisSpec>;

std::string family_name(const FamilySpec& spec);

/// e^{i(xi - n theta)}, the diagonal of C_{theta,xi}.
cplx theta_xi_phase(double theta, double xi, long n);

Conjugation materialize(const FamilySpec& spec, std::size_t degree);

/// A = F F^T on the block, identity beyond it.
Conjugation conjugation_from_fixed_basis(const BasisSpec& b, std::size_t degree,
                                         const Tolerance& tol = {});

struct ConjugationCheck {
  bool conjugation = false;
  double symmetry = 0.0;   // max |a - a^T| on the window
  double unitarity = 0.0;  // ||a a^H - I||_F on the window
};

ConjugationCheck is_conjugation(const ComplexMatrix& a, Window w, const Tolerance& tol,
                                double unitarity_slack = 0.0);

struct Factorization {
  ComplexMatrix u;
  Window window;
  double tail_bound = 0.0;  // slack allowed in the unitarity residual
  ConjugationCheck check;
};

/// U with C = U J. Throws "not a conjugation" if c fails is_conjugation on
/// its trusted window.
Factorization canonical_factorization(const Conjugation& c, const Tolerance& tol = {});

/// Truncation of S = C M_z C, built column by column. column_error[p] is
/// t_p + |A_{N,p}| plus a bound on the mass A moves past row N, the smaller
/// of sum_k |A_{k-1,p}| t_k and the norm deficit of the truncated product.
ShiftOperator shift_from_conjugation(const Conjugation& c);

/// S f_n = f_{n+1} for the basis padded with z^n; requires R <= degree + 1.
ShiftOperator shift_from_basis(const BasisSpec& b, std::size_t degree);

/// dim ker(S^H) restricted to span{f_0..f_w}, f_n = C z^n.
std::size_t shift_multiplicity(const Conjugation& c, std::size_t w);

struct IntertwineResult {
  Window window;
  double commutator_residual = 0.0;  // max |(C M_z - S C)_{q,p}|
  std::optional<cplx> lambda;
  double factor_residual = 0.0;      // max |A - lambda F| when lambda is present
};

IntertwineResult intertwine_detail(const Conjugation& c, const BasisSpec& b,
                                   const Tolerance& tol = {});

/// lambda with C = lambda U J when C M_z = S C, otherwise absent.
std::optional<cplx> intertwine_lambda(const Conjugation& c, const BasisSpec& b,
                                      const Tolerance& tol = {});

}  // namespace conjtoep
