#pragma once

// Five equivalent tests of C T_phi^* C = T_phi, the X(k)/Y(k) system, and
// the necessary S-Toeplitz condition S^* T S = T for S = C M_z C.

#include "conjtoep/conjugation.hpp"

#include <map>
#include <string>

namespace conjtoep {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

namespace criterion {
inline constexpr const char* definition = "definition";
inline constexpr const char* transpose_basis = "transpose_basis";
inline constexpr const char* conjugated_toeplitz = "conjugated_toeplitz";
inline constexpr const char* coefficient_equations = "coefficient_equations";
inline constexpr const char* xy_system = "xy_system";
inline constexpr const char* s_toeplitz = "s_toeplitz";
}  // namespace criterion

/// The five equivalent criteria, in report order.
inline constexpr const char* kEquivalentCriteria[] = {
    criterion::definition, criterion::transpose_basis, criterion::conjugated_toeplitz,
    criterion::coefficient_equations, criterion::xy_system};

struct CriterionResult {
  Verdict verdict = Verdict::inconclusive;
  double residual = 0.0;    // max-abs deviation over the checked entries
  double tail_bound = 0.0;  // truncation error allowance included in the decision
  Window window;            // square window or (j, k) range that was checked
};

/// inconclusive if tail_bound > budget; else pass iff
/// residual <= tol.bound(scale) + tail_bound.
Verdict decide(double residual, double tail_bound, double scale, const Tolerance& tol,
               double budget);

struct CheckConfig {
  Tolerance tol;
  double tail_budget = kDefaultTailBudget;
  std::size_t max_range = 8;
  std::size_t safety = 2;
  std::optional<std::size_t> range;  // overrides min(max_range, N - band - safety)
};

std::size_t default_check_range(const LaurentSymbol& phi, const Conjugation& c,
                                const CheckConfig& cfg);

/// Column n of the linear matrix of C T^* C, i.e. A conj(T^H A e_n).
CVector conjugated_adjoint_column(const ComplexMatrix& a, const ComplexMatrix& t_adjoint,
                                  std::size_t n);

/// max |(C T^* C)_{m,n} - T_{m,n}| over m, n in the index set.
double definition_residual(const ComplexMatrix& a, const ComplexMatrix& t,
                           std::span<const std::size_t> indices);

/// 2 ||phi||_1 max_{q <= w} t_q: bound on the truncation error of entries of
/// C T^* C and U^H T U on the square window w.
double sandwich_tail_bound(const LaurentSymbol& phi, const Conjugation& c, std::size_t w);

/// ||phi||_1 (2 sigma + sigma^2), sigma the largest column error of S on w.
double s_toeplitz_tail_bound(const LaurentSymbol& phi, const ShiftOperator& s, std::size_t w);

CriterionResult check_definition(const LaurentSymbol& phi, const Conjugation& c, std::size_t w,
                                 const Tolerance& tol, double tail_budget = kDefaultTailBudget);

/// <T f_p, f_q> against T_{p,q}, f_p the columns of U.
CriterionResult check_transpose_basis(const LaurentSymbol& phi, const Conjugation& c,
                                      std::size_t w, const Tolerance& tol,
                                      double tail_budget = kDefaultTailBudget);

struct ConjugatedToeplitzResult {
  CriterionResult result;  // residual is the larger of the two below
  bool toeplitz = false;
  double toeplitz_residual = 0.0;   // max |P_{i,j} - P_{i+1,j+1}|, P = U^H T U
  double transpose_residual = 0.0;  // max |P - T^T|
};

ConjugatedToeplitzResult check_conjugated_toeplitz(const LaurentSymbol& phi,
                                                   const Conjugation& c, std::size_t w,
                                                   const Tolerance& tol,
                                                   double tail_budget = kDefaultTailBudget);

/// For 0 <= j, k <= jk_max: sum_n conj(phi_{n-k}) c_{n,j} against
/// sum_{n>=1} conj(phi_n) c_{k,n+j} + sum_{l<=j} conj(phi_{-l}) c_{k,j-l}.
CriterionResult check_coefficient_equations(const LaurentSymbol& phi, const Conjugation& c,
                                            std::size_t jk_max, const Tolerance& tol);

struct XYSystem {
  std::size_t k = 0;
  ComplexMatrix x;  // rows j = 0..max_row, columns n = 1..trunc
  ComplexMatrix y;  // rows j = 0..max_row, columns l = 1..trunc
  CVector phi_plus;   // conj(phi_1), ..., conj(phi_trunc)
  CVector phi_minus;  // conj(phi_{-1}), ..., conj(phi_{-trunc})

  /// X phi_plus - Y phi_minus.
  CVector difference() const;
};

/// Needs k + trunc <= N and max_row + trunc <= N.
XYSystem build_xy(const Conjugation& c, const LaurentSymbol& phi, std::size_t k,
                  std::size_t trunc, std::size_t max_row);

/// X(k) phi_plus = Y(k) phi_minus for k = 0..k_max, rows j = 0..k_max.
CriterionResult check_xy(const LaurentSymbol& phi, const Conjugation& c, std::size_t k_max,
                         std::size_t trunc, const Tolerance& tol);

/// Necessary condition only: a pass proves nothing about symmetry.
CriterionResult check_s_toeplitz_necessary(const LaurentSymbol& phi, const Conjugation& c,
                                           std::size_t w, const Tolerance& tol,
                                           double tail_budget = kDefaultTailBudget);

struct SymmetryReport {
  std::map<std::string, Verdict> verdicts;
  std::map<std::string, double> residuals;
  std::map<std::string, double> tail_bounds;
  Window window;             // matrix criteria
  Window s_toeplitz_window;
  std::size_t check_range = 0;
  std::size_t degree = 0;
  Tolerance tolerance;
  double tail_budget = kDefaultTailBudget;
  double tail_bound = 0.0;   // largest per-criterion tail bound
  Verdict overall = Verdict::inconclusive;
  std::vector<std::string> notes;

  friend bool operator==(const SymmetryReport&, const SymmetryReport&) = default;
};

/// Two equivalent criteria decided differently, or the necessary
/// S-Toeplitz condition failed while the definition passed.
class CriterionDisagreement : public Error {
 public:
  CriterionDisagreement(const std::string& what, std::string dump, SymmetryReport report)
      : Error(what), dump_(std::move(dump)), report_(std::move(report)) {}
  const std::string& dump() const noexcept { return dump_; }
  const SymmetryReport& report() const noexcept { return report_; }

 private:
  std::string dump_;
  SymmetryReport report_;
};

/// pass iff all five pass; fail if every decided one fails; else inconclusive.
Verdict overall_verdict(const SymmetryReport& r);

SymmetryReport run_all(const LaurentSymbol& phi, const Conjugation& c, const CheckConfig& cfg = {});

}  // namespace conjtoep
