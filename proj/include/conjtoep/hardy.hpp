#pragma once

#include "conjtoep/core.hpp"

#include <map>
#include <string>

namespace conjtoep {

/// Trigonometric polynomial phi = sum_n phi_n z^n; zero coefficients are not stored.
class LaurentSymbol {
 public:
  LaurentSymbol() = default;
  explicit LaurentSymbol(std::map<int, cplx> coefficients);

  static LaurentSymbol constant(cplx c) { return LaurentSymbol({{0, c}}); }
  static LaurentSymbol monomial(int n, cplx c = 1.0) { return LaurentSymbol({{n, c}}); }

  cplx operator[](int n) const noexcept;
  const std::map<int, cplx>& coefficients() const noexcept { return coeffs_; }
  /// max |n| over the support (0 for the zero symbol).
  int band() const noexcept { return band_; }
  /// sum |phi_n|, an upper bound for ||T_phi||.
  double l1_norm() const noexcept;
  bool is_constant() const noexcept { return band_ == 0; }

  LaurentSymbol with(int n, cplx value) const;

  friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b);
  friend LaurentSymbol operator*(cplx s, const LaurentSymbol& a);
  friend bool operator==(const LaurentSymbol&, const LaurentSymbol&) = default;

 private:
  std::map<int, cplx> coeffs_;
  int band_ = 0;
};

/// (N+1)x(N+1) compression of an operator on H^2 with the block whose
/// entries coincide with the infinite matrix.
struct TruncatedOperator {
  ComplexMatrix matrix;
  std::size_t degree = 0;
  Window exact;
};

/// Truncation of a unilateral shift S f_n = f_{n+1}.
///
/// column_error[p] bounds ||S e_p - S_N e_p|| (infinite column versus the
/// stored truncated column, padded with zeros); 0 means the column is exact.
struct ShiftOperator {
  ComplexMatrix matrix;
  std::size_t degree = 0;
  std::string basis_label;
  std::vector<double> column_error;

  /// ||S^H S - I|| over columns [0, w]; each of them must have error at
  /// most max_column_error.
  double isometry_residual(std::size_t w, double max_column_error = 0.0) const;
};

/// matrix_{q,p} = phi_{q-p}; every entry is exact.
TruncatedOperator toeplitz_matrix(const LaurentSymbol& phi, std::size_t degree);

/// Truncated M_z: ones on the first subdiagonal; column N has error 1.
ShiftOperator multiplication_by_z(std::size_t degree);

/// T_phi x computed by convolution, rows 0..x.size()-1.
CVector apply_toeplitz(const LaurentSymbol& phi, std::span<const cplx> x);
/// T_phi^* x = T_{conj(phi)} x.
CVector apply_toeplitz_adjoint(const LaurentSymbol& phi, std::span<const cplx> x);

struct ToeplitzCheck {
  bool toeplitz = false;
  double residual = 0.0;  // max |t_{i,j} - t_{i+1,j+1}| over the window
};

ToeplitzCheck is_toeplitz(const ComplexMatrix& t, Window w, const Tolerance& tol);

/// max-abs ||S^H T S - T|| on the window. Throws "exactness window violated"
/// when a column of S inside the window has error above `max_column_error`,
/// or when the window exceeds the exact block of t.
double s_toeplitz_residual(const TruncatedOperator& t, const ShiftOperator& s, Window w,
                           double max_column_error = 0.0);

}  // namespace conjtoep
