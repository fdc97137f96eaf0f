#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conjtoep {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Raised for contract violations (bad dimensions, invalid parameters,
/// inputs that fail a required invariant).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major, immutable after construction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);
  static ComplexMatrix generate(std::size_t rows, std::size_t cols,
                                const std::function<cplx(std::size_t, std::size_t)>& f);
  /// Columns given as vectors of equal length.
  static ComplexMatrix from_columns(const std::vector<CVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  /// Bounds-checked element access.
  cplx at(std::size_t i, std::size_t j) const;

  std::span<const cplx> data() const noexcept { return data_; }
  CVector column(std::size_t j) const;
  CVector row(std::size_t i) const;

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;
  /// Leading rows x cols block.
  ComplexMatrix leading(std::size_t rows, std::size_t cols) const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
CVector operator*(const ComplexMatrix& a, std::span<const cplx> x);

CVector conj(std::span<const cplx> x);
cplx inner(std::span<const cplx> x, std::span<const cplx> y);  // <x, y> = sum x_i conj(y_i)
double norm2(std::span<const cplx> x);

/// Inclusive index bounds of the block of a matrix whose entries are trusted.
struct Window {
  std::size_t max_row = 0;
  std::size_t max_col = 0;

  static Window square(std::size_t w) { return {w, w}; }
  static Window full(const ComplexMatrix& m);
  bool fits(const ComplexMatrix& m) const noexcept {
    return max_row < m.rows() && max_col < m.cols();
  }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Mixed absolute/relative comparison: |x - y| <= absolute + relative * max(|x|, |y|).
struct Tolerance {
  double absolute = 1e-12;
  double relative = 1e-10;

  bool close(cplx x, cplx y) const noexcept;
  /// Acceptance bound for a residual measured against data of size `scale`.
  double bound(double scale) const noexcept { return absolute + relative * scale; }
  void validate() const;
  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

/// Frobenius norm of a - b restricted to the window.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b, Window w);
/// Largest |a_ij - b_ij| over the window.
double max_abs_distance(const ComplexMatrix& a, const ComplexMatrix& b, Window w);

struct UnitaryCheck {
  bool unitary = false;
  double residual = 0.0;
};

/// ||a a^H - I|| (Frobenius) on the window.
UnitaryCheck is_unitary_on_window(const ComplexMatrix& a, Window w, const Tolerance& tol,
                                  double extra_slack = 0.0);

/// Singular values in decreasing order.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Number of singular values above `threshold`.
std::size_t numerical_rank(const ComplexMatrix& a, double threshold);

}  // namespace conjtoep
