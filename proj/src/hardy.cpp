#include "conjtoep/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace conjtoep {

LaurentSymbol::LaurentSymbol(std::map<int, cplx> coefficients) {
  for (const auto& [n, c] : coefficients) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error("symbol coefficient is not finite");
    if (c == cplx{}) continue;
    coeffs_.emplace(n, c);
    band_ = std::max(band_, std::abs(n));
  }
}

cplx LaurentSymbol::operator[](int n) const noexcept {
  const auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cplx{} : it->second;
}

double LaurentSymbol::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [n, c] : coeffs_) s += std::abs(c);
  return s;
}

LaurentSymbol LaurentSymbol::with(int n, cplx value) const {
  auto c = coeffs_;
  c[n] = value;
  return LaurentSymbol(std::move(c));
}

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
  auto c = a.coeffs_;
  for (const auto& [n, v] : b.coeffs_) c[n] += v;
  return LaurentSymbol(std::move(c));
}

LaurentSymbol operator*(cplx s, const LaurentSymbol& a) {
  auto c = a.coeffs_;
  for (auto& [n, v] : c) v *= s;
  return LaurentSymbol(std::move(c));
}

double ShiftOperator::isometry_residual(std::size_t w, double max_column_error) const {
  if (w >= matrix.cols()) throw Error("window exceeds matrix");
  for (std::size_t p = 0; p <= w; ++p)
    if (!(column_error[p] <= max_column_error)) throw Error("exactness window violated");
  const ComplexMatrix gram = matrix.adjoint() * matrix;
  return frobenius_distance(gram, ComplexMatrix::identity(matrix.cols()), Window::square(w));
}

TruncatedOperator toeplitz_matrix(const LaurentSymbol& phi, std::size_t degree) {
  const std::size_t n = degree + 1;
  auto m = ComplexMatrix::generate(n, n, [&](std::size_t q, std::size_t p) {
    return phi[static_cast<int>(q) - static_cast<int>(p)];
  });
  return {std::move(m), degree, Window::square(degree)};
}

ShiftOperator multiplication_by_z(std::size_t degree) {
  const std::size_t n = degree + 1;
  auto m = ComplexMatrix::generate(n, n, [](std::size_t i, std::size_t j) {
    return i == j + 1 ? cplx{1.0} : cplx{};
  });
  std::vector<double> err(n, 0.0);
  err[degree] = 1.0;
  return {std::move(m), degree, "canonical z^n", std::move(err)};
}

CVector apply_toeplitz(const LaurentSymbol& phi, std::span<const cplx> x) {
  const int n = static_cast<int>(x.size());
  CVector y(x.size());
  for (const auto& [k, c] : phi.coefficients()) {
    // y_{q} += phi_k x_{q-k}
    for (int q = std::max(0, k); q < std::min(n, n + k); ++q) y[q] += c * x[q - k];
  }
  return y;
}

CVector apply_toeplitz_adjoint(const LaurentSymbol& phi, std::span<const cplx> x) {
  const int n = static_cast<int>(x.size());
  CVector y(x.size());
  for (const auto& [k, c] : phi.coefficients()) {
    // (T^*)_{q,p} = conj(phi_{p-q}) : y_q += conj(phi_k) x_{q+k}
    for (int q = std::max(0, -k); q < std::min(n, n - k); ++q) y[q] += std::conj(c) * x[q + k];
  }
  return y;
}

ToeplitzCheck is_toeplitz(const ComplexMatrix& t, Window w, const Tolerance& tol) {
  if (!t.square()) throw Error("Toeplitz check needs a square matrix");
  if (!w.fits(t)) throw Error("window exceeds matrix");
  double residual = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i <= w.max_row; ++i)
    for (std::size_t j = 0; j <= w.max_col; ++j) {
      scale = std::max(scale, std::abs(t(i, j)));
      if (i + 1 <= w.max_row && j + 1 <= w.max_col)
        residual = std::max(residual, std::abs(t(i, j) - t(i + 1, j + 1)));
    }
  return {residual <= tol.bound(scale), residual};
}

double s_toeplitz_residual(const TruncatedOperator& t, const ShiftOperator& s, Window w,
                           double max_column_error) {
  if (t.degree != s.degree) throw Error("operator and shift have different degrees");
  if (!w.fits(t.matrix) || w.max_row > t.exact.max_row || w.max_col > t.exact.max_col)
    throw Error("exactness window violated");
  const std::size_t reach = std::max(w.max_row, w.max_col);
  for (std::size_t p = 0; p <= reach; ++p)
    if (!(s.column_error[p] <= max_column_error)) throw Error("exactness window violated");
  const ComplexMatrix sts = s.matrix.adjoint() * t.matrix * s.matrix;
  return max_abs_distance(sts, t.matrix, w);
}

}  // namespace conjtoep
