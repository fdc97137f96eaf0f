#include "conjtoep/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace conjtoep {

namespace {

void require_finite(std::span<const cplx> v) {
  for (const cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error("matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(std::string("dimension mismatch in ") + op);
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw Error("entries.length != rows * cols");
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, std::vector<cplx>(rows * cols));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<cplx> d(n * n);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  return ComplexMatrix(n, n, std::move(d));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  const std::size_t n = diag.size();
  std::vector<cplx> d(n * n);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = diag[i];
  return ComplexMatrix(n, n, std::move(d));
}

ComplexMatrix ComplexMatrix::generate(std::size_t rows, std::size_t cols,
                                      const std::function<cplx(std::size_t, std::size_t)>& f) {
  std::vector<cplx> d(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) d[i * cols + j] = f(i, j);
  return ComplexMatrix(rows, cols, std::move(d));
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<CVector>& columns) {
  const std::size_t cols = columns.size();
  const std::size_t rows = cols == 0 ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw Error("columns of unequal length");
  return generate(rows, cols, [&](std::size_t i, std::size_t j) { return columns[j][i]; });
}

cplx ComplexMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error("matrix index out of range");
  return (*this)(i, j);
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

CVector ComplexMatrix::row(std::size_t i) const {
  return CVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ComplexMatrix ComplexMatrix::transpose() const {
  return generate(cols_, rows_, [&](std::size_t i, std::size_t j) { return (*this)(j, i); });
}

ComplexMatrix ComplexMatrix::conjugate() const {
  std::vector<cplx> d(data_.size());
  std::transform(data_.begin(), data_.end(), d.begin(), [](cplx z) { return std::conj(z); });
  return ComplexMatrix(rows_, cols_, std::move(d));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  return generate(cols_, rows_,
                  [&](std::size_t i, std::size_t j) { return std::conj((*this)(j, i)); });
}

ComplexMatrix ComplexMatrix::leading(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw Error("leading block exceeds matrix");
  return generate(rows, cols, [&](std::size_t i, std::size_t j) { return (*this)(i, j); });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error("dimension mismatch in product");
  const std::size_t n = a.rows(), m = b.cols(), k = a.cols();
  std::vector<cplx> out(n * m);
  const auto ad = a.data();
  const auto bd = b.data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = ad[i * k + l];
      if (ail == cplx{}) continue;
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] += ail * bd[l * m + j];
    }
  }
  return ComplexMatrix(n, m, std::move(out));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "sum");
  std::vector<cplx> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.data()[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(out));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "difference");
  std::vector<cplx> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.data()[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(out));
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  std::vector<cplx> out(a.data().begin(), a.data().end());
  for (auto& z : out) z *= s;
  return ComplexMatrix(a.rows(), a.cols(), std::move(out));
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw Error("dimension mismatch in matrix-vector product");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CVector conj(std::span<const cplx> x) {
  CVector y(x.size());
  std::transform(x.begin(), x.end(), y.begin(), [](cplx z) { return std::conj(z); });
  return y;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw Error("dimension mismatch in inner product");
  cplx s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const cplx& z : x) s += std::norm(z);
  return std::sqrt(s);
}

Window Window::full(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error("empty matrix has no window");
  return {m.rows() - 1, m.cols() - 1};
}

bool Tolerance::close(cplx x, cplx y) const noexcept {
  return std::abs(x - y) <= absolute + relative * std::max(std::abs(x), std::abs(y));
}

void Tolerance::validate() const {
  if (!(absolute >= 0.0) || !(relative >= 0.0)) throw Error("tolerance must be nonnegative");
  if (absolute == 0.0 && relative == 0.0) throw Error("tolerance must not be identically zero");
}

namespace {

void require_window(const ComplexMatrix& a, const ComplexMatrix& b, Window w) {
  if (!w.fits(a) || !w.fits(b)) throw Error("window exceeds matrix");
}

}  // namespace

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b, Window w) {
  require_window(a, b, w);
  double s = 0.0;
  for (std::size_t i = 0; i <= w.max_row; ++i)
    for (std::size_t j = 0; j <= w.max_col; ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

double max_abs_distance(const ComplexMatrix& a, const ComplexMatrix& b, Window w) {
  require_window(a, b, w);
  double m = 0.0;
  for (std::size_t i = 0; i <= w.max_row; ++i)
    for (std::size_t j = 0; j <= w.max_col; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

UnitaryCheck is_unitary_on_window(const ComplexMatrix& a, Window w, const Tolerance& tol,
                                  double extra_slack) {
  if (!a.square()) throw Error("unitarity check needs a square matrix");
  if (!w.fits(a)) throw Error("window exceeds matrix");
  const std::size_t n = a.cols();
  double s = 0.0;
  for (std::size_t q = 0; q <= w.max_row; ++q) {
    for (std::size_t p = 0; p <= w.max_col; ++p) {
      cplx g{};
      for (std::size_t i = 0; i < n; ++i) g += a(q, i) * std::conj(a(p, i));
      if (q == p) g -= 1.0;
      s += std::norm(g);
    }
  }
  const double residual = std::sqrt(s);
  const double scale = std::sqrt(static_cast<double>(std::min(w.max_row, w.max_col) + 1));
  return {residual <= tol.bound(scale) + extra_slack, residual};
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::size_t numerical_rank(const ComplexMatrix& a, double threshold) {
  const auto sv = singular_values(a);
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > threshold; }));
}

}  // namespace conjtoep
