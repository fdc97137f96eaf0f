#pragma once

// Independent oracles and random generators shared by the test binaries.
// Nothing here calls the matrix formulas under test; operators are applied
// through their definitions.

#include "conjtoep/json_io.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

using conjtoep::ComplexMatrix;
using conjtoep::cplx;
using conjtoep::CVector;

inline constexpr double kPi = std::numbers::pi;

using EMatrix = Eigen::MatrixXcd;

inline EMatrix to_eigen(const ComplexMatrix& m) {
  EMatrix e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline ComplexMatrix from_eigen(const EMatrix& e) {
  return ComplexMatrix::generate(e.rows(), e.cols(), [&](std::size_t i, std::size_t j) {
    return e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  cplx gaussian() {
    std::normal_distribution<double> g;
    return {g(gen_), g(gen_)};
  }
  cplx unimodular() { return std::polar(1.0, uniform(-kPi, kPi)); }
  /// Uniform in the punctured disc of the given radius.
  cplx in_disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.01, 1.0));
    return std::polar(r, uniform(-kPi, kPi));
  }
  CVector vector(std::size_t n) {
    CVector v(n);
    for (auto& z : v) z = gaussian();
    return v;
  }
  /// Haar-like unitary from the QR factorization of a Gaussian matrix.
  ComplexMatrix unitary(std::size_t n) {
    EMatrix g(n, n);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<EMatrix> qr(g);
    EMatrix q = qr.householderQ();
    const EMatrix r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return from_eigen(q);
  }
  conjtoep::LaurentSymbol symbol(int band) {
    std::map<int, cplx> c;
    for (int n = -band; n <= band; ++n) c[n] = gaussian();
    return conjtoep::LaurentSymbol(c);
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// (T_phi x)_m = sum_n phi_{m-n} x_n for m = 0..rows-1, straight from the definition.
inline CVector toeplitz_apply(const conjtoep::LaurentSymbol& phi, const CVector& x, std::size_t rows) {
  CVector y(rows);
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < x.size(); ++n)
      y[m] += phi[static_cast<int>(m) - static_cast<int>(n)] * x[n];
  return y;
}

/// T_phi^* x = T_{conj(phi)} x with conj(phi)_n = conj(phi_{-n}).
inline CVector toeplitz_adjoint_apply(const conjtoep::LaurentSymbol& phi, const CVector& x,
                                      std::size_t rows) {
  CVector y(rows);
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < x.size(); ++n)
      y[m] += std::conj(phi[static_cast<int>(n) - static_cast<int>(m)]) * x[n];
  return y;
}

/// C x for a diagonal conjugation: x_n -> d_n conj(x_n).
inline CVector diagonal_apply(const CVector& d, const CVector& x) {
  CVector y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) y[n] = d[n] * std::conj(x[n]);
  return y;
}

/// C x = sum_n conj(<x, f_n>) f_n for the orthonormal basis given by columns
/// of f (padded with z^n beyond its size).
inline CVector basis_apply(const ComplexMatrix& f, const CVector& x) {
  const std::size_t r = f.rows();
  CVector y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (n >= r) {
      y[n] += std::conj(x[n]);
      continue;
    }
    cplx ip{};
    for (std::size_t i = 0; i < r && i < x.size(); ++i) ip += x[i] * std::conj(f(i, n));
    for (std::size_t i = 0; i < r && i < x.size(); ++i) y[i] += std::conj(ip) * f(i, n);
  }
  return y;
}

/// Taylor coefficients 0..rows-1 of W J x, (W g)(z) = psi(z) g(theta(z)),
/// (J x)(z) = sum conj(x_n) z^n, from samples on the unit circle.
inline CVector composition_apply(cplx alpha, const CVector& x, std::size_t rows,
                                 std::size_t samples = 4096) {
  const double r = std::abs(alpha);
  const cplx ab = std::conj(alpha);
  CVector vals(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const cplx z = std::polar(1.0, 2.0 * kPi * static_cast<double>(s) / static_cast<double>(samples));
    const cplx psi = std::sqrt(1.0 - r * r) / (1.0 - ab * z);
    const cplx th = (ab / alpha) * (alpha - z) / (1.0 - ab * z);
    cplx g{}, p{1.0};
    for (const cplx& xn : x) {
      g += std::conj(xn) * p;
      p *= th;
    }
    vals[s] = psi * g;
  }
  CVector y(rows);
  for (std::size_t m = 0; m < rows; ++m) {
    cplx acc{};
    for (std::size_t s = 0; s < samples; ++s)
      acc += vals[s] * std::polar(1.0, -2.0 * kPi * static_cast<double>(m * s % samples) /
                                           static_cast<double>(samples));
    y[m] = acc / static_cast<double>(samples);
  }
  return y;
}

/// max |(C T^* C - T)_{m,n}| for m, n <= w, with C given as an action.
template <class Apply>
double definition_residual(const conjtoep::LaurentSymbol& phi, Apply c, std::size_t size,
                           std::size_t w) {
  double worst = 0.0;
  for (std::size_t n = 0; n <= w; ++n) {
    CVector e(size);
    e[n] = 1.0;
    const CVector col = c(toeplitz_adjoint_apply(phi, c(e), size));
    for (std::size_t m = 0; m <= w; ++m)
      worst = std::max(worst, std::abs(col[m] - phi[static_cast<int>(m) - static_cast<int>(n)]));
  }
  return worst;
}

/// Real basis of {phi : C T_phi^* C = T_phi on the w-window} among symbols
/// of the given band, from the SVD null space of the real-linear map.
template <class Apply>
std::vector<conjtoep::LaurentSymbol> symmetric_symbols(Apply c, std::size_t size, std::size_t w,
                                                       int band) {
  const int dim = 2 * band + 1;
  std::vector<Eigen::VectorXd> cols;
  auto image = [&](const conjtoep::LaurentSymbol& phi) {
    Eigen::VectorXd v(2 * (w + 1) * (w + 1));
    Eigen::Index idx = 0;
    for (std::size_t n = 0; n <= w; ++n) {
      CVector e(size);
      e[n] = 1.0;
      const CVector col = c(toeplitz_adjoint_apply(phi, c(e), size));
      for (std::size_t m = 0; m <= w; ++m) {
        const cplx d = col[m] - phi[static_cast<int>(m) - static_cast<int>(n)];
        v(idx++) = d.real();
        v(idx++) = d.imag();
      }
    }
    return v;
  };
  Eigen::MatrixXd map(2 * (w + 1) * (w + 1), 2 * dim);
  for (int k = -band; k <= band; ++k)
    for (int part = 0; part < 2; ++part) {
      const cplx unit = part == 0 ? cplx{1.0} : cplx{0.0, 1.0};
      map.col(2 * (k + band) + part) = image(conjtoep::LaurentSymbol::monomial(k, unit));
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(map, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<conjtoep::LaurentSymbol> out;
  for (Eigen::Index j = 0; j < 2 * dim; ++j) {
    const double sv = j < s.size() ? s(j) : 0.0;
    if (sv > 1e-9) continue;
    std::map<int, cplx> c;
    for (int k = -band; k <= band; ++k) {
      const cplx v{svd.matrixV()(2 * (k + band), j), svd.matrixV()(2 * (k + band) + 1, j)};
      if (std::abs(v) > 1e-14) c[k] = v;
    }
    out.emplace_back(c);
  }
  return out;
}

}  // namespace oracle
