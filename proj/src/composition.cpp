#include "conjtoep/composition.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace conjtoep {

namespace {

using lcplx = std::complex<long double>;

std::optional<std::int64_t> binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (int t = 1; t <= k; ++t) {
    r = r * (n - k + t) / t;  // exact: r becomes C(n-k+t, t)
    if (r > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  }
  return static_cast<std::int64_t>(r);
}

long double binomial(int n, int k) {
  if (auto b = binomial_exact(n, k)) return static_cast<long double>(*b);
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace

CompositionParams::CompositionParams(cplx a) : alpha(a) {
  const double m = std::abs(a);
  if (!(m > 0.0) || !(m < 1.0)) throw Error("alpha outside punctured disc");
}

cplx u_entry(const CompositionParams& p, int i, int j) {
  if (i < 0 || j < 0) throw Error("negative index");
  if (i + j > kMaxClosedFormIndex) throw Error("index out of supported range");
  const lcplx alpha(p.alpha.real(), p.alpha.imag());
  const lcplx abar = std::conj(alpha);
  const long double beta = std::sqrt(1.0L - std::norm(alpha));

  std::vector<lcplx> abar_pow(static_cast<std::size_t>(i + j + 1));
  abar_pow[0] = 1.0L;
  for (std::size_t k = 1; k < abar_pow.size(); ++k) abar_pow[k] = abar_pow[k - 1] * abar;

  lcplx sum = 0.0L;
  lcplx inv_alpha_pow = 1.0L;  // (-1/alpha)^m
  for (int m = 0; m <= std::min(i, j); ++m) {
    sum += inv_alpha_pow * binomial(i, m) * abar_pow[static_cast<std::size_t>(i + j - m)] *
           binomial(i + j - m, i);
    inv_alpha_pow *= -1.0L / alpha;
  }
  sum *= beta;
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

int default_series_terms(const CompositionParams& p) {
  return static_cast<int>(std::ceil(std::log(1e-16) / std::log(std::abs(p.alpha)))) + 1;
}

cplx u_entry_oracle(const CompositionParams& p, int i, int j, int series_terms) {
  if (i < 0 || j < 0) throw Error("negative index");
  if (series_terms <= j) throw Error("series too short for requested coefficient");
  if (std::pow(std::abs(p.alpha), series_terms) >= 1e-16)
    throw Error("series too short for |alpha|^terms < 1e-16");
  const lcplx alpha(p.alpha.real(), p.alpha.imag());
  const lcplx abar = std::conj(alpha);

  // beta_m = (-1)^m alpha^{-m} C(i, m),  gamma_q = abar^q C(i + q, q)
  std::vector<lcplx> beta(static_cast<std::size_t>(i + 1));
  beta[0] = 1.0L;
  for (int m = 1; m <= i; ++m)
    beta[m] = beta[m - 1] * (-1.0L / alpha) * static_cast<long double>(i - m + 1) /
              static_cast<long double>(m);
  std::vector<lcplx> gamma(static_cast<std::size_t>(series_terms));
  gamma[0] = 1.0L;
  for (int q = 1; q < series_terms; ++q)
    gamma[q] = gamma[q - 1] * abar * static_cast<long double>(i + q) / static_cast<long double>(q);

  lcplx c = 0.0L;
  for (int m = 0; m <= std::min(i, j); ++m) c += beta[m] * gamma[j - m];
  const lcplx scale = std::sqrt(1.0L - std::norm(alpha)) * std::pow(abar, i);
  c *= scale;
  return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
}

std::vector<CVector> composition_rows(const CompositionParams& p, std::size_t rows,
                                      std::size_t length) {
  const lcplx alpha(p.alpha.real(), p.alpha.imag());
  const lcplx abar = std::conj(alpha);
  const lcplx rot = abar / alpha;

  std::vector<lcplx> cur(length);
  lcplx pw = std::sqrt(1.0L - std::norm(alpha));
  for (std::size_t j = 0; j < length; ++j) {
    cur[j] = pw;
    pw *= abar;
  }

  std::vector<CVector> out;
  out.reserve(rows);
  std::vector<lcplx> next(length);
  for (std::size_t i = 0; i < rows; ++i) {
    CVector r(length);
    for (std::size_t j = 0; j < length; ++j)
      r[j] = {static_cast<double>(cur[j].real()), static_cast<double>(cur[j].imag())};
    out.push_back(std::move(r));
    if (i + 1 == rows) break;
    // next = rot * (alpha - z) * cur / (1 - abar z), coefficientwise
    lcplx acc = 0.0L;
    for (std::size_t k = 0; k < length; ++k) {
      const lcplx v = alpha * cur[k] - (k > 0 ? cur[k - 1] : lcplx{});
      acc = v + abar * acc;
      next[k] = rot * acc;
    }
    cur.swap(next);
  }
  return out;
}

double composition_remainder_bound(const CompositionParams& p, int i, std::size_t start) {
  const double a = std::abs(p.alpha);
  const double s = static_cast<double>(start);
  if (s < i + 1) return std::numeric_limits<double>::infinity();
  const double rho = a * (1.0 + i / (s + 1.0 - i));
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  // sum_m C(i,m) C(i+start-m, i) a^{i+start-2m}, in log space
  double total = 0.0;
  const double la = std::log(a);
  for (int m = 0; m <= i; ++m) {
    const double lt = std::lgamma(i + 1.0) - std::lgamma(m + 1.0) - std::lgamma(i - m + 1.0) +
                      std::lgamma(i + s - m + 1.0) - std::lgamma(i + 1.0) -
                      std::lgamma(s - m + 1.0) + (i + s - 2.0 * m) * la;
    total += std::exp(lt);
  }
  return std::sqrt(1.0 - a * a) * total / (1.0 - rho);
}

CompositionMaterial materialize_composition(const CompositionParams& p, std::size_t degree) {
  const std::size_t n = degree + 1;
  const int last = static_cast<int>(degree);
  std::size_t length = 2 * n + 16;
  constexpr std::size_t kMaxLength = std::size_t{1} << 17;
  while (length < kMaxLength && !(composition_remainder_bound(p, last, length) < 1e-25))
    length *= 2;

  const auto rows = composition_rows(p, n, length);
  std::vector<cplx> entries(n * n);
  std::vector<double> tails(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = rows[i][j];
    double s = 0.0;
    for (std::size_t j = n; j < length; ++j) s += std::norm(rows[i][j]);
    tails[i] = std::sqrt(s) + composition_remainder_bound(p, static_cast<int>(i), length);
  }
  return {ComplexMatrix(n, n, std::move(entries)), std::move(tails)};
}

}  // namespace conjtoep
