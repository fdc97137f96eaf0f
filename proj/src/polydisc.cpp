#include "conjtoep/polydisc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conjtoep {

namespace {

MultiIndex negate(MultiIndex k) {
  for (int& x : k) x = -x;
  return k;
}

// k . theta, accumulated from the first axis.
double dot(const MultiIndex& k, const std::vector<double>& theta) {
  double s = static_cast<double>(k[0]) * theta[0];
  for (std::size_t j = 1; j < k.size(); ++j) s += static_cast<double>(k[j]) * theta[j];
  return s;
}

void require_dimension(std::size_t d, std::size_t got, const char* what) {
  if (got != d) throw Error(std::string("dimension mismatch in ") + what);
}

}  // namespace

PolySymbol::PolySymbol(std::size_t d, std::map<MultiIndex, cplx> coefficients)
    : d_(d), band_(d, 0) {
  if (d == 0) throw Error("dimension must be at least 1");
  for (const auto& [k, v] : coefficients) {
    require_dimension(d, k.size(), "symbol index");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("symbol coefficient is not finite");
    if (v == cplx{}) continue;
    coeffs_.emplace(k, v);
    for (std::size_t i = 0; i < d; ++i) band_[i] = std::max(band_[i], std::abs(k[i]));
  }
}

cplx PolySymbol::operator[](const MultiIndex& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx{} : it->second;
}

double PolySymbol::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [k, v] : coeffs_) s += std::abs(v);
  return s;
}

BoxTruncation::BoxTruncation(std::vector<std::size_t> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw Error("dimension must be at least 1");
  MultiIndex k(degrees_.size(), 0);
  for (;;) {
    order_.push_back(k);
    std::size_t i = 0;
    while (i < k.size() && static_cast<std::size_t>(k[i]) == degrees_[i]) k[i++] = 0;
    if (i == k.size()) break;
    ++k[i];
  }
  std::stable_sort(order_.begin(), order_.end(), [](const MultiIndex& a, const MultiIndex& b) {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    return da != db ? da < db : a < b;
  });
  for (std::size_t i = 0; i < order_.size(); ++i) position_.emplace(order_[i], i);
}

bool BoxTruncation::contains(const MultiIndex& k) const {
  if (k.size() != degrees_.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0 || static_cast<std::size_t>(k[i]) > degrees_[i]) return false;
  return true;
}

std::size_t BoxTruncation::flat(const MultiIndex& k) const {
  const auto it = position_.find(k);
  if (it == position_.end()) throw Error("multi-index outside box");
  return it->second;
}

const MultiIndex& BoxTruncation::index(std::size_t f) const {
  if (f >= order_.size()) throw Error("flat index outside box");
  return order_[f];
}

std::vector<std::size_t> BoxTruncation::sub_box(const std::vector<std::size_t>& w) const {
  require_dimension(dimension(), w.size(), "window");
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > degrees_[i]) throw Error("window exceeds box");
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < order_.size(); ++f) {
    bool inside = true;
    for (std::size_t i = 0; i < w.size(); ++i)
      inside = inside && static_cast<std::size_t>(order_[f][i]) <= w[i];
    if (inside) out.push_back(f);
  }
  return out;
}

TruncatedOperator poly_toeplitz(const PolySymbol& phi, const BoxTruncation& box) {
  require_dimension(box.dimension(), phi.dimension(), "poly_toeplitz");
  const std::size_t n = box.size();
  const std::size_t d = box.dimension();
  auto m = ComplexMatrix::generate(n, n, [&](std::size_t r, std::size_t c) {
    const MultiIndex& k = box.index(r);
    const MultiIndex& l = box.index(c);
    MultiIndex diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = k[i] - l[i];
    return phi[diff];
  });
  return {std::move(m), n - 1, Window::square(n - 1)};
}

ComplexMatrix poly_multiplication(const BoxTruncation& box, std::size_t axis) {
  if (axis >= box.dimension()) throw Error("axis out of range");
  const std::size_t n = box.size();
  std::vector<cplx> e(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    MultiIndex k = box.index(c);
    ++k[axis];
    if (box.contains(k)) e[box.flat(k) * n + c] = 1.0;
  }
  return ComplexMatrix(n, n, std::move(e));
}

Conjugation poly_conjugation(const std::vector<double>& theta, const std::vector<double>& xi,
                             const BoxTruncation& box) {
  require_dimension(box.dimension(), theta.size(), "theta");
  require_dimension(box.dimension(), xi.size(), "xi");
  double sum_xi = xi[0];
  for (std::size_t j = 1; j < xi.size(); ++j) sum_xi += xi[j];
  CVector diag(box.size());
  for (std::size_t f = 0; f < box.size(); ++f)
    diag[f] = std::polar(1.0, sum_xi - dot(box.index(f), theta));
  return Conjugation(ComplexMatrix::diagonal(diag), Banded{0});
}

CriterionResult check_poly_criterion(const PolySymbol& phi, const std::vector<double>& theta,
                                     const Tolerance& tol) {
  require_dimension(phi.dimension(), theta.size(), "theta");
  CriterionResult r;
  for (const auto& [k, v] : phi.coefficients()) {
    const MultiIndex mk = negate(k);
    // both k and -k visit every pair in either direction
    r.residual = std::max(r.residual, std::abs(std::polar(1.0, dot(k, theta)) * v - phi[mk]));
    r.residual = std::max(r.residual, std::abs(std::polar(1.0, dot(mk, theta)) * phi[mk] - v));
  }
  r.verdict = decide(r.residual, 0.0, phi.l1_norm(), tol, 0.0);
  return r;
}

PolyDefinitionResult poly_check_definition(const PolySymbol& phi, const std::vector<double>& theta,
                                           const std::vector<double>& xi, const BoxTruncation& box,
                                           const std::vector<std::size_t>& w,
                                           const Tolerance& tol, double tail_budget) {
  const Conjugation c = poly_conjugation(theta, xi, box);
  const TruncatedOperator t = poly_toeplitz(phi, box);
  const std::vector<std::size_t> idx = box.sub_box(w);

  PolyDefinitionResult out;
  CriterionResult& r = out.result;
  r.window = Window::square(idx.back());
  double tail = 0.0;
  for (std::size_t f : idx) tail = std::max(tail, c.row_tail(f));
  r.tail_bound = phi.l1_norm() == 0.0 ? 0.0 : 2.0 * phi.l1_norm() * tail;
  r.residual = definition_residual(c.coeff(), t.matrix, idx);
  r.verdict = decide(r.residual, r.tail_bound, phi.l1_norm(), tol, tail_budget);

  const std::size_t d = box.dimension();
  for (std::size_t a : idx)
    for (std::size_t b : idx) {
      MultiIndex kl(d);
      for (std::size_t i = 0; i < d; ++i) kl[i] = box.index(a)[i] - box.index(b)[i];
      const MultiIndex lk = negate(kl);
      const cplx tilde = std::polar(1.0, dot(lk, theta)) * phi[lk];
      out.tilde_residual = std::max(out.tilde_residual, std::abs(phi[kl] - tilde));
    }
  return out;
}

DoublyCommuting doubly_commuting_residual(const Conjugation& c, const BoxTruncation& box,
                                          const std::vector<std::size_t>& w) {
  const auto* banded = std::get_if<Banded>(&c.decay());
  if (!banded || banded->band != 0) throw Error("doubly commuting check needs a diagonal conjugation");
  if (c.coeff().rows() != box.size()) throw Error("conjugation does not match box");
  require_dimension(box.dimension(), w.size(), "window");
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] + 2 > box.degrees()[i]) throw Error("window needs w_i <= N_i - 2");

  const std::size_t d = box.dimension();
  const ComplexMatrix& a = c.coeff();
  std::vector<ComplexMatrix> s;
  for (std::size_t i = 0; i < d; ++i) s.push_back(a * poly_multiplication(box, i) * a.conjugate());

  const std::vector<std::size_t> idx = box.sub_box(w);
  auto window_max = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
    double m = 0.0;
    for (std::size_t r : idx)
      for (std::size_t col : idx) m = std::max(m, std::abs(x(r, col) - y(r, col)));
    return m;
  };

  DoublyCommuting out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      out.commute = std::max(out.commute, window_max(s[i] * s[j], s[j] * s[i]));
      const ComplexMatrix si_h = s[i].adjoint();
      out.star_commute = std::max(out.star_commute, window_max(si_h * s[j], s[j] * si_h));
    }

  std::vector<CVector> fcols;
  for (std::size_t f : idx) fcols.push_back(a.column(f));
  const ComplexMatrix fw = ComplexMatrix::from_columns(fcols);
  std::vector<cplx> stacked;
  const std::size_t n = box.size();
  for (std::size_t i = 0; i < d; ++i) {
    const ComplexMatrix img = s[i].adjoint() * fw;
    stacked.insert(stacked.end(), img.data().begin(), img.data().end());
  }
  const ComplexMatrix st(d * n, idx.size(), std::move(stacked));
  out.wandering_dimension = idx.size() - numerical_rank(st, 0.5);
  return out;
}

}  // namespace conjtoep
