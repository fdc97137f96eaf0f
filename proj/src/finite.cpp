#include "conjtoep/finite.hpp"

#include <cmath>

namespace conjtoep {

cplx FiniteToeplitz::operator[](int k) const {
  const auto it = a.find(k);
  return it == a.end() ? cplx{} : it->second;
}

void FiniteToeplitz::validate() const {
  const int lim = static_cast<int>(n);
  for (const auto& [k, v] : a) {
    if (k < -lim || k > lim) throw Error("Toeplitz index outside [-N, N]");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("Toeplitz entry is not finite");
  }
}

ComplexMatrix FiniteToeplitz::matrix() const {
  validate();
  return ComplexMatrix::generate(n + 1, n + 1, [&](std::size_t i, std::size_t j) {
    return (*this)[static_cast<int>(i) - static_cast<int>(j)];
  });
}

Conjugation toeplitz_conjugation(std::size_t n) {
  auto m = ComplexMatrix::generate(n + 1, n + 1, [&](std::size_t i, std::size_t j) {
    return i + j == n ? cplx{1.0} : cplx{};
  });
  return Conjugation(std::move(m), ExactFinite{});
}

Conjugation finite_conjugation(ComplexMatrix a, const Tolerance& tol) {
  if (!a.square() || a.rows() == 0) throw Error("conjugation matrix must be square");
  const ConjugationCheck chk = is_conjugation(a, Window::full(a), tol);
  if (!chk.conjugation) throw Error("not a conjugation");
  return Conjugation(std::move(a), ExactFinite{});
}

CriterionResult finite_symmetry_criterion(const FiniteToeplitz& t, const Conjugation& c) {
  t.validate();
  if (c.degree() != t.n) throw Error("size mismatch between matrix and conjugation");
  const ComplexMatrix& a = c.coeff();
  // c_{m,p} = <C e_m, e_p> = A_{p,m}
  auto cc = [&](int m, int p) { return a(static_cast<std::size_t>(p), static_cast<std::size_t>(m)); };
  const int n = static_cast<int>(t.n);
  CriterionResult r;
  r.window = Window::square(t.n);
  double scale = 0.0;
  for (const auto& [k, v] : t.a) scale += std::abs(v);
  for (int k = 0; k <= n; ++k)
    for (int p = 0; p <= n; ++p) {
      cplx lhs{}, rhs{};
      for (int m = 0; m <= n; ++m) {
        lhs += cc(m, p) * std::conj(t[m - k]);
        rhs += cc(m, k) * std::conj(t[m - p]);
      }
      r.residual = std::max(r.residual, std::abs(lhs - rhs));
    }
  r.verdict = r.residual <= kFiniteRelTol * scale ? Verdict::pass : Verdict::fail;
  return r;
}

CriterionResult general_symmetry(const ComplexMatrix& t, const Conjugation& c) {
  if (!t.square() || t.rows() != c.coeff().rows())
    throw Error("size mismatch between matrix and conjugation");
  const Factorization f = canonical_factorization(c);
  const ComplexMatrix p = f.u.adjoint() * t * f.u;
  CriterionResult r;
  r.window = Window::full(t);
  r.residual = max_abs_distance(t.transpose(), p, r.window);
  double scale = 0.0;
  for (const cplx& z : t.data()) scale += std::norm(z);
  r.verdict = r.residual <= kFiniteRelTol * std::sqrt(scale) ? Verdict::pass : Verdict::fail;
  return r;
}

}  // namespace conjtoep
