#include "conjtoep/conjugation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace conjtoep {

namespace {

constexpr double kSymmetrySlack = 1e-10;

// Largest |i - j| over structurally nonzero entries.
std::size_t structural_bandwidth(const ComplexMatrix& m) {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != cplx{}) bw = std::max(bw, i > j ? i - j : j - i);
  return bw;
}

// Basis block padded with the identity to (degree + 1) x (degree + 1).
ComplexMatrix padded_basis(const BasisSpec& b, std::size_t degree) {
  const std::size_t r = b.columns.rows();
  const std::size_t n = degree + 1;
  if (r > n) throw Error("basis block larger than truncation");
  return ComplexMatrix::generate(n, n, [&](std::size_t i, std::size_t j) {
    if (i < r && j < r) return b.columns(i, j);
    return i == j ? cplx{1.0} : cplx{};
  });
}

void require_orthonormal(const ComplexMatrix& f, const Tolerance& tol) {
  if (f.rows() == 0 || !f.square()) throw Error("basis block must be square and nonempty");
  const ComplexMatrix gram = f.adjoint() * f;
  const double dev = max_abs_distance(gram, ComplexMatrix::identity(f.cols()), Window::full(gram));
  if (dev > tol.bound(1.0)) throw Error("basis not orthonormal");
}

}  // namespace

Conjugation::Conjugation(ComplexMatrix coeff, Decay decay, std::vector<double> row_tails,
                         std::string note)
    : coeff_(std::move(coeff)), decay_(decay), row_tails_(std::move(row_tails)),
      note_(std::move(note)) {
  if (coeff_.rows() == 0 || !coeff_.square()) throw Error("coefficient matrix must be square");
  if (std::holds_alternative<Geometric>(decay_) && row_tails_.size() != coeff_.rows())
    throw Error("geometric decay needs one tail per row");
  for (std::size_t i = 0; i < coeff_.rows(); ++i)
    for (std::size_t j = 0; j < coeff_.cols(); ++j) {
      if (std::abs(coeff_(i, j)) > 1.0 + 1e-12) throw Error("not a conjugation: entry exceeds 1");
      if (j < i && std::abs(coeff_(i, j) - coeff_(j, i)) > kSymmetrySlack)
        throw Error("not a conjugation: coefficient matrix not symmetric");
    }
}

double Conjugation::row_tail(std::size_t i) const {
  if (i >= coeff_.rows()) throw Error("row outside truncation");
  if (const auto* b = std::get_if<Banded>(&decay_)) return i + b->band <= degree() ? 0.0 : 1.0;
  if (std::holds_alternative<Geometric>(decay_)) return std::min(1.0, row_tails_[i]);
  return 0.0;
}

std::optional<std::size_t> Conjugation::trusted_window(double budget) const {
  std::optional<std::size_t> w;
  for (std::size_t q = 0; q <= degree(); ++q) {
    if (!(row_tail(q) <= budget)) break;
    w = q;
  }
  return w;
}

CVector Conjugation::apply(std::span<const cplx> x) const {
  if (x.size() != coeff_.cols()) throw Error("vector length does not match degree");
  const CVector cx = conj(x);
  return coeff_ * std::span<const cplx>(cx);
}

cplx AlphaDiagonal::alpha(std::size_t n) const {
  const std::size_t len = alphas.size();
  if (n < len) return alphas[n];
  return alphas[len - period + (n - len) % period];
}

std::string family_name(const FamilySpec& spec) {
  static const char* names[] = {"canonical_j", "theta_xi", "alpha_diag", "composition", "basis"};
  return names[spec.index()];
}

cplx theta_xi_phase(double theta, double xi, long n) {
  return std::polar(1.0, xi - static_cast<double>(n) * theta);
}

Conjugation materialize(const FamilySpec& spec, std::size_t degree) {
  const std::size_t n = degree + 1;
  if (std::holds_alternative<CanonicalJ>(spec))
    return Conjugation(ComplexMatrix::identity(n), Banded{0});

  if (const auto* t = std::get_if<ThetaXi>(&spec)) {
    if (!std::isfinite(t->theta) || !std::isfinite(t->xi)) throw Error("theta and xi must be finite reals");
    CVector d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = theta_xi_phase(t->theta, t->xi, static_cast<long>(k));
    return Conjugation(ComplexMatrix::diagonal(d), Banded{0});
  }

  if (const auto* a = std::get_if<AlphaDiagonal>(&spec)) {
    if (a->alphas.empty()) throw Error("alpha sequence is empty");
    if (a->period == 0 || a->period > a->alphas.size()) throw Error("period must lie in [1, len]");
    for (const cplx& z : a->alphas)
      if (!(std::abs(std::abs(z) - 1.0) <= 1e-12)) throw Error("alpha_n must be unimodular");
    CVector d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = a->alpha(k) * a->alpha(k);
    return Conjugation(ComplexMatrix::diagonal(d), Banded{0});
  }

  if (const auto* p = std::get_if<CompositionParams>(&spec)) {
    const CompositionParams checked(p->alpha);
    auto mat = materialize_composition(checked, degree);
    const double r = std::abs(checked.alpha);
    return Conjugation(std::move(mat.coeff), Geometric{r, std::sqrt(1.0 - r * r)},
                       std::move(mat.row_tails));
  }

  return conjugation_from_fixed_basis(std::get<BasisSpec>(spec), degree);
}

Conjugation conjugation_from_fixed_basis(const BasisSpec& b, std::size_t degree,
                                         const Tolerance& tol) {
  const ComplexMatrix& f = b.columns;
  require_orthonormal(f, tol);
  const std::size_t r = f.rows();
  const std::size_t n = degree + 1;
  // c_{n,m} = sum_k <f_k, z^n><f_k, z^m> = (F F^T)_{n,m}
  const ComplexMatrix block = f * f.transpose();
  auto a = ComplexMatrix::generate(n, n, [&](std::size_t i, std::size_t j) {
    if (i < r && j < r) return block(i, j);
    return i == j ? cplx{1.0} : cplx{};
  });
  const std::size_t band = std::min(r - 1, 2 * structural_bandwidth(f));
  std::string note;
  if (r < n) note = "basis completed by z^n beyond row " + std::to_string(r);
  return Conjugation(std::move(a), Banded{band}, {}, std::move(note));
}

ConjugationCheck is_conjugation(const ComplexMatrix& a, Window w, const Tolerance& tol,
                                double unitarity_slack) {
  if (!a.square()) throw Error("conjugation check needs a square matrix");
  const double sym = max_abs_distance(a, a.transpose(), w);
  const UnitaryCheck u = is_unitary_on_window(a, w, tol, unitarity_slack);
  return {sym <= tol.bound(1.0) && u.unitary, sym, u.residual};
}

Factorization canonical_factorization(const Conjugation& c, const Tolerance& tol) {
  const auto tw = c.trusted_window();
  if (!tw) throw Error("not a conjugation: no trusted window");
  const Window w = Window::square(*tw);
  // |(A A^H - I)_{q,p}| picks up at most t_q t_p from the discarded columns.
  double slack = 0.0;
  for (std::size_t q = 0; q <= *tw; ++q) slack += c.row_tail(q) * c.row_tail(q);
  const ConjugationCheck check = is_conjugation(c.coeff(), w, tol, slack);
  if (!check.conjugation) throw Error("not a conjugation");

  const ComplexMatrix& u = c.coeff();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  for (int s = 0; s < 3; ++s) {
    CVector x(u.cols());
    for (auto& z : x) z = {g(rng), g(rng)};
    const CVector cx = conj(x);
    const CVector ux = u * std::span<const cplx>(cx);
    const CVector direct = c.apply(x);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!tol.close(ux[i], direct[i])) throw Error("factorization does not reproduce C");
  }
  return {u, w, slack, check};
}

ShiftOperator shift_from_conjugation(const Conjugation& c) {
  const ComplexMatrix& a = c.coeff();
  const std::size_t n = a.rows();
  const std::size_t last = n - 1;
  std::vector<CVector> cols;
  cols.reserve(n);
  std::vector<double> err(n);
  for (std::size_t p = 0; p < n; ++p) {
    CVector e(n);
    e[p] = 1.0;
    const CVector y = c.apply(e);
    CVector z(n);
    for (std::size_t k = 1; k < n; ++k) z[k] = y[k - 1];
    CVector col = c.apply(z);

    // ||Q A P z|| <= sum_k |z_k| t_k, and ||Q A P z||^2 = ||P z||^2 - ||P A P z||^2
    // because A is unitary; the second form carries a round-off allowance.
    double spill = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double t = c.row_tail(k);
      if (t != 0.0) spill += std::abs(a(k - 1, p)) * t;
    }
    if (spill != 0.0) {
      const double pz = norm2(z), pa = norm2(col);
      const double gap = std::max(0.0, (pz - pa) * (pz + pa));
      spill = std::min(spill, std::sqrt(gap + 1e-12 * pz * pz));
    }
    err[p] = c.row_tail(p) + std::abs(a(last, p)) + spill;
    cols.push_back(std::move(col));
  }
  return {ComplexMatrix::from_columns(cols), last, "C M_z C", std::move(err)};
}

ShiftOperator shift_from_basis(const BasisSpec& b, std::size_t degree) {
  require_orthonormal(b.columns, Tolerance{});
  const ComplexMatrix f = padded_basis(b, degree);
  const ShiftOperator mz = multiplication_by_z(degree);
  ComplexMatrix s = f * mz.matrix * f.adjoint();
  // Only the coefficient of f_N is pushed past the truncation.
  std::vector<double> err(degree + 1);
  for (std::size_t p = 0; p <= degree; ++p) err[p] = std::abs(f(p, degree));
  return {std::move(s), degree, "basis shift", std::move(err)};
}

std::size_t shift_multiplicity(const Conjugation& c, std::size_t w) {
  if (w > c.degree()) throw Error("window exceeds matrix");
  const ShiftOperator s = shift_from_conjugation(c);
  const ComplexMatrix fw = c.coeff().leading(c.coeff().rows(), w + 1);
  const ComplexMatrix img = s.matrix.adjoint() * fw;

  std::size_t rows = img.rows();
  if (const auto* b = std::get_if<Banded>(&c.decay())) {
    // rows of S^H j are exact only for exact columns of S
    rows = 0;
    while (rows < s.column_error.size() && s.column_error[rows] == 0.0) ++rows;
    if (w + b->band > rows) throw Error("exactness window violated");
  }
  const ComplexMatrix trusted = img.leading(rows, w + 1);
  return (w + 1) - numerical_rank(trusted, 0.5);
}

IntertwineResult intertwine_detail(const Conjugation& c, const BasisSpec& b,
                                   const Tolerance& tol) {
  require_orthonormal(b.columns, tol);
  const std::size_t degree = c.degree();
  const ComplexMatrix f = padded_basis(b, degree);
  const std::size_t reach = 2 * structural_bandwidth(f) + 2;
  if (degree < reach) throw Error("degree too small for basis");
  const Window w{degree - reach, degree - 1};

  const ComplexMatrix& a = c.coeff();
  const ComplexMatrix mz = multiplication_by_z(degree).matrix;
  const ComplexMatrix s = f * mz * f.adjoint();
  // C M_z x = A M_z conj(x) and S C x = S A conj(x)
  IntertwineResult out;
  out.window = w;
  out.commutator_residual = max_abs_distance(a * mz, s * a, w);
  if (out.commutator_residual > tol.bound(1.0)) return out;

  cplx lambda{};
  for (std::size_t i = 0; i <= degree; ++i) lambda += a(i, 0) * std::conj(f(i, 0));
  if (std::abs(std::abs(lambda) - 1.0) > tol.bound(1.0)) return out;
  out.factor_residual = max_abs_distance(a, lambda * f, Window::full(a));
  if (out.factor_residual <= tol.bound(1.0)) out.lambda = lambda;
  return out;
}

std::optional<cplx> intertwine_lambda(const Conjugation& c, const BasisSpec& b,
                                      const Tolerance& tol) {
  return intertwine_detail(c, b, tol).lambda;
}

}  // namespace conjtoep
