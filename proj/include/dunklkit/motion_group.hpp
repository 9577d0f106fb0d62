#pragma once

// The flat symmetric space of the motion group SO(N) ⋉ ℝ^N, where radial
// analysis reduces to the rank-one Dunkl theory at k = (N − 1)/2: spherical
// functions, the radial part of the Laplacian, the Abel transform, the
// factorization of the spherical transform and its inversion for odd N.

#include "dunkl_ops.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit {

/// ℝ^N = 𝔭 with 𝔞 = ℝe₁ and 𝔮 = e₁^⊥; radial functions restrict to even functions on 𝔞.
class FlatModel {
 public:
  explicit FlatModel(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("the flat model needs N ≥ 2, got " + std::to_string(n));
  }

  int dim() const { return n_; }
  int dim_q() const { return n_ - 1; }
  double k() const { return (n_ - 1) / 2.0; }
  Rational k_exact() const { return Rational(n_ - 1, 2); }
  bool integer_k() const { return n_ % 2 == 1; }

  /// |S^{m−1}| = 2π^{m/2}/Γ(m/2).
  static double sphere_area(int m) { return 2 * std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0); }

 private:
  int n_;
};

/// ψ_λ(x) = Γ(N/2)/(√π Γ((N−1)/2)) ∫_0^π e^{λx cos θ} sin^{N−2}θ dθ, the SO(N)-average of e^{λ x ω₁}.
inline QuadResult sphere_average(const FlatModel& m, Complex lambda, double x,
                                 const QuadratureSpec& spec = transform_quadrature()) {
  const int n = m.dim();
  const double norm = std::exp(std::lgamma(n / 2.0) - std::lgamma((n - 1) / 2.0)) / std::sqrt(std::numbers::pi);
  const Complex a = lambda * x;
  const double width = std::min(spec.max_panel_width, 8.0 / (1 + std::abs(a)));
  QuadResult r = integrate(
      [&](double t) { return std::exp(a * std::cos(t)) * std::pow(std::sin(t), n - 2); }, 0, std::numbers::pi, {},
      spec, width);
  r.value *= norm;
  r.error *= norm;
  return r;
}

// ---------------------------------------------------------------------------
// Radial part of the Laplacian.

namespace detail {

inline void require_even(const Poly<Rational>& p) {
  if (p.dim() != 1) throw DimensionMismatch("radial profiles are polynomials in one variable");
  for (const auto& [e, c] : p.terms())
    if (e[0] % 2) throw std::invalid_argument("radial profile " + to_text(p) + " is not even");
}

/// p(|y|) on ℝ^N for an even p.
inline Poly<Rational> radial_extension(const Poly<Rational>& p, std::size_t n) {
  const Poly<Rational> r2 = Poly<Rational>::norm_squared(n);
  Poly<Rational> out(n);
  for (const auto& [e, c] : p.terms()) out += r2.pow(e[0] / 2) * c;
  return out;
}

/// Δ(qψ) = (Δq − 2y·∇q + (|y|² − N)q)ψ with ψ = e^{−|y|²/2}.
inline Poly<Rational> euclidean_gauss_laplacian(const Poly<Rational>& q) {
  const std::size_t n = q.dim();
  Poly<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly<Rational> di = q.partial(i);
    out += di.partial(i) - Poly<Rational>::variable(n, i) * di * Rational(2);
  }
  out += (Poly<Rational>::norm_squared(n) - Poly<Rational>::constant(n, Rational(static_cast<long>(n)))) * q;
  return out;
}

inline Poly<Rational> restrict_to_axis(const Poly<Rational>& q) {
  Matrix<Rational> e1(q.dim(), 1);
  e1(0, 0) = Rational(1);
  return compose_linear(q, e1);
}

}  // namespace detail

struct RadialPartCheck {
  Poly<Rational> euclidean;  // polynomial factor of Rad Δ^m (pψ) on ℝ^N
  Poly<Rational> dunkl;      // polynomial factor of Δ_k^m (pψ) on ℝ, k = (N−1)/2
  bool holds() const { return euclidean == dunkl; }
};

/// Compares the radial restriction of Δ^m on ℝ^N with the rank-one k-Laplacian to the m-th power, exactly.
inline RadialPartCheck radial_part_check(const FlatModel& m, const Poly<Rational>& p, int power = 1) {
  detail::require_even(p);
  if (power < 0) throw std::invalid_argument("Laplacian power must be non-negative");
  Poly<Rational> q = detail::radial_extension(p, m.dim());
  for (int i = 0; i < power; ++i) q = detail::euclidean_gauss_laplacian(q);

  static const RootSystem<Rational> z2 = RootSystem<Rational>::build("z2");
  const DunklOperators<Rational> ops(z2, Multiplicity<Rational>{{m.k_exact()}});
  GaussPoly<Rational> f{p};
  const Vec<Rational> e{Rational(1)};
  for (int i = 0; i < power; ++i) f = ops.apply(e, ops.apply(e, f));
  return {detail::restrict_to_axis(q), f.poly};
}

/// max |Δ F(x d) − (f″ + 2k f′/x)(x)| over xs, F = f(|·|) on ℝ^N and d the unit diagonal.
/// Δ F uses an 8th-order Cartesian stencil; the rank-one side uses exact derivatives.
inline double radial_part_residual(const FlatModel& m, const SampledFunction& f, const std::vector<double>& xs,
                                   double h = 0.01) {
  if (f.parity != 1) throw std::invalid_argument(f.label + " is not a radial (even) profile");
  const SampledFunction f1 = derivative_of(f), f2 = derivative_of(f1);
  static constexpr double stencil[] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72};
  const int n = m.dim();
  const double step = 1 / std::sqrt(double(n));
  double worst = 0;
  for (double x : xs) {
    if (!(x > 0)) throw std::domain_error("radial part is compared at x > 0");
    const double dunkl = (f2(x) + 2 * m.k() * f1(x) / x).real();
    // Every coordinate direction sees the same profile by symmetry of the diagonal point.
    auto along = [&](double t) {
      const double r2 = (n - 1) * (x * step) * (x * step) + (x * step + t) * (x * step + t);
      return f(std::sqrt(r2)).real();
    };
    double second = stencil[4] * along(0);
    for (int j = 1; j <= 4; ++j) second += stencil[4 - j] * (along(j * h) + along(-j * h));
    worst = std::max(worst, std::abs(n * second / (h * h) - dunkl));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Abel transform.

namespace detail {

inline void require_radial(const SampledFunction& f) {
  if (f.parity != 1) throw std::invalid_argument(f.label + " is not a radial (even) profile");
  if (!std::isfinite(f.support)) throw std::invalid_argument(f.label + " needs a finite support radius");
}

}  // namespace detail

/// A f(x) = ∫_𝔮 f(x e₁ + q) dq = |S^{N−2}| ∫_0^∞ f(√(x² + s²)) s^{N−2} ds; zero for |x| ≥ support.
inline QuadResult abel_transform(const FlatModel& m, const SampledFunction& f, double x,
                                 const QuadratureSpec& spec = transform_quadrature()) {
  detail::require_radial(f);
  const double S = f.support;
  if (std::abs(x) >= S) return {};
  const double top = std::sqrt(S * S - x * x);
  const int d = m.dim_q();
  const std::vector<GradePoint> edge{{top, f.kind == FunctionClass::bump ? 8 : 0}};
  QuadResult r = integrate([&](double s) { return f(std::hypot(x, s)) * std::pow(s, d - 1); }, 0, top, edge, spec);
  const double w = FlatModel::sphere_area(d);
  r.value *= w;
  r.error *= w;
  return r;
}

/// A f as a sampled even function with the support of f.
inline SampledFunction abel_function(const FlatModel& m, const SampledFunction& f,
                                     const QuadratureSpec& spec = transform_quadrature()) {
  detail::require_radial(f);
  SampledFunction a = f;
  a.fn = [m, f, spec](double x) { return abel_transform(m, f, x, spec).value; };
  a.poly.reset();
  a.label = "abel " + f.label;
  return a;
}

// ---------------------------------------------------------------------------
// Factorization of the spherical transform.

/// |S^{N−1}| ∫_0^∞ f(r) r^{N−1} dr against (2π)^{N/2} c_k⁻¹ ∫_ℝ f(x)|x|^{2k} dx.
struct MeasureIdentity {
  double euclidean = 0, reduced = 0;
  double residual() const { return std::abs(euclidean - reduced) / std::max(1.0, std::abs(euclidean)); }
};

inline MeasureIdentity measure_identity(const FlatModel& m, const SampledFunction& f,
                                        const QuadratureSpec& spec = transform_quadrature()) {
  detail::require_radial(f);
  const int n = m.dim();
  const std::vector<GradePoint> edge{{f.support, f.kind == FunctionClass::bump ? 8 : 0}};
  MeasureIdentity out;
  out.euclidean = FlatModel::sphere_area(n) *
                  integrate([&](double r) { return f(r) * std::pow(r, n - 1); }, 0, f.support, edge, spec).value.real();
  const double k = m.k();
  const int lv = grading_levels_for(2 * k, spec.target_tol);
  std::vector<GradePoint> pts{{0, lv}, {-f.support, edge[0].levels}, {f.support, edge[0].levels}};
  const double line = integrate([&](double x) { return f(x) * std::pow(std::abs(x), 2 * k); }, -f.support, f.support,
                                pts, spec)
                          .value.real();
  out.reduced = std::pow(2 * std::numbers::pi, n / 2.0) / mehta_c_closed_form(k) * line;
  return out;
}

struct FactorizationReport {
  std::vector<double> lambdas;
  std::vector<Complex> direct, dunkl, abel;
  double worst = 0;
  std::optional<double> witness;  // λ with the largest pairwise discrepancy
  bool holds(double tol) const { return worst <= tol; }
};

/// ℱf(λ) three ways: (2π)^{−N/2}∫_{ℝ^N} f ψ_{−iλ} with ψ from the spherical average,
/// D_k(Res f)(λ), and (2π)^{−(N−1)/2} D_0(A f)(λ).
inline FactorizationReport factorization_check(const FlatModel& m, const SampledFunction& f,
                                               const std::vector<double>& lambdas,
                                               const QuadratureSpec& spec = transform_quadrature()) {
  detail::require_radial(f);
  const int n = m.dim();
  FactorizationReport rep;
  rep.lambdas = lambdas;
  const std::vector<Complex> lam(lambdas.begin(), lambdas.end());

  QuadratureSpec inner = spec;
  inner.two_grid = false;
  const std::vector<GradePoint> edge{{f.support, f.kind == FunctionClass::bump ? 8 : 0}};
  const double scale = FlatModel::sphere_area(n) / std::pow(2 * std::numbers::pi, n / 2.0);
  rep.direct.resize(lam.size());
  parallel_for(lam.size(), [&](std::size_t i) {
    const Complex mu = Complex(0, -1) * lam[i];
    const double width = std::min(spec.max_panel_width, 8.0 / (1 + std::abs(lambdas[i])));
    rep.direct[i] = scale * integrate(
                                [&](double r) {
                                  return f(r) * std::pow(r, n - 1) * sphere_average(m, mu, r, inner).value;
                                },
                                0, f.support, edge, inner, width)
                                .value;
  }, 1);

  for (const auto& q : RankOneTransform(m.k(), spec).forward(f, lam)) rep.dunkl.push_back(q.value);
  const SampledFunction af = abel_function(m, f, inner);
  const double abel_scale = std::pow(2 * std::numbers::pi, -(n - 1) / 2.0);
  for (const auto& q : RankOneTransform(0, spec).forward(af, lam)) rep.abel.push_back(abel_scale * q.value);

  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double d = std::max({std::abs(rep.direct[i] - rep.dunkl[i]), std::abs(rep.direct[i] - rep.abel[i]),
                               std::abs(rep.dunkl[i] - rep.abel[i])});
    if (!rep.witness || d > rep.worst) {
      rep.worst = d;
      rep.witness = lambdas[i];
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Inversion of the Abel transform for odd N.

/// c with E_k g = c·((1/x) d/dx)^k E_0 g on even g, for integer k, from the
/// rank-one pairings (x, x)_j = 1 + 2j that fix the shift constants.
inline double abel_inversion_constant(int k) {
  if (k < 0) throw std::invalid_argument("the inversion constant needs integer k ≥ 0");
  static const RootSystem<Rational> z2 = RootSystem<Rational>::build("z2");
  const Poly<Rational> x = Poly<Rational>::variable(1, 0);
  Rational pairing_product(1);
  for (int j = 0; j < k; ++j)
    pairing_product *= DunklOperators<Rational>(z2, Multiplicity<Rational>{{Rational(j)}}).pairing(x, x);
  const double sign = k % 2 ? -1 : 1;
  return sign * pairing_product.convert_to<double>() * mehta_c_closed_form(0) / mehta_c_closed_form(k);
}

namespace detail {

/// Weights w with Σ w_j f(t_j) ≈ f^{(order)}(t0) (Fornberg's recursion).
inline std::vector<double> fd_weights(const std::vector<double>& t, double t0, int order) {
  const std::size_t n = t.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0));
  double c1 = 1, c4 = t[0] - t0;
  c[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), order);
    double c2 = 1;
    const double c5 = c4;
    c4 = t[i] - t0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = t[i] - t[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m) c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int m = mn; m >= 1; --m) c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

}  // namespace detail

/// Sample points and weights with Σ w_j g(x_j) ≈ ((1/x) d/dx)^k g(x) for even g:
/// the k-th derivative of u ↦ g(√(2u)) at u = x²/2 on a 13-point stencil kept in u ≥ 0.
struct RadialStencil {
  std::vector<double> xs, weights;
  double apply(const std::function<double(double)>& g) const {
    double s = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) s += weights[j] * g(xs[j]);
    return s;
  }
};

inline RadialStencil radial_derivative_stencil(int k, double x, double h = 0.01) {
  constexpr int points = 13;
  const double u = x * x / 2;
  const double start = std::max(0.0, u - h * (points / 2));
  std::vector<double> us;
  for (int j = 0; j < points; ++j) us.push_back(start + j * h);
  RadialStencil st;
  st.weights = detail::fd_weights(us, u, k);
  for (double v : us) st.xs.push_back(std::sqrt(2 * v));
  return st;
}

/// Res A⁻¹ g(x) = (2π)^{−(N−1)/2} c ((1/x) d/dx)^k g(x), N = 2k + 1; |x| ≥ 1e−3.
inline double abel_inverse(const FlatModel& m, const std::function<double(double)>& g, double x) {
  if (!m.integer_k()) throw std::invalid_argument("Abel inversion is differential only for odd N, got N = " +
                                                  std::to_string(m.dim()));
  if (std::abs(x) < 1e-3) throw std::domain_error("Abel inversion is evaluated for |x| ≥ 1e-3");
  const int k = static_cast<int>(m.k());
  return std::pow(2 * std::numbers::pi, -m.dim_q() / 2.0) * abel_inversion_constant(k) *
         radial_derivative_stencil(k, x).apply(g);
}

/// max |A⁻¹(A f)(x) − f(x)| over xs.
inline double abel_round_trip(const FlatModel& m, const SampledFunction& f, const std::vector<double>& xs,
                              const QuadratureSpec& spec = transform_quadrature()) {
  QuadratureSpec inner = spec;
  inner.two_grid = false;
  auto g = [&](double x) { return abel_transform(m, f, x, inner).value.real(); };
  std::vector<double> err(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { err[i] = std::abs(abel_inverse(m, g, xs[i]) - f(xs[i]).real()); });
  double worst = 0;
  for (double e : err) worst = std::max(worst, e);
  return worst;
}

/// max |E_k g(x) − c((1/x) d/dx)^k E_0 g(x)| over xs for even g and integer k.
inline double inversion_operator_residual(int k, const SampledFunction& g, const std::vector<double>& xs,
                                          const QuadratureSpec& spec = transform_quadrature()) {
  if (g.parity != 1) throw std::invalid_argument("the inversion operator acts on even functions");
  const RankOneTransform tk(k, spec), t0(0, spec);
  const auto ek = tk.inverse(g, xs);
  const double c = abel_inversion_constant(k);
  std::vector<double> err(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i]) < 1e-3) throw std::domain_error("the inversion operator is evaluated for |x| ≥ 1e-3");
    const RadialStencil st = radial_derivative_stencil(k, xs[i]);
    const auto e0 = t0.inverse(g, st.xs);
    double d = 0;
    for (std::size_t j = 0; j < e0.size(); ++j) d += st.weights[j] * e0[j].value.real();
    err[i] = std::abs(ek[i].value.real() - c * d);
  }
  double worst = 0;
  for (double e : err) worst = std::max(worst, e);
  return worst;
}

}  // namespace dunklkit
