#pragma once

// Dunkl kernels and generalized Bessel functions: the rank-one closed form,
// group averages, the Hankel-type pieces φ^{(1,2)}, exact exponential
// polynomials for integer multiplicity, the rank-one Cherednik eigenfunction
// and its rational limit, and Gamma-ratio asymptotics.

#include "dunkl_ops.hpp"
#include "intertwiner.hpp"
#include "special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>
#include <vector>

namespace dunklkit {

class SeriesDivergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exp_{Z2}(iλ, k, z) = j_{k−1/2}(λz) + i λz/(2k+1) j_{k+1/2}(λz), j_ν = ₀F₁(; ν+1; −·²/4).
inline KernelValue exp_z2(Complex lambda, double k, Complex x) {
  if (!(k >= 0)) throw std::invalid_argument("exp_z2 needs real k ≥ 0");
  const Complex z = lambda * x;
  KernelValue even = normalized_bessel(k - 0.5, z);
  KernelValue odd = normalized_bessel(k + 0.5, z);
  KernelValue kv;
  const Complex c = Complex(0, 1) * z / (2 * k + 1);
  kv.value = even.value + c * odd.value;
  kv.abs_error_estimate = even.abs_error_estimate + std::abs(c) * odd.abs_error_estimate;
  kv.method = even.method;
  kv.terms = std::max(even.terms, odd.terms);
  return kv;
}

/// Exp_{Z2}(λ, k, x) in the eigenvalue convention T Exp = λ Exp.
inline KernelValue dunkl_kernel_z2(Complex lambda, double k, Complex x) {
  return exp_z2(Complex(0, -1) * lambda, k, x);
}

/// J_{Z2}(λ, k, x) = j_{k−1/2}(iλx).
inline KernelValue jg_z2(Complex lambda, double k, Complex x) {
  if (!(k >= 0)) throw std::invalid_argument("jg_z2 needs real k ≥ 0");
  return normalized_bessel(k - 0.5, Complex(0, -1) * lambda * x);
}

/// Dunkl kernel and generalized Bessel function for a root system: closed form
/// when the group is Z2, truncated series otherwise.
template <class F>
class KernelEvaluator {
 public:
  KernelEvaluator(const RootSystem<F>& rs, const Multiplicity<F>& k) : rs_(&rs), k_(k) {
    if (rs.tag() == "z2") {
      z2_k_ = FieldTraits<F>::to_double(k.per_orbit.at(0));
    } else {
      series_ = std::make_unique<KernelSeries<F>>(rs, k);
    }
  }

  const RootSystem<F>& root_system() const { return *rs_; }
  bool closed_form() const { return !series_; }

  /// Exp_G(λ, k, x); n_max applies to the series path.
  KernelValue exp(const std::vector<Complex>& lambda, const std::vector<double>& x, int n_max = -1) const {
    if (series_) return series_->exp(lambda, x, n_max);
    if (lambda.size() != 1 || x.size() != 1) throw DimensionMismatch("kernel argument dimension");
    return dunkl_kernel_z2(lambda[0], z2_k_, x[0]);
  }

  /// J_G(λ, k, x) = (1/|G|) Σ_g Exp_G(λ, k, gx).
  KernelValue jg(const std::vector<Complex>& lambda, const std::vector<double>& x, int n_max = -1) const {
    if (!series_) {
      if (lambda.size() != 1 || x.size() != 1) throw DimensionMismatch("kernel argument dimension");
      return jg_z2(lambda[0], z2_k_, x[0]);
    }
    KernelValue out;
    out.method = "series-average";
    const auto& group = rs_->group();
    for (const auto& g : group) {
      std::vector<double> gx(x.size(), 0.0);
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) gx[i] += FieldTraits<F>::to_double(g.matrix(i, j)) * x[j];
      KernelValue kv = series_->exp(lambda, gx, n_max);
      out.value += kv.value;
      out.abs_error_estimate += kv.abs_error_estimate;
      out.terms = kv.terms;
    }
    out.value /= static_cast<double>(group.size());
    out.abs_error_estimate /= static_cast<double>(group.size());
    return out;
  }

  /// max_g Re(gλ, z), the exponent in the growth bound |Exp(λ,k,z)| ≤ √|G| e^{max_g Re(gλ,z)}.
  double growth_exponent(const std::vector<Complex>& lambda, const std::vector<Complex>& z) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : rs_->group()) {
      Complex s(0);
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        Complex gl(0);
        for (std::size_t j = 0; j < lambda.size(); ++j) gl += FieldTraits<F>::to_double(g.matrix(i, j)) * lambda[j];
        s += gl * z[i];
      }
      best = std::max(best, s.real());
    }
    return best;
  }

 private:
  const RootSystem<F>* rs_;
  Multiplicity<F> k_;
  double z2_k_ = 0;
  std::unique_ptr<KernelSeries<F>> series_;
};

/// φ^{(1)}(λ) = (λx)^{1/2−k} H^{(1)}_{k−1/2}(λx) λ^{2k} and φ^{(2)} with H^{(2)}, for x > 0.
struct PhiPair {
  Complex phi1;
  Complex phi2;
};

namespace detail {

// z^p with arg z taken in (−π/2, 3π/2].
inline Complex pow_upper_cut(Complex z, double p) {
  double arg = std::arg(z);
  if (arg <= -kPi / 2) arg += 2 * kPi;
  return std::pow(std::abs(z), p) * std::exp(Complex(0, p * arg));
}

}  // namespace detail

inline PhiPair phi_functions(double k, double x, double lambda) {
  if (!(lambda > 0) || !(x > 0)) throw std::invalid_argument("phi_functions evaluates at λ > 0, x > 0");
  const double nu = k - 0.5;
  const double z = lambda * x;
  const double pre = std::pow(z, 0.5 - k) * std::pow(lambda, 2 * k);
  return {pre * hankel(1, nu, z).value, pre * hankel(2, nu, z).value};
}

/// Analytic continuation of φ^{(1)} to ℂ minus the closed negative imaginary axis.
inline Complex phi1_continued(double k, double x, Complex lambda) {
  if (!(x > 0)) throw std::invalid_argument("phi1_continued needs x > 0");
  double arg = std::arg(lambda);
  if (arg <= -kPi / 2) arg += 2 * kPi;
  if (arg > kPi) throw std::domain_error("phi1_continued is evaluated for arg λ ∈ (−π/2, π]");
  const Complex z = lambda * x;
  return detail::pow_upper_cut(z, 0.5 - k) * hankel(1, k - 0.5, z).value * detail::pow_upper_cut(lambda, 2 * k);
}

/// Σ c · x^p λ^q e^{sλx} with s = ±1, p ∈ ℤ, q ≥ 0 and exact rational c.
class ExpPoly1D {
 public:
  using Key = std::tuple<int, int, int>;  // (sign, x power, λ power)

  ExpPoly1D() = default;

  static ExpPoly1D term(const Rational& c, int sign, int x_pow, int lam_pow) {
    ExpPoly1D e;
    e.add(c, sign, x_pow, lam_pow);
    return e;
  }

  /// (1/|G|) Σ_g e^{(gλ,x)} = (e^{λx} + e^{−λx})/2.
  static ExpPoly1D cosh_kernel() { return term(Rational(1, 2), 1, 0, 0) + term(Rational(1, 2), -1, 0, 0); }

  /// e^{λx}, the k = 0 Dunkl kernel.
  static ExpPoly1D exp_kernel() { return term(Rational(1), 1, 0, 0); }

  void add(const Rational& c, int sign, int x_pow, int lam_pow) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("exponential sign must be ±1");
    if (lam_pow < 0) throw std::invalid_argument("negative λ power");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(Key{sign, x_pow, lam_pow}, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExpPoly1D& operator+=(const ExpPoly1D& o) {
    for (const auto& [key, c] : o.terms_) add(c, std::get<0>(key), std::get<1>(key), std::get<2>(key));
    return *this;
  }
  friend ExpPoly1D operator+(ExpPoly1D a, const ExpPoly1D& b) { return a += b; }
  friend ExpPoly1D operator-(ExpPoly1D a, const ExpPoly1D& b) { return a += b * Rational(-1); }
  friend ExpPoly1D operator*(const ExpPoly1D& a, const Rational& c) {
    ExpPoly1D out;
    for (const auto& [key, v] : a.terms_) out.add(v * c, std::get<0>(key), std::get<1>(key), std::get<2>(key));
    return out;
  }
  friend bool operator==(const ExpPoly1D& a, const ExpPoly1D& b) { return a.terms_ == b.terms_; }

  /// Multiplies by x^p λ^q.
  ExpPoly1D shifted(int x_pow, int lam_pow) const {
    ExpPoly1D out;
    for (const auto& [key, c] : terms_)
      out.add(c, std::get<0>(key), std::get<1>(key) + x_pow, std::get<2>(key) + lam_pow);
    return out;
  }

  /// d/dx (c x^p λ^q e^{sλx}) = c p x^{p−1} λ^q e^{sλx} + c s x^p λ^{q+1} e^{sλx}.
  ExpPoly1D derivative() const {
    ExpPoly1D out;
    for (const auto& [key, c] : terms_) {
      const auto [s, p, q] = key;
      if (p != 0) out.add(c * p, s, p - 1, q);
      out.add(c * s, s, p, q + 1);
    }
    return out;
  }

  /// f(−x).
  ExpPoly1D reflected() const {
    ExpPoly1D out;
    for (const auto& [key, c] : terms_) {
      const auto [s, p, q] = key;
      out.add((p % 2) ? Rational(-c) : c, -s, p, q);
    }
    return out;
  }

  /// Rank-one Dunkl operator f′ + k(f(x) − f(−x))/x.
  ExpPoly1D dunkl(const Rational& k) const {
    return derivative() + (*this - reflected()).shifted(-1, 0) * k;
  }

  bool is_even() const { return reflected() == *this; }

  /// Distinct exponentials e^{sλx} present.
  std::size_t num_exponentials() const {
    bool plus = false, minus = false;
    for (const auto& [key, c] : terms_) (std::get<0>(key) > 0 ? plus : minus) = true;
    return static_cast<std::size_t>(plus) + static_cast<std::size_t>(minus);
  }

  int min_x_power() const {
    int m = std::numeric_limits<int>::max();
    for (const auto& [key, c] : terms_) m = std::min(m, std::get<1>(key));
    return m;
  }

  int min_lambda_power() const {
    int m = std::numeric_limits<int>::max();
    for (const auto& [key, c] : terms_) m = std::min(m, std::get<2>(key));
    return m;
  }

  /// Divides by λ^q; throws NonDivisible if some term has a smaller λ power.
  ExpPoly1D divide_lambda(int q) const {
    if (!is_zero() && min_lambda_power() < q) throw NonDivisible("exponential polynomial is not divisible by λ^q");
    return shifted(0, -q);
  }

  /// Evaluated in binary128: the Laurent terms cancel strongly for small x.
  Complex evaluate(Complex lambda, Complex x) const {
    using detail::QComplex;
    using detail::Quad;
    const QComplex lq = detail::qcomplex(lambda), xq = detail::qcomplex(x);
    const QComplex ex = cexpq(lq * xq), ex_inv = cexpq(-lq * xq);
    QComplex sum = 0;
    for (const auto& [key, c] : terms_) {
      const auto [s, p, q] = key;
      QComplex t = static_cast<Quad>(numerator(c).convert_to<double>()) / static_cast<Quad>(denominator(c).convert_to<double>());
      for (int i = 0; i < std::abs(p); ++i) t = p > 0 ? t * xq : t / xq;
      for (int i = 0; i < q; ++i) t *= lq;
      sum += t * (s > 0 ? ex : ex_inv);
    }
    return detail::to_complex(sum);
  }

  std::string to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto [s, p, q] = it->first;
      os << (first ? "" : " + ") << "(" << dunklkit::to_string(it->second) << ")";
      if (p != 0) os << "*x^" << p;
      if (q != 0) os << "*l^" << q;
      os << "*exp(" << (s > 0 ? "" : "-") << "l*x)";
      first = false;
    }
    return os.str();
  }

 private:
  std::map<Key, Rational> terms_;
};

/// (1/x d/dx)^k applied to (e^{λx} + e^{−λx})/2, which equals λ^{2k}/(2k−1)!! · J_{Z2}(λ, k, x).
struct ElementaryKernel {
  int k = 0;
  ExpPoly1D numerator;       // the exponential polynomial produced
  Rational normalization;    // 1/(2k−1)!!
  int lambda_power = 0;      // 2k

  /// J_{Z2}(λ, k, x) = numerator / (normalization · λ^{2k}).
  Complex jg(Complex lambda, Complex x) const {
    return numerator.evaluate(lambda, x) / (normalization.convert_to<double>() * std::pow(lambda, lambda_power));
  }
};

inline ElementaryKernel elementary_kernel_1d(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("elementary_kernel_1d supports k ∈ {1,2,3,4}");
  ElementaryKernel out;
  out.k = k;
  out.numerator = ExpPoly1D::cosh_kernel();
  // Lowering M_x⁻¹ T_x(j): on even functions T_x(j) f = f′.
  for (int j = 0; j < k; ++j) out.numerator = out.numerator.dunkl(Rational(j)).shifted(-1, 0);
  Rational dfact(1);
  for (int j = 1; j <= 2 * k - 1; j += 2) dfact *= j;
  out.normalization = Rational(1) / dfact;
  out.lambda_power = 2 * k;
  return out;
}

/// Coefficients of t/(1 − e^{−t}) = Σ h_n t^n, i.e. B_n^+ / n!.
inline const std::vector<double>& inverse_one_minus_exp_series() {
  static const std::vector<double> h = [] {
    const int n_max = 200;
    // (1 − e^{−t})/t = Σ_m (−1)^m t^m/(m+1)!, inverted term by term.
    std::vector<double> a(n_max + 1), out(n_max + 1);
    double f = 1;
    for (int m = 0; m <= n_max; ++m) {
      f /= (m + 1);
      a[m] = (m % 2 ? -1.0 : 1.0) * f;
    }
    out[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
      double s = 0;
      for (int m = 1; m <= n; ++m) s += a[m] * out[n - m];
      out[n] = -s;
    }
    return out;
  }();
  return h;
}

inline constexpr double kCherednikGuardRadius = kPi;

/// Rank-one Cherednik eigenfunction C(λ, k, t): solves
///   f′ + k (f(t) − f(−t))/(1 − e^{−t}) − (k/2) f = λ f,  f(0) = 1,
/// by the power series Σ b_n t^n with
///   (n + 1 + 2k[n even]) b_{n+1} = (λ + k/2) b_n − 2k Σ_{j odd ≤ n} b_j h_{n+1−j}.
class CherednikSeries {
 public:
  CherednikSeries(Complex lambda, double k, int n_terms) : lambda_(lambda), k_(k) {
    if (!(k >= 0)) throw std::invalid_argument("Cherednik series needs real k ≥ 0");
    const auto& h = inverse_one_minus_exp_series();
    if (n_terms + 1 >= static_cast<int>(h.size())) throw std::invalid_argument("too many Cherednik series terms");
    b_.assign(n_terms + 1, Complex(0));
    b_[0] = 1;
    for (int n = 0; n < n_terms; ++n) {
      Complex s = (lambda + k / 2) * b_[n];
      for (int j = 1; j <= n; j += 2) s -= 2 * k * b_[j] * h[n + 1 - j];
      b_[n + 1] = s / (n + 1 + ((n % 2 == 0) ? 2 * k : 0.0));
    }
  }

  const std::vector<Complex>& coefficients() const { return b_; }

  Complex value(double t) const {
    Complex s(0);
    for (std::size_t n = b_.size(); n-- > 0;) s = s * t + b_[n];
    return s;
  }
  Complex derivative(double t) const {
    Complex s(0);
    for (std::size_t n = b_.size(); n-- > 1;) s = s * t + b_[n] * static_cast<double>(n);
    return s;
  }
  /// Left side minus right side of the eigen-equation at t ≠ 0.
  Complex residual(double t) const {
    const Complex f = value(t), fm = value(-t);
    return derivative(t) + k_ * (f - fm) / (1 - std::exp(-t)) - (k_ / 2) * f - lambda_ * f;
  }

 private:
  Complex lambda_;
  double k_;
  std::vector<Complex> b_;
};

inline KernelValue cherednik_rank1(Complex lambda, double k, double t) {
  if (std::abs(t) >= kCherednikGuardRadius)
    throw SeriesDivergence("|t| = " + std::to_string(std::abs(t)) + " is outside the series guard radius π");
  // Terms until the majorant (|λ| + k + 1)^n |t|^n / n! is negligible.
  const double growth = (std::abs(lambda) + k + 1) * std::abs(t);
  int n = std::max(30, static_cast<int>(std::ceil(3 * growth + 30)));
  n = std::min(n, 190);
  CherednikSeries series(lambda, k, n);
  KernelValue kv;
  kv.value = series.value(t);
  const auto& b = series.coefficients();
  kv.abs_error_estimate = std::abs(b.back()) * std::pow(std::abs(t), n) + std::abs(b[n - 1]) * std::pow(std::abs(t), n - 1);
  kv.method = "cherednik-series";
  kv.terms = n;
  return kv;
}

/// |C(ε⁻¹λ, k, εx) − Exp_{Z2}(λ, k, x)| for each ε.
inline std::vector<double> limit_transition_check(Complex lambda, double k, double x, const std::vector<double>& eps) {
  const Complex target = dunkl_kernel_z2(lambda, k, x).value;
  std::vector<double> out;
  out.reserve(eps.size());
  for (double e : eps) out.push_back(std::abs(cherednik_rank1(lambda / e, k, e * x).value - target));
  return out;
}

/// |ε^a Γ(iε⁻¹s + a) / Γ(iε⁻¹s)|.
inline double gamma_ratio(double a, double s, double eps) {
  if (s == 0) throw GammaPole("Γ(is) has a pole at s = 0");
  if (!(eps > 0)) throw std::invalid_argument("ε must be positive");
  return std::exp(a * std::log(eps) + log_gamma_ratio(Complex(0, s / eps), a).real());
}

/// Fitted constants with |Γ(is+a)/Γ(is)| ≤ M1|s|^a + M2, and the same for the factor (1 − a/(is)).
struct GammaBoundFit {
  double m1 = 0, m2 = 0;
  double m1_tilde = 0, m2_tilde = 0;
  bool holds = false;
};

inline GammaBoundFit fit_gamma_bounds(double a, const std::vector<double>& s_grid) {
  GammaBoundFit fit;
  auto ratio = [&](double s, bool tilde) {
    Complex r = std::exp(log_gamma_ratio(Complex(0, s), a));
    if (tilde) r *= 1.0 - a / Complex(0, s);
    return std::abs(r);
  };
  // M1 from |s| ≥ 1, M2 from |s| < 1.
  for (double s : s_grid) {
    if (s == 0) continue;
    const double scale = std::pow(std::abs(s), a);
    if (std::abs(s) >= 1) {
      fit.m1 = std::max(fit.m1, ratio(s, false) / scale);
      fit.m1_tilde = std::max(fit.m1_tilde, ratio(s, true) / scale);
    } else {
      fit.m2 = std::max(fit.m2, ratio(s, false));
      fit.m2_tilde = std::max(fit.m2_tilde, ratio(s, true));
    }
  }
  fit.holds = std::isfinite(fit.m1) && std::isfinite(fit.m2) && std::isfinite(fit.m1_tilde) && std::isfinite(fit.m2_tilde);
  for (double s : s_grid) {
    if (s == 0) continue;
    const double scale = std::pow(std::abs(s), a);
    if (ratio(s, false) > (fit.m1 * scale + fit.m2) * (1 + 1e-12)) fit.holds = false;
    if (ratio(s, true) > (fit.m1_tilde * scale + fit.m2_tilde) * (1 + 1e-12)) fit.holds = false;
  }
  return fit;
}

}  // namespace dunklkit
