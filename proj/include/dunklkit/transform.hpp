#pragma once

// Numerical Dunkl transforms. Rank one is handled by graded quadrature for
// bump, poly·Gaussian and Paley–Wiener inputs; rank two admits poly·Gaussian
// inputs only, through Gaussian moments contracted with the kernel tables.

#include "dunkl_ops.hpp"
#include "intertwiner.hpp"
#include "kernels.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "special.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit {

class ToleranceNotReached : public std::runtime_error {
 public:
  ToleranceNotReached(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

enum class FunctionClass { bump, poly_gaussian, paley_wiener };

inline const char* to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::bump: return "bump";
    case FunctionClass::poly_gaussian: return "poly-gaussian";
    default: return "paley-wiener";
  }
}

/// A function on the line with |f| < 1e−15 for |x| ≥ support.
struct SampledFunction {
  std::function<Complex(double)> fn;
  double support = std::numeric_limits<double>::infinity();
  FunctionClass kind = FunctionClass::bump;
  int parity = 0;          // +1 even, −1 odd, 0 neither
  double frequency = 0;    // oscillation rate, for panel sizing
  std::string label;
  // Bump parameters or the polynomial factor, for exact derivatives.
  double radius = 0, center = 0;
  int bump_order = 0;  // derivatives already taken of a bump sample
  std::optional<Poly<Rational>> poly;

  Complex operator()(double x) const { return std::abs(x) >= support ? Complex(0) : fn(x); }
};

/// exp(−1/(1−u²)) with u = (x − center)/R, zero for |u| ≥ 1.
inline double bump_value(double x, double R = 1, double center = 0) {
  const double u = (x - center) / R;
  if (std::abs(u) >= 1) return 0;
  return std::exp(-1 / (1 - u * u));
}

inline SampledFunction bump_function(double R = 1, double center = 0) {
  if (!(R > 0)) throw std::invalid_argument("bump radius must be positive");
  SampledFunction f;
  f.fn = [R, center](double x) { return Complex(bump_value(x, R, center)); };
  f.support = std::abs(center) + R;
  f.kind = FunctionClass::bump;
  f.parity = center == 0 ? 1 : 0;
  f.label = "bump:R=" + format_double(R) + (center == 0 ? "" : ",c=" + format_double(center));
  f.radius = R;
  f.center = center;
  return f;
}

/// p(x)e^{−x²/2} for a polynomial in one variable.
inline SampledFunction poly_gaussian_function(const Poly<Rational>& p) {
  if (p.dim() != 1) throw DimensionMismatch("poly·Gaussian samples are one-dimensional");
  const Poly<double> pd = p.convert<double>();
  SampledFunction f;
  f.fn = [pd](double x) { return Complex(pd.evaluate<double>(std::vector<double>{x}) * std::exp(-x * x / 2)); };
  f.support = 12 + std::max(0, p.degree());
  f.kind = FunctionClass::poly_gaussian;
  bool even = true, odd = true;
  for (const auto& [e, c] : p.terms()) (e[0] % 2 ? even : odd) = false;
  f.parity = even ? 1 : (odd ? -1 : 0);
  f.label = "poly-gaussian:" + to_text(p);
  f.poly = p;
  return f;
}

/// f′ for poly·Gaussian samples and for bumps up to the second derivative.
inline SampledFunction derivative_of(const SampledFunction& f) {
  SampledFunction d = f;
  d.parity = -f.parity;
  d.label = "d/dx " + f.label;
  if (f.kind == FunctionClass::bump) {
    if (f.bump_order > 1) throw std::invalid_argument("exact bump derivatives stop at order 2");
    const double R = f.radius, c = f.center;
    d.bump_order = f.bump_order + 1;
    if (f.bump_order == 0) {
      d.fn = [R, c](double x) {
        const double u = (x - c) / R;
        if (std::abs(u) >= 1) return Complex(0);
        const double s = 1 - u * u;
        return Complex(bump_value(x, R, c) * (-2 * u / (s * s)) / R);
      };
    } else {
      // b″ = b (g² + g′) with g = −2u/s², g′ = −2/s² − 8u²/s³, in the variable u
      d.fn = [R, c](double x) {
        const double u = (x - c) / R;
        if (std::abs(u) >= 1) return Complex(0);
        const double s = 1 - u * u, g = -2 * u / (s * s), dg = -2 / (s * s) - 8 * u * u / (s * s * s);
        return Complex(bump_value(x, R, c) * (g * g + dg) / (R * R));
      };
    }
    return d;
  }
  if (f.kind == FunctionClass::poly_gaussian && f.poly) {
    // (pψ)′ = (p′ − x p)ψ
    Poly<Rational> q = f.poly->partial(0) - Poly<Rational>::variable(1, 0) * *f.poly;
    SampledFunction out = poly_gaussian_function(q);
    out.label = d.label;
    return out;
  }
  throw std::invalid_argument("exact derivative needs a bump or poly·Gaussian sample");
}

/// Exp(iμ, k, u) in rank one, with the k = 0 exponential evaluated directly.
inline Complex kernel_z2(Complex mu, double k, double u) {
  if (k == 0) return std::exp(Complex(0, 1) * mu * u);
  return exp_z2(mu, k, u).value;
}

/// c_k = ∫ e^{−x²/2}|x|^{2k} dx = 2^{k+1/2}Γ(k+1/2).
inline double mehta_c_closed_form(double k) {
  if (!(k >= 0)) throw std::invalid_argument("the Mehta constant is evaluated for k ≥ 0");
  return std::exp((k + 0.5) * std::log(2.0) + std::lgamma(k + 0.5));
}

inline QuadratureSpec transform_quadrature() {
  QuadratureSpec s;
  s.max_panel_width = 0.25;
  s.target_tol = 1e-12;
  return s;
}

namespace detail {

inline QuadratureRule reflected_rule(const QuadratureRule& half) {
  QuadratureRule full;
  full.x.reserve(2 * half.size());
  full.w.reserve(2 * half.size());
  for (std::size_t i = half.size(); i-- > 0;) {
    full.x.push_back(-half.x[i]);
    full.w.push_back(half.w[i]);
  }
  full.x.insert(full.x.end(), half.x.begin(), half.x.end());
  full.w.insert(full.w.end(), half.w.begin(), half.w.end());
  return full;
}

// Rule on [0, S] graded at 0 for the weight u^{weight_exponent} and at the given edges.
inline QuadratureRule half_line_rule(double S, double weight_exponent, const std::vector<GradePoint>& edges,
                                     double width, const QuadratureSpec& spec, bool fine) {
  std::vector<GradePoint> pts{{0, grading_levels_for(weight_exponent, spec.target_tol)}};
  pts.insert(pts.end(), edges.begin(), edges.end());
  if (fine) pts = refined_points(pts);
  return composite_rule(0, S, pts, fine ? width / 2 : width, spec);
}

// Support edges of a bump folded onto the half line; the flat edge is not analytic.
inline std::vector<GradePoint> edge_points(const SampledFunction& f) {
  if (f.kind != FunctionClass::bump) return {};
  return {{std::abs(f.center - f.radius), 8}, {std::abs(f.center + f.radius), 8}};
}

}  // namespace detail

/// Samples of a rank-one transform on a symmetric rule, for reuse across x.
struct SpectralSamples {
  double cutoff = 0;  // Λ
  QuadratureRule coarse, fine;
  std::vector<Complex> coarse_values, fine_values;
};

/// Rank-one transforms D_k f(λ) = c_k⁻¹∫ f(x)Exp(−iλ,k,x)|x|^{2k}dx and E_k g(x) = D_k g(−x).
class RankOneTransform {
 public:
  explicit RankOneTransform(double k, QuadratureSpec spec = transform_quadrature())
      : k_(k), ck_(mehta_c_closed_form(k)), spec_(spec) {}

  double k() const { return k_; }
  double c_k() const { return ck_; }
  const QuadratureSpec& quadrature() const { return spec_; }

  QuadResult forward(const SampledFunction& f, Complex lambda) const { return forward(f, std::vector{lambda})[0]; }
  std::vector<QuadResult> forward(const SampledFunction& f, const std::vector<Complex>& lambdas) const {
    return kernel_integrals(f, lambdas, false);
  }

  QuadResult inverse(const SampledFunction& g, double x) const { return inverse(g, std::vector{x})[0]; }
  std::vector<QuadResult> inverse(const SampledFunction& g, const std::vector<double>& xs) const {
    std::vector<Complex> mus;
    for (double x : xs) mus.emplace_back(-x);
    return kernel_integrals(g, mus, true);
  }

  /// c_k⁻¹∫ h(u) Exp(−iμ,k,u)|u|^{2k}du over |u| < h.support for each μ.
  std::vector<QuadResult> kernel_integrals(const SampledFunction& h, const std::vector<Complex>& mus,
                                           bool check = true) const {
    const auto parts = split_integrals(h, mus);
    std::vector<QuadResult> out(mus.size());
    for (std::size_t i = 0; i < mus.size(); ++i) {
      out[i].value = parts[i].even + parts[i].odd;
      out[i].error = parts[i].error;
      out[i].nodes = parts[i].nodes;
    }
    if (check && spec_.two_grid)
      for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].error > spec_.target_tol * std::max(1.0, std::abs(out[i].value)) * 1e3)
          throw ToleranceNotReached("transform at μ = " + format_double(mus[i].real()) +
                                        (mus[i].imag() ? "+" + format_double(mus[i].imag()) + "i" : "") +
                                        " reached only " + format_double(out[i].error),
                                    out[i].error);
    return out;
  }

  /// Contributions of the even and odd parts of h; the integral at −μ is even − odd.
  struct SplitIntegral {
    Complex even, odd;
    double error = 0;
    std::size_t nodes = 0;
  };

  std::vector<SplitIntegral> split_integrals(const SampledFunction& h, const std::vector<Complex>& mus) const {
    if (!std::isfinite(h.support)) throw std::invalid_argument("transform input needs a finite support radius");
    double top = 0;
    for (auto mu : mus) top = std::max(top, std::abs(mu));
    const double width = std::min(spec_.max_panel_width, 30.0 / std::max(1e-9, top + h.frequency));
    const auto edge = detail::edge_points(h);
    const QuadratureRule coarse = detail::half_line_rule(h.support, 2 * k_, edge, width, spec_, false);
    const QuadratureRule fine =
        spec_.two_grid ? detail::half_line_rule(h.support, 2 * k_, edge, width, spec_, true) : QuadratureRule{};
    const Samples sc = sample(h, coarse), sf = sample(h, fine);
    std::vector<SplitIntegral> out(mus.size());
    parallel_for(mus.size(), [&](std::size_t i) {
      SplitIntegral r = contract(coarse, sc, mus[i]);
      r.nodes = coarse.size();
      if (spec_.two_grid) {
        const SplitIntegral c = r;
        r = contract(fine, sf, mus[i]);
        r.error = std::abs((r.even + r.odd) - (c.even + c.odd));
        r.nodes = coarse.size() + fine.size();
      }
      out[i] = r;
    });
    return out;
  }

  /// D_{k} f on a symmetric λ-rule over |λ| ≤ Λ, with Λ where |D_k f(λ)|(1+|λ|)^{weight_exponent}
  /// stays below target_tol of its maximum; x_max sizes the panels for later synthesis.
  SpectralSamples spectrum(const SampledFunction& f, double weight_exponent, double x_max, double cutoff_cap = 4000) const {
    SpectralSamples s;
    s.cutoff = spectral_cutoff(f, weight_exponent, cutoff_cap);
    const double width = std::min(8.0, 24.0 / (x_max + f.support + f.frequency + 1e-9));
    const int lv = grading_levels_for(weight_exponent, spec_.target_tol);
    auto build = [&](bool fine) {
      std::vector<GradePoint> pts{{0, lv}};
      if (fine) pts = refined_points(pts);
      return detail::reflected_rule(composite_rule(0, s.cutoff, pts, fine ? width / 2 : width, spec_));
    };
    s.coarse = build(false);
    s.coarse_values = banded_values(f, s.coarse);
    if (spec_.two_grid) {
      s.fine = build(true);
      s.fine_values = banded_values(f, s.fine);
    }
    return s;
  }

 private:
  struct Samples {
    std::vector<Complex> even, odd;
    bool has_even = false, has_odd = false;
  };

  // Even and odd parts of h on the nodes of a half-line rule.
  static Samples sample(const SampledFunction& h, const QuadratureRule& r) {
    Samples s;
    s.has_even = h.parity >= 0;
    s.has_odd = h.parity <= 0;
    s.even.assign(r.size(), Complex(0));
    s.odd.assign(r.size(), Complex(0));
    parallel_for(r.size(), [&](std::size_t i) {
      const Complex plus = h(r.x[i]);
      const Complex minus = h.parity == 0 ? h(-r.x[i]) : static_cast<double>(h.parity) * plus;
      s.even[i] = (plus + minus) / 2.0;
      s.odd[i] = (plus - minus) / 2.0;
    });
    return s;
  }

  // Even parts pair with 2j_{k−1/2}(μu), odd parts with 2(−iμu/(2k+1))j_{k+1/2}(μu).
  SplitIntegral contract(const QuadratureRule& r, const Samples& h, Complex mu) const {
    SplitIntegral s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double u = r.x[i];
      const double w = 2 * r.w[i] * (k_ == 0 ? 1.0 : std::pow(u, 2 * k_));
      const Complex z = mu * u;
      if (h.has_even && h.even[i] != Complex(0))
        s.even += w * h.even[i] * (k_ == 0 ? std::cos(z) : normalized_bessel(k_ - 0.5, z).value);
      if (h.has_odd && h.odd[i] != Complex(0))
        s.odd += w * h.odd[i] *
                 (k_ == 0 ? Complex(0, -1) * std::sin(z)
                          : Complex(0, -1) * z / (2 * k_ + 1) * normalized_bessel(k_ + 0.5, z).value);
    }
    s.even /= ck_;
    s.odd /= ck_;
    return s;
  }

  // D_k f at the nodes of a reflected rule from one pass over λ ≥ 0, with one
  // kernel rule per dyadic band of λ.
  std::vector<Complex> banded_values(const SampledFunction& f, const QuadratureRule& r) const {
    QuadratureSpec inner = spec_;
    inner.two_grid = false;
    const RankOneTransform single(k_, inner);
    const std::size_t half = r.size() / 2;
    std::vector<Complex> v(r.size());
    std::size_t i = half;
    while (i < r.size()) {
      const double band = std::exp2(std::ceil(std::log2(std::max(1.0, r.x[i]))));
      std::vector<Complex> chunk;
      while (i < r.size() && (chunk.empty() || r.x[i] <= band)) chunk.emplace_back(r.x[i++]);
      const auto parts = single.split_integrals(f, chunk);
      for (std::size_t t = 0; t < parts.size(); ++t) {
        const std::size_t at = i - parts.size() + t;
        v[at] = parts[t].even + parts[t].odd;
        v[r.size() - 1 - at] = parts[t].even - parts[t].odd;
      }
    }
    return v;
  }

  double spectral_cutoff(const SampledFunction& f, double weight_exponent, double cap) const {
    QuadratureSpec inner = spec_;
    inner.two_grid = false;
    const RankOneTransform single(k_, inner);
    const double step = std::min(0.5, kPi / (2 * (f.support + f.frequency)));
    const double window = std::max(20.0, 4 * (f.support + 1));
    const double goal = spec_.target_tol;
    // Values below kNoiseFloor of the unweighted peak count as zero, so that
    // round-off is not amplified by the weight.
    constexpr double kNoiseFloor = 1e-15;
    double peak = 0, raw_peak = 0;
    std::vector<double> env;
    const std::size_t per_window = static_cast<std::size_t>(std::ceil(window / step));
    const std::size_t chunk = 64;
    for (std::size_t start = 0;; start += chunk) {
      std::vector<Complex> lam;
      for (std::size_t j = 0; j < chunk; ++j) lam.emplace_back((start + j) * step);
      const auto parts = single.split_integrals(f, lam);
      for (std::size_t j = 0; j < chunk; ++j) {
        const double l = (start + j) * step;
        const double raw = std::max(std::abs(parts[j].even + parts[j].odd), std::abs(parts[j].even - parts[j].odd));
        raw_peak = std::max(raw_peak, raw);
        const double e = std::max(0.0, raw - kNoiseFloor * raw_peak) * std::pow(1 + l, weight_exponent);
        env.push_back(e);
        peak = std::max(peak, e);
        if (env.size() > per_window) {
          double tail = 0;
          for (std::size_t t = env.size() - per_window; t < env.size(); ++t) tail = std::max(tail, env[t]);
          if (tail < goal * peak) return l;
        }
        if (l >= cap)
          throw ToleranceNotReached("spectral envelope did not decay below " + format_double(goal) + " by Λ = " +
                                        format_double(cap),
                                    e / peak);
      }
    }
  }

  double k_;
  double ck_;
  QuadratureSpec spec_;
};

/// norm·Σ w s(λ)|λ|^{weight_exponent} Exp(iλ, k, x), with a two-grid estimate.
inline std::vector<QuadResult> spectral_synthesis(const SpectralSamples& s, double k, double weight_exponent, double norm,
                                                  const std::vector<double>& xs) {
  auto sum = [&](const QuadratureRule& r, const std::vector<Complex>& v, double x) {
    Complex acc(0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (v[i] == Complex(0)) continue;
      const double l = r.x[i];
      const double w = r.w[i] * (weight_exponent == 0 ? 1.0 : std::pow(std::abs(l), weight_exponent));
      acc += w * v[i] * kernel_z2(Complex(l), k, x);
    }
    return norm * acc;
  };
  std::vector<QuadResult> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    QuadResult r;
    const Complex c = sum(s.coarse, s.coarse_values, xs[i]);
    if (!s.fine.x.empty()) {
      r.value = sum(s.fine, s.fine_values, xs[i]);
      r.error = std::abs(r.value - c);
      r.nodes = s.coarse.size() + s.fine.size();
    } else {
      r.value = c;
      r.nodes = s.coarse.size();
    }
    out[i] = r;
  });
  return out;
}

inline double max_abs_x(const std::vector<double>& xs) {
  double m = 0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

/// E_k D_k f on an x-grid, the rank-one inversion round trip.
inline std::vector<QuadResult> inversion_round_trip(double k, const SampledFunction& f, const std::vector<double>& xs,
                                                    QuadratureSpec spec = transform_quadrature()) {
  RankOneTransform t(k, spec);
  const auto s = t.spectrum(f, 2 * k, max_abs_x(xs));
  return spectral_synthesis(s, k, 2 * k, 1 / t.c_k(), xs);
}

/// (p, Gaussian) output of the exact transform: D_k(pψ) = (−i)^n(e^{−Δ_k/2}p)ψ, E_k with i^n.
enum class Direction { forward, inverse };

inline ComplexPoly<Rational> poly_gaussian_transform(const RootSystem<Rational>& rs, const Multiplicity<Rational>& k,
                                                     const Poly<Rational>& p, Direction dir) {
  return DunklOperators<Rational>(rs, k).transform_poly_gaussian(p, dir == Direction::inverse);
}

inline Complex evaluate(const ComplexPoly<Rational>& p, const std::vector<double>& x) {
  const double re = p.re.convert<double>().evaluate<double>(x);
  const double im = p.im.convert<double>().evaluate<double>(x);
  double n2 = 0;
  for (double v : x) n2 += v * v;
  return Complex(re, im) * std::exp(-n2 / 2);
}

// ---------------------------------------------------------------------------
// Gaussian-weighted integrals in rank ≤ 2.

/// Tensor rule for ∫ F(x) w_k(x) e^{−|x|²/2} dx over the root span: graded
/// radial panels times angular panels cut and graded at root hyperplanes.
class GaussianCubature {
 public:
  template <class F>
  GaussianCubature(const RootSystem<F>& rs, const Multiplicity<F>& k, QuadratureSpec spec = transform_quadrature(),
                   double radius = 14)
      : dim_(rs.dim()), spec_(spec) {
    std::vector<std::vector<double>> roots;
    for (auto r : rs.positive()) {
      std::vector<double> a;
      for (const auto& v : rs.roots()[r]) a.push_back(FieldTraits<F>::to_double(v));
      const double kr = FieldTraits<F>::to_double(rs.k_of(k, r));
      if (kr < 0) throw std::invalid_argument("Gaussian cubature needs k ≥ 0");
      roots.push_back(a);
      ks_.push_back(kr);
      gamma_ += kr;
    }
    basis_ = orthonormal_span(roots);
    rank_ = basis_.size();
    if (rank_ == 0 || rank_ > 2) throw std::invalid_argument("Gaussian cubature supports rank 1 and 2");
    for (const auto& a : roots) {
      std::vector<double> proj(rank_);
      for (std::size_t j = 0; j < rank_; ++j)
        for (std::size_t i = 0; i < dim_; ++i) proj[j] += basis_[j][i] * a[i];
      proj_.push_back(proj);
    }
    const double radial_exp = 2 * gamma_ + (rank_ == 2 ? 1 : 0);
    radial_ = composite_rule(0, radius, {{0, grading_levels_for(radial_exp, spec.target_tol)}}, 0.5, spec);
    if (rank_ == 2) {
      std::vector<GradePoint> cuts;
      for (std::size_t r = 0; r < proj_.size(); ++r) {
        const double th = std::atan2(proj_[r][1], proj_[r][0]) + kPi / 2;
        for (double t : {th, th + kPi}) {
          double a = std::fmod(t, 2 * kPi);
          if (a < 0) a += 2 * kPi;
          const int lv = grading_levels_for(2 * ks_[r], spec.target_tol);
          if (a < 1e-12 || 2 * kPi - a < 1e-12) {
            cuts.push_back({0, lv});
            cuts.push_back({2 * kPi, lv});
          } else {
            cuts.push_back({a, lv});
          }
        }
      }
      angular_ = composite_rule(0, 2 * kPi, cuts, 0.25, spec);
      for (std::size_t i = 0; i < angular_.size(); ++i) {
        const double c = std::cos(angular_.x[i]), s = std::sin(angular_.x[i]);
        double w = 1;
        for (std::size_t r = 0; r < proj_.size(); ++r)
          if (ks_[r] != 0) w *= std::pow(std::abs(proj_[r][0] * c + proj_[r][1] * s), 2 * ks_[r]);
        angular_.w[i] *= w;
      }
    } else {
      // Rank one: directions ±u with the root weights at unit length.
      double w = 1;
      for (std::size_t r = 0; r < proj_.size(); ++r)
        if (ks_[r] != 0) w *= std::pow(std::abs(proj_[r][0]), 2 * ks_[r]);
      angular_.x = {0, kPi};
      angular_.w = {w, w};
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  double gamma() const { return gamma_; }
  std::size_t size() const { return radial_.size() * angular_.size(); }

  /// ∫ over the root span of r^{m} (cos θ)^{a}(sin θ)^{b} r^{2γ+rank−1}e^{−r²/2}, in factors.
  double radial_moment(int m) const {
    const double e = 2 * gamma_ + static_cast<double>(rank_) - 1 + m;
    double s = 0;
    for (std::size_t i = 0; i < radial_.size(); ++i) {
      const double r = radial_.x[i];
      s += radial_.w[i] * std::pow(r, e) * std::exp(-r * r / 2);
    }
    return s;
  }

  /// Σ_θ w(θ) (u·e_θ)^a (v·e_θ)^b in root-span coordinates.
  double angular_moment(int a, int b) const {
    double s = 0;
    for (std::size_t i = 0; i < angular_.size(); ++i) {
      const double c = std::cos(angular_.x[i]), t = std::sin(angular_.x[i]);
      s += angular_.w[i] * ipow(c, a) * (rank_ == 2 ? ipow(t, b) : (b == 0 ? 1.0 : 0.0));
    }
    return s;
  }

  /// ∫ F w_k e^{−|x|²/2} over ℝ^dim, with the orthogonal complement (dim − rank ≤ 1)
  /// integrated against its own Gaussian.
  double integrate(const std::function<double(const std::vector<double>&)>& fn) const {
    const auto perp = complement();
    std::vector<double> tn{0.0}, tw{1.0};
    if (!perp.empty()) {
      if (perp.size() > 1) throw std::invalid_argument("Gaussian cubature allows one complementary direction");
      auto r = composite_rule(-12, 12, {}, 0.5, spec_);
      tn = r.x;
      tw.clear();
      for (std::size_t i = 0; i < r.size(); ++i) tw.push_back(r.w[i] * std::exp(-r.x[i] * r.x[i] / 2));
    }
    double total = 0;
    std::vector<double> x(dim_);
    for (std::size_t a = 0; a < angular_.size(); ++a) {
      const double c = std::cos(angular_.x[a]), s = std::sin(angular_.x[a]);
      for (std::size_t i = 0; i < radial_.size(); ++i) {
        const double r = radial_.x[i];
        const double wr = radial_.w[i] * std::pow(r, 2 * gamma_ + static_cast<double>(rank_) - 1) * std::exp(-r * r / 2);
        for (std::size_t t = 0; t < tn.size(); ++t) {
          for (std::size_t d = 0; d < dim_; ++d) {
            x[d] = r * (c * basis_[0][d] + (rank_ == 2 ? s * basis_[1][d] : 0.0));
            if (!perp.empty()) x[d] += tn[t] * perp[0][d];
          }
          total += angular_.w[a] * wr * tw[t] * fn(x);
        }
      }
    }
    return total;
  }

  /// ∫ w_k e^{−|x|²/2} over ℝ^dim.
  double mehta() const {
    const double perp = std::pow(2 * kPi, (static_cast<double>(dim_) - static_cast<double>(rank_)) / 2);
    return perp * radial_moment(0) * angular_moment(0, 0);
  }

  const std::vector<std::vector<double>>& span_basis() const { return basis_; }

 private:
  static double ipow(double v, int n) {
    double r = 1;
    for (int i = 0; i < n; ++i) r *= v;
    return r;
  }

  static std::vector<std::vector<double>> orthonormal_span(const std::vector<std::vector<double>>& vs) {
    std::vector<std::vector<double>> out;
    for (auto v : vs) {
      for (const auto& b : out) {
        double d = 0;
        for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * b[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
      }
      double n = 0;
      for (double c : v) n += c * c;
      n = std::sqrt(n);
      if (n < 1e-9) continue;
      for (double& c : v) c /= n;
      out.push_back(v);
    }
    return out;
  }

  std::vector<std::vector<double>> complement() const {
    std::vector<std::vector<double>> all = basis_;
    const std::size_t r = all.size();
    for (std::size_t i = 0; i < dim_; ++i) {
      std::vector<double> e(dim_, 0.0);
      e[i] = 1;
      all.push_back(e);
    }
    auto ortho = orthonormal_span(all);
    return {ortho.begin() + static_cast<std::ptrdiff_t>(r), ortho.end()};
  }

  std::size_t dim_, rank_ = 0;
  QuadratureSpec spec_;
  std::vector<double> ks_;
  double gamma_ = 0;
  std::vector<std::vector<double>> basis_, proj_;
  QuadratureRule radial_, angular_;
};

/// c_k: the closed form in rank one, graded quadrature otherwise.
template <class F>
double mehta_c(const RootSystem<F>& rs, const Multiplicity<F>& k, QuadratureSpec spec = transform_quadrature()) {
  if (rs.tag() == "z2") return mehta_c_closed_form(FieldTraits<F>::to_double(k.per_orbit.at(0)));
  return GaussianCubature(rs, k, spec).mehta();
}

/// c_k⁻¹∫ p(x) w_k e^{−|x|²/2} dx for a polynomial p, by cubature.
template <class F>
double gaussian_expectation(const RootSystem<F>& rs, const Multiplicity<F>& k, const Poly<Rational>& p,
                            QuadratureSpec spec = transform_quadrature()) {
  GaussianCubature cub(rs, k, spec);
  const Poly<double> pd = p.convert<double>();
  return cub.integrate([&](const std::vector<double>& x) { return pd.evaluate<double>(x); }) / cub.mehta();
}

/// D_k and E_k of poly·Gaussian inputs in rank ≤ 2 (root span = ℝ^dim), through the
/// Gaussian moments c_k⁻¹∫ p(x) b_b(x) w_k ψ dx contracted with the kernel tables.
template <class F>
class GaussianClassTransform {
 public:
  GaussianClassTransform(const RootSystem<F>& rs, const Multiplicity<F>& k, int degree = 60,
                         QuadratureSpec spec = transform_quadrature())
      : rs_(&rs), series_(rs, k), cub_(rs, k, spec), degree_(degree) {
    if (cub_.rank() != rs.dim()) throw std::invalid_argument("rank-2 transforms need the roots to span the space");
    const auto& L = series_.coordinates();
    for (std::size_t i = 0; i < rs.dim(); ++i)
      for (std::size_t j = 0; j < rs.dim(); ++j)
        if (std::abs(L[i * rs.dim() + j] - (i == j ? 1.0 : 0.0)) > 1e-15)
          throw std::invalid_argument("rank-2 transforms need identity kernel coordinates");
    const auto& B = cub_.span_basis();
    for (std::size_t i = 0; i < rs.dim(); ++i)
      for (std::size_t j = 0; j < rs.dim(); ++j)
        if (std::abs(B[i][j] - (i == j ? 1.0 : 0.0)) > 1e-12)
          throw std::invalid_argument("rank-2 transforms need an axis-aligned root span");
    ck_ = cub_.mehta();
  }

  double c_k() const { return ck_; }
  int degree() const { return degree_; }

  /// m_n[b] = c_k⁻¹∫ p(x) x^b/√b! w_k ψ dx for |b| = n ≤ degree.
  std::vector<std::vector<Complex>> moments(const Poly<Rational>& p) const {
    const int top = degree_ + std::max(0, p.degree());
    std::vector<double> radial(top + 1);
    for (int m = 0; m <= top; ++m) radial[m] = cub_.radial_moment(m);
    auto monomial_integral = [&](const Exponent& e) {
      const int n = total_degree(e);
      const double ang = rs_->dim() == 2 ? cub_.angular_moment(e[0], e[1]) : cub_.angular_moment(e[0], 0);
      return radial[n] * ang;
    };
    std::map<Exponent, double> cache;
    auto cached = [&](const Exponent& e) {
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
      const double v = monomial_integral(e);
      cache.emplace(e, v);
      return v;
    };
    std::vector<std::vector<Complex>> out(degree_ + 1);
    for (int n = 0; n <= degree_; ++n) {
      const auto basis = series_.basis(n);
      out[n].resize(basis.size());
      for (std::size_t b = 0; b < basis.size(); ++b) {
        double fact = 1;
        for (int v : basis[b])
          for (int t = 2; t <= v; ++t) fact *= t;
        double s = 0;
        for (const auto& [e, c] : p.terms()) {
          Exponent sum = e;
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += basis[b][i];
          s += c.template convert_to<double>() * cached(sum);
        }
        out[n][b] = s / std::sqrt(fact) / ck_;
      }
    }
    return out;
  }

  /// D_k(pψ)(λ) for several λ ∈ ℝ^dim.
  std::vector<Complex> forward(const Poly<Rational>& p, const std::vector<std::vector<double>>& lambdas) const {
    return apply(p, lambdas, -1);
  }

  /// E_k(pψ)(x) for several x ∈ ℝ^dim.
  std::vector<Complex> inverse(const Poly<Rational>& p, const std::vector<std::vector<double>>& xs) const {
    return apply(p, xs, 1);
  }

 private:
  std::vector<Complex> apply(const Poly<Rational>& p, const std::vector<std::vector<double>>& pts, int sign) const {
    const auto m = moments(p);
    std::vector<Complex> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      std::vector<Complex> arg;
      for (double v : pts[i]) arg.emplace_back(0, sign * v);
      out[i] = series_.contract(arg, m);
    });
    return out;
  }

  const RootSystem<F>* rs_;
  KernelSeries<F> series_;
  GaussianCubature cub_;
  int degree_;
  double ck_ = 0;
};

// ---------------------------------------------------------------------------
// Radial reduction.

/// (−2)^q q! L_q^{(γ−q)}(|x|²/2), the polynomial factor of E_k D_0(|x|^{2q}ψ).
inline Poly<Rational> radial_laguerre_form(std::size_t dim, int q, const Rational& gamma) {
  Rational c = factorial_q(q);
  if (q % 2) c = -c;
  for (int i = 0; i < q; ++i) c *= 2;
  return laguerre_half_norm(dim, q, gamma - q) * c;
}

/// Exact residual of E_k D_0(|x|^{2q}ψ) = (−2)^q q! L_q^{(γ−q)}(|x|²/2)ψ via e^{−Δ_k/2}e^{Δ_0/2}.
inline Poly<Rational> radial_reduction_residual(const RootSystem<Rational>& rs, const Multiplicity<Rational>& k, int q) {
  DunklOperators<Rational> Tk(rs, k), T0(rs, rs.multiplicity("0"));
  const Poly<Rational> p = Poly<Rational>::norm_squared(rs.dim()).pow(q);
  const Poly<Rational> lhs = Tk.exp_half_laplacian(-1, T0.exp_half_laplacian(1, p));
  return lhs - radial_laguerre_form(rs.dim(), q, rs.gamma(k));
}

/// max over radii r of |D_k(|x|^{2q}ψ)(r e_1) − D_{k′}(x^{2q}ψ)(r)|: the exact transform of a
/// radial function against the rank-one transform of its profile at k′ = γ + (dim − 1)/2.
inline double radial_reduction_numeric(const RootSystem<Rational>& rs, const Multiplicity<Rational>& k, int q,
                                       const std::vector<double>& radii, QuadratureSpec spec = transform_quadrature()) {
  const std::size_t dim = rs.dim();
  const double index_k = FieldTraits<Rational>::to_double(rs.gamma(k)) + (static_cast<double>(dim) - 1) / 2;
  const auto exact = poly_gaussian_transform(rs, k, Poly<Rational>::norm_squared(dim).pow(q), Direction::forward);
  const SampledFunction profile = poly_gaussian_function(parse_poly("x^" + std::to_string(2 * q), 1));
  std::vector<Complex> lam(radii.begin(), radii.end());
  const auto vals = RankOneTransform(index_k, spec).forward(profile, lam);
  double worst = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<double> at(dim, 0.0);
    at[0] = radii[i];
    worst = std::max(worst, std::abs(vals[i].value - evaluate(exact, at)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Paley–Wiener checks in rank one.

/// g(λ) = (sin(Rλ/n)/(Rλ/n))^n, the Fourier transform of an n-fold box convolution
/// supported in [−R, R]: entire, even, of exponential type R, |g(λ)| ≤ (n/(R|λ|))^n.
inline double bspline_transform(double R, int order, double lambda) {
  const double z = R * lambda / order;
  if (std::abs(z) < 1e-8) return 1 - order * z * z / 6;
  return std::pow(std::sin(z) / z, order);
}

/// The B-spline transform as a Paley–Wiener input, truncated at Λ where the bound
/// ∫_Λ^∞ (n/(Rλ))^n λ^{weight_exponent} dλ falls below tol.
inline SampledFunction classical_pw_function(double R, double weight_exponent, double tol, int order = 16) {
  if (order <= weight_exponent + 2) throw std::invalid_argument("B-spline order too low for the weight");
  const double n = order, p = n - weight_exponent - 1;
  auto tail = [&](double l) { return std::exp(n * std::log(n / R) - p * std::log(l)) / p; };
  double cutoff = 2 * n / R;
  while (tail(cutoff) > tol) cutoff *= 1.05;
  SampledFunction g;
  g.fn = [R, order](double l) { return Complex(bspline_transform(R, order, l)); };
  g.support = cutoff;
  g.kind = FunctionClass::paley_wiener;
  g.parity = 1;
  g.frequency = R;
  g.label = "bspline-pw:R=" + format_double(R) + ",n=" + std::to_string(order);
  g.radius = R;
  return g;
}

struct PWSupportReport {
  double k = 0, R = 0, delta = 0, x_max = 0;
  double sup_outside = 0;   // max |E_k g(x)| over R + δ < |x| ≤ x_max
  double sup_input = 0;     // sup |g| = g(0)
  double sup_inside = 0;    // max |E_k g(x)| over |x| ≤ R, for scale
  double cutoff = 0;        // Λ
  double quad_error = 0;    // largest two-grid estimate
  double ratio() const { return sup_outside / sup_input; }
};

/// E_k g beyond the support radius for g the classical transform of a B-spline.
inline PWSupportReport pw_inverse_support_check(double k, double R = 1, double delta = 0.1, double x_max = 3,
                                                int samples = 40, QuadratureSpec spec = transform_quadrature()) {
  PWSupportReport rep;
  rep.k = k;
  rep.R = R;
  rep.delta = delta;
  rep.x_max = x_max;
  const SampledFunction g = classical_pw_function(R, 2 * k, spec.target_tol);
  rep.cutoff = g.support;
  rep.sup_input = std::abs(g(0));
  std::vector<double> outside, inside;
  for (int i = 1; i <= samples; ++i) outside.push_back(R + delta + (x_max - R - delta) * (i - 1) / std::max(1, samples - 1));
  for (int i = 0; i <= 10; ++i) inside.push_back(R * i / 10.0 * 0.95);
  std::vector<double> xs = outside;
  xs.insert(xs.end(), inside.begin(), inside.end());
  RankOneTransform t(k, spec);
  std::vector<Complex> mus;
  for (double x : xs) mus.emplace_back(-x);
  const auto res = t.kernel_integrals(g, mus, false);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rep.quad_error = std::max(rep.quad_error, res[i].error);
    (i < outside.size() ? rep.sup_outside : rep.sup_inside) =
        std::max(i < outside.size() ? rep.sup_outside : rep.sup_inside, std::abs(res[i].value));
  }
  return rep;
}

struct PWGrid {
  double re_max = 40, im_max = 5;
  int n_re = 81, n_im = 11;
};

struct PWProfile {
  double k = 0, R = 0;
  PWGrid grid;
  std::vector<int> orders;
  std::vector<double> gamma;     // γ_M = sup |F(λ)|(1+|λ|)^M e^{−R|Im λ|}
  double fitted_rate = 0;        // exponential rate along the imaginary axis
  double max_quad_error = 0;
  bool holds = false;
  std::optional<Complex> witness;
};

/// Least-squares rate r in log F(it) ≈ a + r t + b√t + c log t for t ∈ [t_lo, t_hi].
inline double fit_exponential_rate(double k, double R, double t_lo = 5, double t_hi = 40, int n = 36,
                                   QuadratureSpec spec = transform_quadrature()) {
  spec.two_grid = false;
  RankOneTransform t(k, spec);
  const SampledFunction f = bump_function(R);
  std::vector<Complex> lam;
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) {
    ts.push_back(t_lo + (t_hi - t_lo) * i / (n - 1));
    lam.emplace_back(0, ts.back());
  }
  const auto vals = t.forward(f, lam);
  Matrix<double> ata(4, 4), atb(4, 1);
  for (int i = 0; i < n; ++i) {
    const double row[4] = {1, ts[i], std::sqrt(ts[i]), std::log(ts[i])};
    const double y = std::log(std::abs(vals[i].value));
    for (int a = 0; a < 4; ++a) {
      atb(a, 0) += row[a] * y;
      for (int b = 0; b < 4; ++b) ata(a, b) += row[a] * row[b];
    }
  }
  return solve_stacked(ata, atb, 1e-14)(1, 0);
}

/// Sampled decay constants of D_k(bump_R) on a complex λ-grid.
inline PWProfile pw_forward_profile(double k, double R = 1, std::vector<int> orders = {0, 1, 2, 3, 4}, PWGrid grid = {},
                                    QuadratureSpec spec = transform_quadrature()) {
  PWProfile prof;
  prof.k = k;
  prof.R = R;
  prof.grid = grid;
  prof.orders = orders;
  RankOneTransform t(k, spec);
  const SampledFunction f = bump_function(R);
  // Even real f: F(−λ) = F(λ) and F(λ̄) = conj F(λ), so one quadrant suffices.
  std::vector<Complex> lam;
  for (int i = 0; i < grid.n_re; ++i) {
    const double re = -grid.re_max + 2 * grid.re_max * i / std::max(1, grid.n_re - 1);
    if (re < 0) continue;
    for (int j = 0; j < grid.n_im; ++j) {
      const double im = -grid.im_max + 2 * grid.im_max * j / std::max(1, grid.n_im - 1);
      if (im < 0) continue;
      lam.emplace_back(re, im);
    }
  }
  const auto vals = t.kernel_integrals(f, lam, false);
  prof.gamma.assign(orders.size(), 0.0);
  double top = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double a = std::abs(vals[i].value);
    prof.max_quad_error = std::max(prof.max_quad_error, vals[i].error);
    top = std::max(top, a);
    if (!std::isfinite(a) && !prof.witness) prof.witness = lam[i];
    for (std::size_t m = 0; m < orders.size(); ++m)
      prof.gamma[m] = std::max(prof.gamma[m], a * std::pow(1 + std::abs(lam[i]), orders[m]) * std::exp(-R * std::abs(lam[i].imag())));
  }
  prof.fitted_rate = fit_exponential_rate(k, R, 5, 40, 36, spec);
  prof.holds = !prof.witness && prof.max_quad_error <= 1e-6 * top;
  for (double g : prof.gamma) prof.holds = prof.holds && std::isfinite(g);
  return prof;
}

// ---------------------------------------------------------------------------
// Finite differences and the shift relation.

/// Centered 8th-order first derivative, Richardson-extrapolated over h and h/2.
inline Complex fd_derivative(const std::function<Complex(double)>& f, double x, double h = 0.05) {
  static constexpr double c[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  auto d = [&](double s) {
    Complex acc(0);
    for (int j = 1; j <= 4; ++j) acc += c[j - 1] * (f(x + j * s) - f(x - j * s));
    return acc / s;
  };
  return (256.0 * d(h / 2) - d(h)) / 255.0;
}

/// T f(x) = f′(x) + k(f(x) − f(−x))/x from samples, with the limit 2k f′(0) at the origin.
inline Complex dunkl_fd(const std::function<Complex(double)>& f, double k, double x, double h = 0.05) {
  const Complex d = fd_derivative(f, x, h);
  if (std::abs(x) < 1e-8) {
    auto odd = [&](double u) { return (f(u) - f(-u)) / 2.0; };
    return d + 2 * k * fd_derivative(odd, 0, h);
  }
  return d + k * (f(x) - f(-x)) / x;
}

/// Rank-one shift identity λ² J(λ, k+1, x) = (1+2k)·x⁻¹ d/dx J(λ, k, x), residual by finite differences.
inline double shift_residual_z2(double k, Complex lambda, double x, double h = 0.05) {
  if (std::abs(x) < 1e-3) throw std::domain_error("x lies within 1e−3 of the singular hyperplane");
  const double pairing = 1 + 2 * k;  // (x, x)_k = T x
  const Complex lhs = lambda * lambda * jg_z2(lambda, k + 1, x).value;
  auto J = [&](double u) { return jg_z2(lambda, k, u).value; };
  const Complex rhs = pairing * fd_derivative(J, x, h) / x;
  return std::abs(lhs - rhs);
}

/// The same identity between elementary kernels k → k+1, scaled by λ^{2k+2}; zero exactly.
inline ExpPoly1D shift_residual_elementary(int k) {
  const ElementaryKernel lo = elementary_kernel_1d(k), hi = elementary_kernel_1d(k + 1);
  // J_k = numerator_k / (normalization_k λ^{2k}).
  const ExpPoly1D lhs = hi.numerator * (Rational(1) / hi.normalization);
  const Rational pairing(1 + 2 * k);
  const ExpPoly1D rhs = lo.numerator.dunkl(Rational(k)).shifted(-1, 0) * (pairing / lo.normalization);
  return lhs - rhs;
}

/// Per-degree residuals of π(λ)² J(λ, k+1_S, ·) = (π, π)_k π⁻¹T_π(k) J(λ, k, ·) in the exact layer,
/// with J_m the degree-m part of the group-averaged kernel series.
inline std::vector<Poly<Rational>> shift_residual_exact(const RootSystem<Rational>& rs, const Multiplicity<Rational>& k,
                                                        std::size_t orbit, const Vec<Rational>& lambda, int max_degree) {
  const DunklOperators<Rational> Tk(rs, k);
  const Multiplicity<Rational> k1 = k.plus_one(orbit);
  const Intertwiner<Rational> Vk(DunklOperators<Rational>(rs, k)), Vk1(DunklOperators<Rational>(rs, k1));
  const Poly<Rational> pi = Tk.orbit_product(orbit);
  const int d = pi.degree();
  const Rational c = Tk.pairing(pi, pi);
  const Rational pi_l = pi.evaluate<Rational>(lambda);
  auto averaged = [&](const Intertwiner<Rational>& V, int m) {
    const Poly<Rational> t = V.series_term(lambda, m);
    Poly<Rational> s(rs.dim());
    for (const auto& g : rs.group()) s += group_act(g, t);
    return s * (Rational(1) / Rational(static_cast<long>(rs.group().size())));
  };
  std::vector<Poly<Rational>> out;
  for (int m = 0; m <= max_degree; ++m) {
    const Poly<Rational> lhs = averaged(Vk1, m) * (pi_l * pi_l);
    const Poly<Rational> rhs = Tk.shift(orbit, false, averaged(Vk, m + 2 * d)) * c;
    out.push_back(lhs - rhs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smooth-function intertwiners in rank one.

/// V_k f = (c_k/c_0)E_k(|λ|^{−2k}D_0 f) and W_k f = (c_0/c_k)E_0(|λ|^{2k}D_k f).
class SmoothIntertwiner {
 public:
  explicit SmoothIntertwiner(double k, QuadratureSpec spec = transform_quadrature()) : k_(k), spec_(spec) {}

  double k() const { return k_; }

  std::vector<QuadResult> vk(const SampledFunction& f, const std::vector<double>& xs) const {
    RankOneTransform t0(0, spec_);
    const auto s = t0.spectrum(f, 0, max_abs_x(xs));
    return spectral_synthesis(s, k_, 0, 1 / t0.c_k(), xs);
  }

  std::vector<QuadResult> wk(const SampledFunction& f, const std::vector<double>& xs) const {
    RankOneTransform tk(k_, spec_);
    const auto s = tk.spectrum(f, 2 * k_, max_abs_x(xs));
    return spectral_synthesis(s, 0, 2 * k_, 1 / tk.c_k(), xs);
  }

  /// V_k(W_k f), with D_0(W_k f) = (c_0/c_k)|λ|^{2k}D_k f handed over in the spectral domain.
  std::vector<QuadResult> vk_after_wk(const SampledFunction& f, const std::vector<double>& xs) const {
    return inversion_round_trip(k_, f, xs, spec_);
  }

  /// W_k(V_k f), with D_k(V_k f) = (c_k/c_0)|λ|^{−2k}D_0 f handed over in the spectral domain.
  std::vector<QuadResult> wk_after_vk(const SampledFunction& f, const std::vector<double>& xs) const {
    return inversion_round_trip(0, f, xs, spec_);
  }

  /// max_x |T(k) V_k f − V_k f′| with T applied by finite differences to V_k f samples.
  double intertwining_residual(const SampledFunction& f, const std::vector<double>& xs, double h = 0.01) const {
    RankOneTransform t0(0, spec_);
    const double reach = max_abs_x(xs) + 4 * h;
    const auto s = t0.spectrum(f, 0, reach);
    const auto sd = t0.spectrum(derivative_of(f), 0, reach);
    auto vf = [&](double x) { return spectral_synthesis(s, k_, 0, 1 / t0.c_k(), {x})[0].value; };
    const auto rhs = spectral_synthesis(sd, k_, 0, 1 / t0.c_k(), xs);
    double worst = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      worst = std::max(worst, std::abs(dunkl_fd(vf, k_, xs[i], h) - rhs[i].value));
    return worst;
  }

 private:
  double k_;
  QuadratureSpec spec_;
};

}  // namespace dunklkit
