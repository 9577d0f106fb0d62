#pragma once

// Complex Gamma and Bessel/Hankel functions of real order.
//
// Near the origin (|z| ≤ 20) Bessel functions come from the power series in
// binary128, so the Hankel combination (J_{−ν} − e^{−iνπ}J_ν)/(i sin νπ)
// survives the cancellation near integer ν. Farther out the Hankel asymptotic
// expansions are summed to their smallest term.

#include "field.hpp"

#include <array>
#include <optional>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <quadmath.h>

namespace dunklkit {

class IntegerOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BesselOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class GammaPole : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kBesselSeriesRadius = 20.0;
inline constexpr double kBesselImagGuard = 700.0;

namespace detail {

using Quad = __float128;
using QComplex = __complex128;

inline QComplex qcomplex(Complex z) {
  QComplex q;
  __real__ q = static_cast<Quad>(z.real());
  __imag__ q = static_cast<Quad>(z.imag());
  return q;
}
inline Complex to_complex(QComplex q) {
  return {static_cast<double>(crealq(q)), static_cast<double>(cimagq(q))};
}

// Lanczos approximation, g = 7, nine terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// A(z) with Γ(z+1) = √(2π) t^{z+1/2} e^{−t} A(z), t = z + g + 1/2.
inline Complex lanczos_sum(Complex z) {
  Complex a(kLanczos[0]);
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  return a;
}

// log(1+u), accurate for small |u|.
inline Complex log1p_complex(Complex u) {
  if (std::abs(u) < 0.5) return 2.0 * std::atanh(u / (2.0 + u));
  return std::log(1.0 + u);
}

inline bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0 && z.real() <= 0 && z.real() == std::round(z.real());
}

inline bool is_integer(double v) { return v == std::round(v); }

}  // namespace detail

/// log Γ(z) on some branch; exp(log_gamma(z)) = Γ(z).
inline Complex log_gamma(Complex z) {
  if (detail::is_nonpositive_integer(z)) throw GammaPole("Gamma pole at " + std::to_string(z.real()));
  if (z.real() < 0.5 && std::abs(z.imag()) > 2) {
    // Γ(z) = Γ(z+n) / (z(z+1)…(z+n−1)); sin(πz) would overflow the reflection here.
    Complex shift(0);
    while (z.real() < 0.5) {
      shift += std::log(z);
      z += 1.0;
    }
    return log_gamma(z) - shift;
  }
  if (z.real() < 0.5) {
    // Γ(z)Γ(1−z) = π / sin(πz)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  const Complex w = z - 1.0;
  const Complex t = w + detail::kLanczosG + 0.5;
  return 0.5 * std::log(2 * kPi) + (w + 0.5) * std::log(t) - t + std::log(detail::lanczos_sum(w));
}

inline Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

/// log(Γ(z+a)/Γ(z)) for real a, without cancellation between two large logs.
inline Complex log_gamma_ratio(Complex z, double a) {
  if (detail::is_nonpositive_integer(z) || detail::is_nonpositive_integer(z + a))
    throw GammaPole("Gamma pole in ratio");
  // Shift both arguments right of 1/2 with the functional equation.
  Complex correction(0);
  while (std::min(z.real(), z.real() + a) < 0.5) {
    correction += std::log(z) - std::log(z + a);
    z += 1.0;
  }
  const Complex w = z - 1.0;
  const Complex t = w + detail::kLanczosG + 0.5;
  // (w + a + 1/2) log(t + a) − (w + 1/2) log t − a
  const Complex main = (w + 0.5) * detail::log1p_complex(a / t) + a * std::log(t + a) - a;
  return correction + main + std::log(detail::lanczos_sum(w + a) / detail::lanczos_sum(w));
}

namespace detail {

// Σ_m (−z²/4)^m / (m! (ν+1)_m), the entire factor Γ(ν+1)(z/2)^{−ν}J_ν(z).
inline QComplex normalized_bessel_series(Quad nu, QComplex z, int* terms = nullptr) {
  const QComplex q = -z * z / 4;
  QComplex term = 1, sum = 1;
  Quad biggest = 1;
  int m = 1;
  for (; m < 1000; ++m) {
    term *= q / (static_cast<Quad>(m) * (nu + m));
    sum += term;
    const Quad t = cabsq(term);
    if (t > biggest) biggest = t;
    if (t < 1e-34 * cabsq(sum) && static_cast<Quad>(m) > cabsq(z)) break;
  }
  if (terms) *terms = m;
  return sum;
}

// Extended-precision variant; empty when cancellation would cost more than four digits.
inline std::optional<Complex> normalized_bessel_series_ld(double nu, Complex z, int* terms) {
  using LC = std::complex<long double>;
  const LC zz(z.real(), z.imag());
  const LC q = -zz * zz / 4.0L;
  LC term = 1, sum = 1;
  long double biggest = 1;
  const long double az2 = std::norm(zz);
  int m = 1;
  for (; m < 1000; ++m) {
    term *= q / (static_cast<long double>(m) * (nu + m));
    sum += term;
    const long double t = std::abs(term);
    if (t > biggest) biggest = t;
    if (t < 1e-21L * std::abs(sum) && static_cast<long double>(m) * m > az2) break;
  }
  if (biggest > 1e4L * std::abs(sum)) return std::nullopt;
  if (terms) *terms = m;
  return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

// J_ν(z) from the series, principal branch, ν not a negative integer.
inline QComplex bessel_series(Quad nu, QComplex z) {
  const QComplex half = z / 2;
  return cpowq(half, nu) / tgammaq(nu + 1) * normalized_bessel_series(nu, z);
}

// Σ_m (±i)^m a_m(ν) / z^m summed to its smallest term; returns the sum and the last term size.
inline std::pair<Complex, double> hankel_asymptotic_sum(double nu, Complex z, int kind) {
  const Complex unit = kind == 1 ? Complex(0, 1) : Complex(0, -1);
  Complex sum(1), term(1);
  double last = 1;
  const double mu = 4 * nu * nu;
  for (int m = 1; m < 80; ++m) {
    const double odd = 2.0 * m - 1;
    Complex next = term * unit * ((mu - odd * odd) / (8.0 * m)) / z;
    const double size = std::abs(next);
    if (size > last && m > 1) break;
    term = next;
    sum += term;
    last = size;
    if (size < 1e-18 * std::abs(sum)) break;
  }
  return {sum, last};
}

// H^{(kind)}_ν(z) for Re z ≥ 0 and large |z|.
inline KernelValue hankel_asymptotic(int kind, double nu, Complex z) {
  const double sign = kind == 1 ? 1.0 : -1.0;
  const Complex omega = z - nu * kPi / 2 - kPi / 4;
  const Complex pref = std::sqrt(2.0 / (kPi * z)) * std::exp(Complex(0, sign) * omega);
  auto [sum, last] = hankel_asymptotic_sum(nu, z, kind);
  KernelValue kv;
  kv.value = pref * sum;
  kv.abs_error_estimate = std::abs(pref) * (last + 1e-16 * std::abs(sum));
  kv.method = "hankel-asymptotic";
  return kv;
}

inline constexpr double kRealSeriesRadius = 10.0;

// Real-axis normalized Bessel: series below kRealSeriesRadius, the library J_ν
// up to kBesselSeriesRadius, and the real Hankel expansion beyond.
inline double normalized_bessel_real(double nu, double x) {
  x = std::abs(x);
  if (x <= kRealSeriesRadius) {
    const long double q = -static_cast<long double>(x) * x / 4;
    long double term = 1, sum = 1;
    for (int m = 1; m < 200; ++m) {
      term *= q / (static_cast<long double>(m) * (nu + m));
      sum += term;
      if (std::fabs(term) < 1e-20L * std::fabs(sum) && m * m > x * x) break;
    }
    return static_cast<double>(sum);
  }
  const double scale = std::exp(std::lgamma(nu + 1) - nu * std::log(x / 2));
  if (x <= kBesselSeriesRadius) {
    if (nu >= 0) return scale * std::cyl_bessel_j(nu, x);
    // J_ν = (2(ν+1)/x)J_{ν+1} − J_{ν+2}
    return scale * (2 * (nu + 1) / x * std::cyl_bessel_j(nu + 1, x) - std::cyl_bessel_j(nu + 2, x));
  }
  // J_ν(x) = √(2/(πx))(P cos χ − Q sin χ), χ = x − νπ/2 − π/4.
  const double mu = 4 * nu * nu;
  double p = 1, q = 0, term = 1, last = 1;
  for (int m = 1; m < 80; ++m) {
    const double odd = 2.0 * m - 1;
    const double next = term * (mu - odd * odd) / (8.0 * m * x);
    if (std::abs(next) > last && m > 1) break;
    term = next;
    last = std::abs(next);
    // terms alternate between Q (odd m) and P (even m) with sign (−1)^{⌊m/2⌋}
    const double signed_term = (m / 2) % 2 ? -term : term;
    (m % 2 ? q : p) += signed_term;
    if (last < 1e-18) break;
  }
  const double chi = x - nu * kPi / 2 - kPi / 4;
  return scale * std::sqrt(2 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline void guard_imaginary(Complex z) {
  if (std::abs(z.imag()) > kBesselImagGuard)
    throw BesselOverflow("|Im z| = " + std::to_string(std::abs(z.imag())) + " exceeds the overflow guard " +
                         std::to_string(kBesselImagGuard));
}

}  // namespace detail

/// Γ(ν+1)(z/2)^{−ν}J_ν(z) = ₀F₁(; ν+1; −z²/4), an even entire function of z; ν > −1.
inline KernelValue normalized_bessel(double nu, Complex z) {
  if (nu <= -1) throw std::invalid_argument("normalized Bessel function needs ν > −1");
  detail::guard_imaginary(z);
  KernelValue kv;
  if (z == Complex(0)) {
    kv.value = 1;
    kv.method = "series";
    return kv;
  }
  if (z.imag() == 0) {
    kv.value = detail::normalized_bessel_real(nu, z.real());
    kv.abs_error_estimate = 1e-15 * std::max(1.0, std::abs(kv.value));
    kv.method = std::abs(z.real()) <= kBesselSeriesRadius ? "series" : "hankel-asymptotic";
    return kv;
  }
  if (std::abs(z) <= kBesselSeriesRadius) {
    int terms = 0;
    if (auto fast = detail::normalized_bessel_series_ld(nu, z, &terms)) {
      kv.value = *fast;
      kv.abs_error_estimate = 1e-16 * std::abs(kv.value);
      kv.method = "series";
      kv.terms = terms;
      return kv;
    }
    kv.value = detail::to_complex(detail::normalized_bessel_series(nu, detail::qcomplex(z), &terms));
    kv.abs_error_estimate = 1e-16 * std::abs(kv.value);
    kv.method = "series";
    kv.terms = terms;
    return kv;
  }
  if (z.real() < 0) z = -z;
  auto h1 = detail::hankel_asymptotic(1, nu, z);
  auto h2 = detail::hankel_asymptotic(2, nu, z);
  const Complex scale = std::exp(std::lgamma(nu + 1) - nu * std::log(z / 2.0));
  kv.value = scale * (h1.value + h2.value) / 2.0;
  kv.abs_error_estimate = std::abs(scale) * (h1.abs_error_estimate + h2.abs_error_estimate) / 2;
  kv.method = "hankel-asymptotic";
  return kv;
}

/// J_ν(z), principal branch (−π < arg z ≤ π).
inline KernelValue bessel_j(double nu, Complex z) {
  detail::guard_imaginary(z);
  if (nu < 0 && detail::is_integer(nu)) {
    KernelValue kv = bessel_j(-nu, z);
    if (static_cast<long>(-nu) % 2) kv.value = -kv.value;
    return kv;
  }
  KernelValue kv;
  if (z == Complex(0)) {
    kv.value = nu == 0 ? 1.0 : 0.0;
    kv.method = "series";
    if (nu < 0) throw std::domain_error("J_ν(0) is infinite for negative non-integer ν");
    return kv;
  }
  if (std::abs(z) <= kBesselSeriesRadius) {
    kv.value = detail::to_complex(detail::bessel_series(nu, detail::qcomplex(z)));
    kv.abs_error_estimate = 1e-16 * std::abs(kv.value) + 1e-300;
    kv.method = "series";
    return kv;
  }
  if (z.real() >= 0) {
    auto h1 = detail::hankel_asymptotic(1, nu, z);
    auto h2 = detail::hankel_asymptotic(2, nu, z);
    kv.value = (h1.value + h2.value) / 2.0;
    kv.abs_error_estimate = (h1.abs_error_estimate + h2.abs_error_estimate) / 2;
    kv.method = "hankel-asymptotic";
    return kv;
  }
  // J_ν(z) = e^{±iνπ} J_ν(−z), the sign following the half-plane of z.
  KernelValue reflected = bessel_j(nu, -z);
  const double s = z.imag() >= 0 ? 1.0 : -1.0;
  reflected.value *= std::exp(Complex(0, s * nu * kPi));
  return reflected;
}

/// H^{(1)}_ν or H^{(2)}_ν for non-integer ν.
inline KernelValue hankel(int kind, double nu, Complex z) {
  if (kind != 1 && kind != 2) throw std::invalid_argument("Hankel kind must be 1 or 2");
  if (detail::is_integer(nu))
    throw IntegerOrder("Hankel function of integer order " + std::to_string(nu) +
                       " is not evaluated directly; perturb k (see hankel_regularized)");
  detail::guard_imaginary(z);
  if (z == Complex(0)) throw std::domain_error("Hankel function is singular at 0");
  if (std::abs(z) > kBesselSeriesRadius && z.real() >= 0) return detail::hankel_asymptotic(kind, nu, z);
  const double sign = kind == 1 ? 1.0 : -1.0;
  KernelValue kv;
  if (std::abs(z) <= kBesselSeriesRadius) {
    using detail::Quad;
    const detail::QComplex zq = detail::qcomplex(z);
    const Quad qnu = static_cast<Quad>(nu);
    const detail::QComplex jm = detail::bessel_series(-qnu, zq);
    const detail::QComplex jp = detail::bessel_series(qnu, zq);
    // H^{(1,2)} = (J_{−ν} − e^{∓iνπ} J_ν) / (±i sin νπ)
    const Quad pi = M_PIq;
    detail::QComplex phase;
    __real__ phase = cosq(qnu * pi);
    __imag__ phase = -sign * sinq(qnu * pi);
    detail::QComplex denom;
    __real__ denom = 0;
    __imag__ denom = sign * sinq(qnu * pi);
    kv.value = detail::to_complex((jm - phase * jp) / denom);
    kv.abs_error_estimate = 1e-15 * std::abs(kv.value);
    kv.method = "series";
    return kv;
  }
  // Left half-plane: the recessive function comes from its own expansion
  // (valid for −π < arg z < 2π, resp. −2π < arg z < π), the dominant one from 2J − H.
  const int recessive = z.imag() >= 0 ? 1 : 2;
  const KernelValue small = detail::hankel_asymptotic(recessive, nu, z);
  if (kind == recessive) return small;
  const KernelValue j = bessel_j(nu, z);
  kv.value = 2.0 * j.value - small.value;
  kv.abs_error_estimate = 2 * j.abs_error_estimate + small.abs_error_estimate;
  kv.method = "hankel-asymptotic";
  return kv;
}

inline constexpr double kIntegerOrderShift = 1e-6;

/// Hankel function at any real order; integer orders are the symmetric mean of ν ± 10⁻⁶,
/// which is the second-order Richardson value at the midpoint.
inline KernelValue hankel_regularized(int kind, double nu, Complex z) {
  if (!detail::is_integer(nu)) return hankel(kind, nu, z);
  const KernelValue lo = hankel(kind, nu - kIntegerOrderShift, z);
  const KernelValue hi = hankel(kind, nu + kIntegerOrderShift, z);
  KernelValue kv;
  kv.value = (lo.value + hi.value) / 2.0;
  kv.abs_error_estimate =
      std::max(lo.abs_error_estimate, hi.abs_error_estimate) + kIntegerOrderShift * std::abs(hi.value - lo.value);
  kv.method = lo.method + "+order-shift";
  return kv;
}

}  // namespace dunklkit
