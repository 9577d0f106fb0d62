#pragma once

// Dunkl operators on polynomials and the identities built on them: the
// k-Laplacian, e^{±Δ/2}, the bilinear pairing, Heckman's formula, operators on
// polynomial·Gaussian products, and restricted shift operators.

#include "poly.hpp"
#include "root_system.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit {

class NotInvariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (g·p)(x) = p(g⁻¹x) = p(gᵀx).
template <class F>
Poly<F> group_act(const GroupElement<F>& g, const Poly<F>& p) {
  return p.substitute(g.matrix.transpose());
}

template <class F>
bool is_invariant(const RootSystem<F>& rs, const Poly<F>& p) {
  for (auto s : rs.simple()) {
    Poly<F> d = p.substitute(reflection_matrix(rs.roots()[s])) - p;
    if constexpr (FieldTraits<F>::exact) {
      if (!d.is_zero()) return false;
    } else {
      if (d.max_abs() > 1e-10 * std::max(1.0, p.max_abs())) return false;
    }
  }
  return true;
}

/// p·e^{-|x|²/2}, carried symbolically.
template <class F>
struct GaussPoly {
  Poly<F> poly;
  friend bool operator==(const GaussPoly& a, const GaussPoly& b) { return a.poly == b.poly; }
};

/// Polynomial with complex coefficients stored as real and imaginary parts.
template <class F>
struct ComplexPoly {
  Poly<F> re;
  Poly<F> im;

  explicit ComplexPoly(std::size_t dim = 1) : re(dim), im(dim) {}
  ComplexPoly(Poly<F> r, Poly<F> i) : re(std::move(r)), im(std::move(i)) {}

  /// Multiplies by i^n.
  ComplexPoly times_i_pow(int n) const {
    switch (((n % 4) + 4) % 4) {
      case 0: return *this;
      case 1: return {-im, re};
      case 2: return {-re, -im};
      default: return {im, -re};
    }
  }
  ComplexPoly& operator+=(const ComplexPoly& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend bool operator==(const ComplexPoly& a, const ComplexPoly& b) { return a.re == b.re && a.im == b.im; }
};

/// Dunkl operators for a fixed root system and multiplicity.
template <class F>
class DunklOperators {
 public:
  DunklOperators(const RootSystem<F>& rs, Multiplicity<F> k) : DunklOperators(rs, std::move(k), rs.positive()) {}

  /// Uses the given positive system instead of the lexicographic one.
  DunklOperators(const RootSystem<F>& rs, Multiplicity<F> k, const std::vector<std::size_t>& positive)
      : rs_(&rs), k_(std::move(k)) {
    if (k_.per_orbit.size() != rs.num_orbits())
      throw std::invalid_argument("multiplicity does not match the orbit count");
    for (auto i : positive) {
      Term t;
      t.root = rs.roots()[i];
      t.reflection = reflection_matrix(t.root);
      t.k = rs.k_of(k_, i);
      t.norm2 = dot(t.root, t.root);
      terms_.push_back(std::move(t));
    }
  }

  const RootSystem<F>& root_system() const { return *rs_; }
  const Multiplicity<F>& multiplicity() const { return k_; }
  std::size_t dim() const { return rs_->dim(); }

  /// T_ξ p = ∂_ξ p + Σ_{α>0} k_α (α,ξ) (p − r_α p)/α*.
  Poly<F> apply(const Vec<F>& xi, const Poly<F>& p) const {
    Poly<F> out = p.dir_derivative(xi);
    for (const auto& t : terms_) {
      if (FieldTraits<F>::is_zero(t.k)) continue;
      const F c = t.k * dot(t.root, xi);
      if (FieldTraits<F>::is_zero(c)) continue;
      out += difference_quotient(t, p) * c;
    }
    return out;
  }

  Poly<F> apply_coordinate(std::size_t i, const Poly<F>& p) const {
    Vec<F> e(dim(), F(0));
    e.at(i) = F(1);
    return apply(e, p);
  }

  /// T_p q, expanding p in monomials and composing coordinate operators.
  Poly<F> apply_poly(const Poly<F>& p, const Poly<F>& q) const {
    std::map<Exponent, Poly<F>> cache;
    cache.emplace(Exponent(dim(), 0), q);
    std::function<const Poly<F>&(const Exponent&)> chain = [&](const Exponent& a) -> const Poly<F>& {
      if (auto it = cache.find(a); it != cache.end()) return it->second;
      std::size_t i = a.size();
      while (a[i - 1] == 0) --i;
      Exponent b = a;
      --b[i - 1];
      Poly<F> v = apply_coordinate(i - 1, chain(b));
      return cache.emplace(a, std::move(v)).first->second;
    };
    Poly<F> out(dim());
    for (const auto& [e, c] : p.terms()) out += chain(e) * c;
    return out;
  }

  Poly<F> laplacian(const Poly<F>& p) const {
    Poly<F> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out += apply_coordinate(i, apply_coordinate(i, p));
    return out;
  }

  /// Δ_0 p + 2 Σ k_α (∂_α p − (|α|²/2)(p − r_α p)/α*)/α*.
  Poly<F> laplacian_explicit(const Poly<F>& p) const {
    Poly<F> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out += p.partial(i).partial(i);
    for (const auto& t : terms_) {
      if (FieldTraits<F>::is_zero(t.k)) continue;
      Poly<F> inner = p.dir_derivative(t.root) - difference_quotient(t, p) * (t.norm2 / F(2));
      out += inner.divide_linear(t.root) * (F(2) * t.k);
    }
    return out;
  }

  /// e^{sign·Δ/2} p, a finite sum since Δ lowers degree by two.
  Poly<F> exp_half_laplacian(int sign, const Poly<F>& p) const {
    Poly<F> out = p;
    Poly<F> term = p;
    const F half = F(sign) / F(2);
    for (int n = 1; !term.is_zero(); ++n) {
      term = laplacian(term) * (half / F(n));
      out += term;
    }
    return out;
  }

  /// (p, q)_k = (T_p q)(0).
  F pairing(const Poly<F>& p, const Poly<F>& q) const { return apply_poly(p, q).constant_term(); }

  /// (1/n!) (ad Δ/2)^n M_p applied to q, p homogeneous of degree n.
  Poly<F> heckman(const Poly<F>& p, const Poly<F>& q) const {
    if (!p.is_homogeneous()) throw std::invalid_argument("Heckman's formula needs a homogeneous p");
    const int n = std::max(p.degree(), 0);
    if (p.is_zero()) return Poly<F>(dim());
    // (ad A)^n B = Σ_j C(n,j) A^{n-j} B (−A)^j
    std::vector<Poly<F>> half_pows{q};
    for (int j = 1; j <= n; ++j) half_pows.push_back(laplacian(half_pows.back()) * (F(1) / F(2)));
    Poly<F> out(dim());
    for (int j = 0; j <= n; ++j) {
      Poly<F> v = p * half_pows[j];
      for (int s = 0; s < n - j; ++s) v = laplacian(v) * (F(1) / F(2));
      F c = FieldTraits<F>::from_rational(binomial_q(Rational(n), j) / factorial_q(n));
      if (j & 1) c = -c;
      out += v * c;
    }
    return out;
  }

  /// T_ξ(fψ) = (T_ξ f − ξ* f)ψ.
  GaussPoly<F> apply(const Vec<F>& xi, const GaussPoly<F>& f) const {
    return {apply(xi, f.poly) - Poly<F>::linear_form(xi) * f.poly};
  }

  GaussPoly<F> apply_poly(const Poly<F>& p, const GaussPoly<F>& f) const {
    GaussPoly<F> out{Poly<F>(dim())};
    std::map<Exponent, Poly<F>> cache;
    cache.emplace(Exponent(dim(), 0), f.poly);
    std::function<const Poly<F>&(const Exponent&)> chain = [&](const Exponent& a) -> const Poly<F>& {
      if (auto it = cache.find(a); it != cache.end()) return it->second;
      std::size_t i = a.size();
      while (a[i - 1] == 0) --i;
      Exponent b = a;
      --b[i - 1];
      Vec<F> e(dim(), F(0));
      e[i - 1] = F(1);
      Poly<F> v = apply(e, GaussPoly<F>{chain(b)}).poly;
      return cache.emplace(a, std::move(v)).first->second;
    };
    for (const auto& [e, c] : p.terms()) out.poly += chain(e) * c;
    return out;
  }

  /// D_k(pψ) = (−i)^n (e^{−Δ/2}p)ψ per homogeneous degree n; E_k uses i^n.
  ComplexPoly<F> transform_poly_gaussian(const ComplexPoly<F>& p, bool inverse) const {
    ComplexPoly<F> out(dim());
    auto comps_re = p.re.homogeneous_components();
    auto comps_im = p.im.homogeneous_components();
    const std::size_t top = std::max(comps_re.size(), comps_im.size());
    for (std::size_t n = 0; n < top; ++n) {
      ComplexPoly<F> c(n < comps_re.size() ? comps_re[n] : Poly<F>(dim()),
                       n < comps_im.size() ? comps_im[n] : Poly<F>(dim()));
      ComplexPoly<F> e(exp_half_laplacian(-1, c.re), exp_half_laplacian(-1, c.im));
      out += e.times_i_pow(inverse ? static_cast<int>(n) : -static_cast<int>(n));
    }
    return out;
  }
  ComplexPoly<F> transform_poly_gaussian(const Poly<F>& p, bool inverse) const {
    return transform_poly_gaussian(ComplexPoly<F>(p, Poly<F>(dim())), inverse);
  }

  /// π_i = Π_{α ∈ S_i ∩ R+} α*.
  Poly<F> orbit_product(std::size_t orbit) const {
    Poly<F> pi = Poly<F>::constant(dim(), F(1));
    for (auto r : rs_->positive_in_orbit(orbit)) pi = pi * Poly<F>::linear_form(rs_->roots()[r]);
    return pi;
  }

  /// Restricted shift operators: lowering q ↦ π_i⁻¹ T_{π_i}(k) q and raising
  /// q ↦ T_{π_i}(k)(π_i q), for G-invariant q.
  Poly<F> shift(std::size_t orbit, bool raise, const Poly<F>& q) const {
    if (!is_invariant(*rs_, q)) throw NotInvariant("shift operators act on G-invariant polynomials only");
    const Poly<F> pi = orbit_product(orbit);
    if (raise) return apply_poly(pi, pi * q);
    Poly<F> v = apply_poly(pi, q);
    for (auto r : rs_->positive_in_orbit(orbit)) v = v.divide_linear(rs_->roots()[r]);
    return v;
  }

 private:
  struct Term {
    Vec<F> root;
    Matrix<F> reflection;
    F k;
    F norm2;
  };

  static Poly<F> difference_quotient(const Term& t, const Poly<F>& p) {
    return (p - p.substitute(t.reflection)).divide_linear(t.root);
  }

  const RootSystem<F>* rs_;
  Multiplicity<F> k_;
  std::vector<Term> terms_;
};

/// Generalized Laguerre polynomial L_q^{(a)}(|x|²/2) as a polynomial in dim variables.
inline Poly<Rational> laguerre_half_norm(std::size_t dim, int q, const Rational& a) {
  // L_q^{(a)}(u) = Σ_j C(q+a, q−j) (−u)^j / j!
  Poly<Rational> u = Poly<Rational>::norm_squared(dim) * Rational(1, 2);
  Poly<Rational> out(dim);
  Poly<Rational> upow = Poly<Rational>::constant(dim, Rational(1));
  for (int j = 0; j <= q; ++j) {
    Rational c = binomial_q(a + q, q - j) / factorial_q(j);
    if (j & 1) c = -c;
    out += upow * c;
    upow = upow * u;
  }
  return out;
}

}  // namespace dunklkit
