#pragma once

// Sparse multivariate polynomials over a coefficient field.
//
// Terms are kept in a map ordered by graded-lexicographic order of the
// exponent vectors; no zero coefficient is ever stored. Serialization walks
// the map from the top, so output is byte-stable.

#include "field.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dunklkit {

using Exponent = std::vector<int>;

struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    if (da != db) return da < db;
    // Higher power of x0 ranks higher.
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (1 - r_alpha) p was not divisible by the linear form alpha*.
class NonDivisible : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// All exponent vectors of total degree n in `dim` variables, ascending grlex.
inline std::vector<Exponent> monomials_of_degree(std::size_t dim, int n) {
  std::vector<Exponent> out;
  Exponent e(dim, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == dim) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
    e[i] = 0;
  };
  if (dim == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, n);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

template <class T, class F>
T coerce(const F& c) {
  if constexpr (std::is_same_v<T, F>) {
    return c;
  } else if constexpr (std::is_same_v<F, Rational>) {
    return T(c.template convert_to<double>());
  } else {
    return T(c);
  }
}

template <class F>
class Poly {
 public:
  using Terms = std::map<Exponent, F, GrlexLess>;
  using Traits = FieldTraits<F>;

  explicit Poly(std::size_t dim = 1) : dim_(dim) {}

  static Poly constant(std::size_t dim, const F& c) {
    Poly p(dim);
    p.add_term(Exponent(dim, 0), c);
    return p;
  }
  static Poly variable(std::size_t dim, std::size_t i) {
    Exponent e(dim, 0);
    e.at(i) = 1;
    return monomial(std::move(e), F(1));
  }
  static Poly monomial(Exponent e, const F& c) {
    Poly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }
  /// x -> sum_i coeffs[i] * x_i
  static Poly linear_form(std::span<const F> coeffs) {
    Poly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponent e(coeffs.size(), 0);
      e[i] = 1;
      p.add_term(std::move(e), coeffs[i]);
    }
    return p;
  }
  /// |x|^2 in `dim` variables.
  static Poly norm_squared(std::size_t dim) {
    Poly p(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      Exponent e(dim, 0);
      e[i] = 2;
      p.add_term(std::move(e), F(1));
    }
    return p;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

  F coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? F(0) : it->second;
  }
  F constant_term() const { return coefficient(Exponent(dim_, 0)); }

  void add_term(Exponent e, const F& c) {
    if (e.size() != dim_) throw DimensionMismatch("exponent length does not match dimension");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly homogeneous_component(int n) const {
    Poly out(dim_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == n) out.terms_.emplace_hint(out.terms_.end(), e, c);
    return out;
  }
  std::vector<Poly> homogeneous_components() const {
    std::vector<Poly> out(std::max(degree() + 1, 0), Poly(dim_));
    for (const auto& [e, c] : terms_) out[total_degree(e)].terms_.emplace_hint(out[total_degree(e)].terms_.end(), e, c);
    return out;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
  }

  Poly& operator+=(const Poly& q) {
    check_dim(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& q) {
    check_dim(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const F& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_dim(b);
    Poly out(a.dim_);
    Exponent e(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  Poly pow(int n) const {
    Poly r = constant(dim_, F(1));
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
  }

  Poly partial(std::size_t i) const {
    Poly out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      out.add_term(std::move(f), c * Traits::from_int(e[i]));
    }
    return out;
  }

  /// Unnormalized directional derivative d/dxi.
  Poly dir_derivative(std::span<const F> xi) const {
    if (xi.size() != dim_) throw DimensionMismatch("direction has wrong dimension");
    Poly out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      if (!Traits::is_zero(xi[i])) out += partial(i) * xi[i];
    return out;
  }

  /// x -> p(A x).
  Poly substitute(const Matrix<F>& a) const {
    if (a.rows != dim_ || a.cols != dim_) throw DimensionMismatch("substitution matrix shape");
    if (auto perm = signed_permutation(a)) return substitute_signed_permutation(*perm);
    // (A x)_i as linear forms, then expand powers with caching.
    std::vector<std::vector<Poly>> powers(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      std::vector<F> row(a.data.begin() + i * dim_, a.data.begin() + (i + 1) * dim_);
      powers[i].push_back(constant(dim_, F(1)));
      powers[i].push_back(linear_form(row));
    }
    auto power = [&](std::size_t i, int n) -> const Poly& {
      while (static_cast<int>(powers[i].size()) <= n) powers[i].push_back(powers[i].back() * powers[i][1]);
      return powers[i][n];
    };
    Poly out(dim_);
    for (const auto& [e, c] : terms_) {
      Poly t = constant(dim_, c);
      for (std::size_t i = 0; i < dim_; ++i)
        if (e[i] > 0) t = t * power(i, e[i]);
      out += t;
    }
    return out;
  }

  /// Exact quotient by the linear form x -> (alpha, x). Throws NonDivisible
  /// when the remainder does not vanish (relative tolerance for doubles).
  Poly divide_linear(std::span<const F> alpha) const {
    if (alpha.size() != dim_) throw DimensionMismatch("root has wrong dimension");
    std::size_t j = dim_;
    for (std::size_t i = 0; i < dim_; ++i)
      if (!Traits::is_zero(alpha[i])) {
        if constexpr (Traits::exact) {
          j = i;
          break;
        } else if (j == dim_ || Traits::magnitude(alpha[i]) > Traits::magnitude(alpha[j])) {
          j = i;
        }
      }
    if (j == dim_) throw std::invalid_argument("division by the zero linear form");
    if (terms_.empty()) return Poly(dim_);
    // Slice by the power of x_j.
    int top = 0;
    for (const auto& [e, c] : terms_) top = std::max(top, e[j]);
    std::vector<Poly> slices(top + 1, Poly(dim_));
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[j] = 0;
      slices[e[j]].add_term(std::move(f), c);
    }
    Poly rest(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      if (i != j && !Traits::is_zero(alpha[i])) rest += variable(dim_, i) * alpha[i];
    const F inv = F(1) / alpha[j];
    std::vector<Poly> q(top + 1, Poly(dim_));  // q[e] multiplies x_j^e
    for (int e = top; e >= 1; --e) {
      Poly num = slices[e];
      if (e < top) num -= rest * q[e];
      q[e - 1] = num * inv;
    }
    Poly remainder = slices[0] - rest * q[0];
    if constexpr (Traits::exact) {
      if (!remainder.is_zero()) throw NonDivisible("polynomial not divisible by linear form");
    } else {
      if (remainder.max_abs() > 1e-9 * std::max(1.0, max_abs())) throw NonDivisible("polynomial not divisible by linear form");
    }
    Poly out(dim_);
    for (int e = 0; e < top; ++e)
      for (const auto& [ex, c] : q[e].terms_) {
        Exponent f = ex;
        f[j] = e;
        out.add_term(std::move(f), c);
      }
    if constexpr (!Traits::exact) out.prune(1e-15 * std::max(1.0, out.max_abs()));
    return out;
  }

  template <class T>
  T evaluate(std::span<const T> z) const {
    if (z.size() != dim_) throw DimensionMismatch("evaluation point has wrong dimension");
    const int d = std::max(degree(), 0);
    std::vector<std::vector<T>> pw(dim_, std::vector<T>(d + 1, T(1)));
    for (std::size_t i = 0; i < dim_; ++i)
      for (int n = 1; n <= d; ++n) pw[i][n] = pw[i][n - 1] * z[i];
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T t = coerce<T>(c);
      for (std::size_t i = 0; i < dim_; ++i)
        if (e[i]) t = t * pw[i][e[i]];
      acc = acc + t;
    }
    return acc;
  }
  template <class T>
  T evaluate(const std::vector<T>& z) const {
    return evaluate<T>(std::span<const T>(z));
  }

  double max_abs() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

  /// Drops coefficients of magnitude <= tol (a no-op for exact fields with tol 0).
  void prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = Traits::magnitude(it->second) <= tol ? terms_.erase(it) : std::next(it);
  }

  /// Changes the coefficient field.
  template <class G>
  Poly<G> convert() const {
    Poly<G> out(dim_);
    for (const auto& [e, c] : terms_) {
      if constexpr (std::is_same_v<G, F>) {
        out.add_term(e, c);
      } else {
        out.add_term(e, coerce<G>(c));
      }
    }
    return out;
  }

 private:
  void check_dim(const Poly& q) const {
    if (q.dim_ != dim_) throw DimensionMismatch("polynomial dimensions differ");
  }

  // perm[i] = (j, sign) when row i of A is sign * e_j.
  static std::optional<std::vector<std::pair<std::size_t, int>>> signed_permutation(const Matrix<F>& a) {
    std::vector<std::pair<std::size_t, int>> perm(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
      int count = 0;
      for (std::size_t j = 0; j < a.cols; ++j) {
        const F& v = a(i, j);
        if (Traits::is_zero(v)) continue;
        if (v == F(1)) {
          perm[i] = {j, 1};
        } else if (v == F(-1)) {
          perm[i] = {j, -1};
        } else {
          return std::nullopt;
        }
        ++count;
      }
      if (count != 1) return std::nullopt;
    }
    return perm;
  }

  Poly substitute_signed_permutation(const std::vector<std::pair<std::size_t, int>>& perm) const {
    Poly out(dim_);
    Exponent f(dim_);
    for (const auto& [e, c] : terms_) {
      std::fill(f.begin(), f.end(), 0);
      int sign = 1;
      for (std::size_t i = 0; i < dim_; ++i) {
        f[perm[i].first] += e[i];
        if (perm[i].second < 0 && (e[i] & 1)) sign = -sign;
      }
      out.add_term(f, sign > 0 ? c : F(-c));
    }
    return out;
  }

  std::size_t dim_;
  Terms terms_;
};

/// p(M z) for a rectangular M with M.rows == p.dim(); the result lives in
/// M.cols variables.
template <class F>
Poly<F> compose_linear(const Poly<F>& p, const Matrix<F>& m) {
  if (m.rows != p.dim()) throw DimensionMismatch("composition matrix shape");
  const std::size_t out_dim = m.cols;
  std::vector<std::vector<Poly<F>>> powers(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    std::vector<F> row(m.data.begin() + i * out_dim, m.data.begin() + (i + 1) * out_dim);
    powers[i].push_back(Poly<F>::constant(out_dim, F(1)));
    powers[i].push_back(Poly<F>::linear_form(row));
  }
  auto power = [&](std::size_t i, int n) -> const Poly<F>& {
    while (static_cast<int>(powers[i].size()) <= n) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][n];
  };
  Poly<F> out(out_dim);
  for (const auto& [e, c] : p.terms()) {
    Poly<F> t = Poly<F>::constant(out_dim, c);
    for (std::size_t i = 0; i < p.dim(); ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    out += t;
  }
  return out;
}

// ---- text serialization -------------------------------------------------

template <class F>
std::string to_text(const Poly<F>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    F mag = c;
    const bool neg = c < 0;
    if (neg) mag = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += FieldTraits<F>::str(mag);
    } else if (mag == F(1)) {
      out += mono;
    } else {
      out += FieldTraits<F>::str(mag) + "*" + mono;
    }
  }
  return out;
}

namespace detail {

template <class F>
class PolyParser {
 public:
  PolyParser(std::string_view s, std::size_t dim) : s_(s), dim_(dim) {}

  Poly<F> parse() {
    Poly<F> p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly<F> expr() {
    Poly<F> acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }
  Poly<F> term() {
    Poly<F> acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        Poly<F> d = factor();
        if (d.degree() > 0 || d.is_zero()) fail("division only by nonzero constants");
        acc = acc * (F(1) / d.constant_term());
      } else {
        return acc;
      }
    }
  }
  Poly<F> factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Poly<F> base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  Poly<F> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<F> p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
              ((s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-')) ||
              ((s_[pos_] == '-') && pos_ > start && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
        ++pos_;
      Rational r = parse_rational(s_.substr(start, pos_ - start));
      return Poly<F>::constant(dim_, FieldTraits<F>::from_rational(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      std::size_t idx = dim_;
      if (name.size() > 1 && name[0] == 'x') {
        idx = std::stoul(name.substr(1));
      } else if (name == "x") {
        idx = 0;
      } else if (name == "y") {
        idx = 1;
      } else if (name == "z") {
        idx = 2;
      }
      if (idx >= dim_) fail("unknown variable '" + name + "'");
      return Poly<F>::variable(dim_, idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "3/2*x0^2*x1 - x1 + 1" (x, y, z are accepted for x0, x1, x2).
template <class F = Rational>
Poly<F> parse_poly(std::string_view text, std::size_t dim) {
  return detail::PolyParser<F>(text, dim).parse();
}

}  // namespace dunklkit
