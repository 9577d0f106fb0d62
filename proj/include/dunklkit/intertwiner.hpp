#pragma once

// Dunkl's intertwining operator V_k, its inverse W_k, and the kernel series
// Exp(λ,k,x) = Σ_n V_k((λ,·)^n/n!)(x).
//
// V_k is solved degree by degree from T_ξ V_k = V_k ∂_ξ: for each monomial x^a
// of degree n the unknown V_k(x^a) must satisfy T_i V_k(x^a) = a_i V_k(x^{a-e_i})
// for every coordinate i. The stacked system is over-determined; its
// consistency and full rank are checked, and failure means k is singular.

#include "dunkl_ops.hpp"
#include "linalg.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <type_traits>

#include <quadmath.h>
#include <string>
#include <vector>

namespace dunklkit {

class SingularMultiplicity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::map<Exponent, std::size_t> index_of(const std::vector<Exponent>& basis) {
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
  return idx;
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace detail

template <class F>
class Intertwiner {
 public:
  explicit Intertwiner(DunklOperators<F> ops) : ops_(std::move(ops)) {}

  const DunklOperators<F>& operators() const { return ops_; }

  Poly<F> vk(const Poly<F>& p) const {
    Poly<F> out(dim());
    for (const auto& [e, c] : p.terms()) out += monomial_image(e) * c;
    return out;
  }

  /// W_k via the Euler identity n·W p = Σ_i x_i W(T_i p) on 𝒫_n, W 1 = 1.
  Poly<F> wk(const Poly<F>& p) const {
    Poly<F> out(dim());
    for (const auto& [e, c] : p.terms()) out += wk_monomial(e) * c;
    return out;
  }

  /// V_k((λ,·)^n / n!) = Σ_{|a|=n} λ^a/a! V_k(x^a).
  Poly<F> series_term(const Vec<F>& lambda, int n) const {
    const auto& table = degree_table(n);
    const auto basis = monomials_of_degree(dim(), n);
    Poly<F> out(dim());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      F c(1);
      for (std::size_t i = 0; i < dim(); ++i) {
        for (int t = 0; t < basis[j][i]; ++t) c *= lambda[i];
        c /= FieldTraits<F>::from_rational(factorial_q(basis[j][i]));
      }
      if (!FieldTraits<F>::is_zero(c)) out += table[j] * c;
    }
    return out;
  }

  /// Partial sum S_N = Σ_{n ≤ N} V_k((λ,·)^n/n!).
  Poly<F> series(const Vec<F>& lambda, int n_max) const {
    Poly<F> out(dim());
    for (int n = 0; n <= n_max; ++n) out += series_term(lambda, n);
    return out;
  }

  /// V_k(x^a) for the monomials of degree n, in ascending grlex order.
  const std::vector<Poly<F>>& degree_table(int n) const {
    std::lock_guard lock(mu_);
    return table_locked(n);
  }

 private:
  std::size_t dim() const { return ops_.dim(); }

  Poly<F> monomial_image(const Exponent& e) const {
    const int n = total_degree(e);
    const auto& table = degree_table(n);
    const auto basis = monomials_of_degree(dim(), n);
    auto it = std::lower_bound(basis.begin(), basis.end(), e, GrlexLess{});
    return table[static_cast<std::size_t>(it - basis.begin())];
  }

  const std::vector<Poly<F>>& table_locked(int n) const {
    if (auto it = tables_.find(n); it != tables_.end()) return it->second;
    if (n == 0) return tables_.emplace(0, std::vector<Poly<F>>{Poly<F>::constant(dim(), F(1))}).first->second;
    const auto& prev = table_locked(n - 1);
    const auto cols = monomials_of_degree(dim(), n);
    const auto rows = monomials_of_degree(dim(), n - 1);
    const auto row_idx = detail::index_of(rows);
    const std::size_t D = dim(), R = rows.size(), C = cols.size();
    Matrix<F> a(D * R, C), b(D * R, C);
    for (std::size_t j = 0; j < C; ++j)
      for (std::size_t i = 0; i < D; ++i) {
        Poly<F> img = ops_.apply_coordinate(i, Poly<F>::monomial(cols[j], F(1)));
        for (const auto& [e, c] : img.terms()) a(i * R + row_idx.at(e), j) = c;
        if (cols[j][i] == 0) continue;
        Exponent lower = cols[j];
        --lower[i];
        auto pos = std::lower_bound(rows.begin(), rows.end(), lower, GrlexLess{}) - rows.begin();
        for (const auto& [e, c] : prev[pos].terms())
          b(i * R + row_idx.at(e), j) += c * FieldTraits<F>::from_int(cols[j][i]);
      }
    Matrix<F> x;
    try {
      x = solve_stacked(std::move(a), std::move(b));
    } catch (const InconsistentSystem& err) {
      throw SingularMultiplicity(std::string("intertwiner solve failed at degree ") + std::to_string(n) + ": " +
                                 err.what());
    }
    std::vector<Poly<F>> out(C, Poly<F>(D));
    for (std::size_t j = 0; j < C; ++j)
      for (std::size_t r = 0; r < C; ++r) out[j].add_term(cols[r], x(r, j));
    return tables_.emplace(n, std::move(out)).first->second;
  }

  Poly<F> wk_monomial(const Exponent& e) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = w_cache_.find(e); it != w_cache_.end()) return it->second;
    }
    const int n = total_degree(e);
    Poly<F> out(dim());
    if (n == 0) {
      out = Poly<F>::constant(dim(), F(1));
    } else {
      const Poly<F> m = Poly<F>::monomial(e, F(1));
      for (std::size_t i = 0; i < dim(); ++i)
        out += Poly<F>::variable(dim(), i) * wk(ops_.apply_coordinate(i, m));
      out *= F(1) / F(n);
    }
    std::lock_guard lock(mu_);
    return w_cache_.emplace(e, std::move(out)).first->second;
  }

  DunklOperators<F> ops_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<Poly<F>>> tables_;
  mutable std::map<Exponent, Poly<F>> w_cache_;
};

/// Numeric Dunkl kernel by series.
///
/// Work happens in orthonormal coordinates y = L x on the root span, in the
/// basis b_a = y^a/√a!, where each reflection acts orthogonally on every
/// degree. On degree n the Euler identity Σ_i x_i T_i = n + Σ_{α>0} k_α(1 − r_α)
/// turns T_ξ V = V ∂_ξ into the square system
///   (n + Σ k_α(1 − R_α)) V(b_a) = Σ_j y_j V(∂_j b_a),
/// which is symmetric positive definite for real k ≥ 0. The component of λ
/// orthogonal to the roots factors out as an ordinary exponential.
template <class F>
class KernelSeries {
 public:
  static constexpr int kMaxTerms = 250;

  KernelSeries(const RootSystem<F>& rs, const Multiplicity<F>& k) {
    build_coordinates(rs);
    for (auto r : rs.positive()) {
      const double kr = FieldTraits<F>::to_double(rs.k_of(k, r));
      if (kr == 0) continue;
      Reflection refl;
      refl.k = kr;
      refl.m = reflection_in_coordinates(rs.roots()[r]);
      refl.powers.push_back({Quad(1)});
      reflections_.push_back(std::move(refl));
    }
    // Reserved so that growing the tables never moves finished degrees.
    bases_.reserve(kMaxTerms + 1);
    tables_.reserve(kMaxTerms + 1);
    for (auto& refl : reflections_) refl.powers.reserve(kMaxTerms + 1);
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }

  static int default_terms(double lambda_norm, double x_norm) {
    return std::max(40, static_cast<int>(std::ceil(8.0 * lambda_norm * x_norm)));
  }

  /// Exp(λ, k, x); n_max < 0 selects the default truncation. The error
  /// estimate is the exponential majorant Σ_{n>N} (|λ||x|)^n/n!, which bounds
  /// the tail whenever V_k is positive (real k ≥ 0).
  KernelValue exp(const std::vector<Complex>& lambda, const std::vector<double>& x, int n_max = -1) const {
    if (lambda.size() != dim() || x.size() != dim()) throw DimensionMismatch("kernel argument dimension");
    double ln = 0, xn = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      ln += std::norm(lambda[i]);
      xn += x[i] * x[i];
    }
    ln = std::sqrt(ln);
    xn = std::sqrt(xn);
    const int N = n_max < 0 ? default_terms(ln, xn) : n_max;
    if (N > kMaxTerms) throw std::invalid_argument("series truncation exceeds the supported maximum");
    std::vector<Complex> mu(rank_, Complex(0));
    std::vector<double> y(rank_, 0.0);
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t i = 0; i < dim(); ++i) {
        mu[j] += lmat_[j * dim() + i] * lambda[i];
        y[j] += lmat_[j * dim() + i] * x[i];
      }
    Complex perp(0);
    for (std::size_t i = 0; i < dim(); ++i) {
      Complex li = lambda[i];
      for (std::size_t j = 0; j < rank_; ++j) li -= lmat_[j * dim() + i] * mu[j];
      perp += li * x[i];
    }
    {
      std::lock_guard lock(mu_lock_);
      ensure(N);
    }
    Complex sum(0);
    for (int n = 0; n <= N; ++n) {
      const auto& basis = bases_[n];
      const auto& tab = tables_[n];
      const std::size_t C = basis.size();
      // (μ,y)^n/n! = Σ_a (μ^a/√a!) b_a(y)
      std::vector<double> yb(C);
      std::vector<Complex> mua(C);
      for (std::size_t b = 0; b < C; ++b) {
        double v = 1;
        Complex w(1);
        for (std::size_t j = 0; j < rank_; ++j)
          for (int t = 0; t < basis[b][j]; ++t) {
            const double s = std::sqrt(static_cast<double>(t + 1));
            v *= y[j] / s;
            w *= mu[j] / s;
          }
        yb[b] = v;
        mua[b] = w;
      }
      Complex term(0);
      for (std::size_t a = 0; a < C; ++a) {
        double s = 0;
        for (std::size_t b = 0; b < C; ++b) s += tab[b * C + a] * yb[b];
        term += mua[a] * s;
      }
      sum += term;
    }
    KernelValue kv;
    kv.value = std::exp(perp) * sum;
    kv.terms = N;
    kv.method = "series";
    kv.abs_error_estimate = std::abs(std::exp(perp)) * exponential_tail(ln * xn, N);
    return kv;
  }

  /// Orthonormal coordinates y = L x of the root span, row-major rank × dim.
  const std::vector<double>& coordinates() const { return lmat_; }

  /// Exponents of degree n in table order; b_a(y) = y^a/√a!.
  std::vector<Exponent> basis(int n) const {
    std::lock_guard lock(mu_lock_);
    ensure(n);
    return bases_[n];
  }

  /// Σ_n Σ_{a,b} (μ^a/√a!) V[b,a] m_n[b] with μ = Lλ, for moments m_n[b] = ∫ b_b(y) dν
  /// of a measure ν on the root span; this is ∫ Exp(λ, k, ·) dν truncated at degree
  /// moments.size() − 1.
  Complex contract(const std::vector<Complex>& lambda, const std::vector<std::vector<Complex>>& moments) const {
    if (lambda.size() != dim()) throw DimensionMismatch("kernel argument dimension");
    const int N = static_cast<int>(moments.size()) - 1;
    if (N > kMaxTerms) throw std::invalid_argument("series truncation exceeds the supported maximum");
    std::vector<Complex> mu(rank_, Complex(0));
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t i = 0; i < dim(); ++i) mu[j] += lmat_[j * dim() + i] * lambda[i];
    {
      std::lock_guard lock(mu_lock_);
      ensure(N);
    }
    Complex sum(0);
    for (int n = 0; n <= N; ++n) {
      const auto& basis = bases_[n];
      const auto& tab = tables_[n];
      const std::size_t C = basis.size();
      if (moments[n].size() != C) throw DimensionMismatch("moment count does not match the degree basis");
      for (std::size_t a = 0; a < C; ++a) {
        Complex w(1);
        for (std::size_t j = 0; j < rank_; ++j)
          for (int t = 0; t < basis[a][j]; ++t) w *= mu[j] / std::sqrt(static_cast<double>(t + 1));
        Complex s(0);
        for (std::size_t b = 0; b < C; ++b) s += tab[b * C + a] * moments[n][b];
        sum += w * s;
      }
    }
    return sum;
  }

  /// Σ_{n>N} t^n/n!.
  static double exponential_tail(double t, int N) {
    double term = 1, sum = 0;
    for (int n = 1; n <= N; ++n) term *= t / n;
    for (int n = N + 1; n < N + 400; ++n) {
      term *= t / n;
      sum += term;
      if (term < 1e-18 * sum || term == 0) break;
    }
    return sum;
  }

 private:
  using Quad = __float128;

  struct Reflection {
    double k = 0;
    std::vector<Quad> m;  // rank × rank, orthogonal
    // powers[n][b*C + a]: coefficient of b_b in b_a(M y).
    std::vector<std::vector<Quad>> powers;
  };

  void build_coordinates(const RootSystem<F>& rs) {
    dim_ = rs.dim();
    std::vector<std::vector<Quad>> rows;
    for (const auto& comp : rs.components()) {
      const bool sum_zero = (comp.tag.rfind("a", 0) == 0 && comp.dim > 1) ||
                            ((comp.tag == "i2:3" || comp.tag == "i2:6") && comp.dim == 3);
      if (sum_zero) {
        // Helmert rows: orthogonal, spanning the sum-zero hyperplane.
        for (std::size_t j = 0; j + 1 < comp.dim; ++j) {
          std::vector<Quad> r(dim_, Quad(0));
          for (std::size_t i = 0; i <= j; ++i) r[comp.offset + i] = 1;
          r[comp.offset + j + 1] = -Quad(static_cast<double>(j + 1));
          rows.push_back(r);
        }
      } else {
        for (std::size_t j = 0; j < comp.dim; ++j) {
          std::vector<Quad> r(dim_, Quad(0));
          r[comp.offset + j] = 1;
          rows.push_back(r);
        }
      }
    }
    rank_ = rows.size();
    lquad_.assign(rank_ * dim_, Quad(0));
    lmat_.assign(rank_ * dim_, 0.0);
    for (std::size_t j = 0; j < rank_; ++j) {
      Quad nrm = 0;
      for (auto v : rows[j]) nrm += v * v;
      nrm = sqrtq(nrm);
      for (std::size_t i = 0; i < dim_; ++i) {
        lquad_[j * dim_ + i] = rows[j][i] / nrm;
        lmat_[j * dim_ + i] = static_cast<double>(lquad_[j * dim_ + i]);
      }
    }
  }

  // M = L r_α Lᵀ.
  std::vector<Quad> reflection_in_coordinates(const Vec<F>& root) const {
    std::vector<Quad> alpha(dim_);
    Quad a2 = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      alpha[i] = to_quad(root[i]);
      a2 += alpha[i] * alpha[i];
    }
    std::vector<Quad> la(rank_, Quad(0));
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) la[j] += lquad_[j * dim_ + i] * alpha[i];
    std::vector<Quad> m(rank_ * rank_);
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t l = 0; l < rank_; ++l) m[j * rank_ + l] = (j == l ? Quad(1) : Quad(0)) - 2 * la[j] * la[l] / a2;
    return m;
  }

  static Quad to_quad(const F& v) {
    if constexpr (std::is_same_v<F, Rational>) {
      return Quad(static_cast<double>(numerator(v))) / Quad(static_cast<double>(denominator(v)));
    } else {
      return Quad(FieldTraits<F>::to_double(v));
    }
  }

  // Degree-n action of a reflection, built from degree n − 1 by one linear factor.
  void extend_powers(Reflection& refl, int n, const std::map<Exponent, std::size_t>& idx) const {
    const auto& rows = bases_[n - 1];
    const auto& cols = bases_[n];
    const std::size_t R = rows.size(), C = cols.size();
    const auto& prev = refl.powers[n - 1];
    std::vector<Quad> cur(C * C, Quad(0));
    for (std::size_t a = 0; a < C; ++a) {
      std::size_t j = 0;
      while (cols[a][j] == 0) ++j;
      Exponent lower = cols[a];
      --lower[j];
      const std::size_t pa = idx_prev_.at(lower);
      const Quad inv = 1 / sqrtq(Quad(static_cast<double>(cols[a][j])));
      for (std::size_t c = 0; c < R; ++c) {
        const Quad v = prev[c * R + pa];
        if (v == 0) continue;
        for (std::size_t m = 0; m < rank_; ++m) {
          const Quad mm = refl.m[j * rank_ + m];
          if (mm == 0) continue;
          Exponent up = rows[c];
          ++up[m];
          cur[idx.at(up) * C + a] += v * mm * sqrtq(Quad(static_cast<double>(up[m]))) * inv;
        }
      }
    }
    refl.powers.push_back(std::move(cur));
  }

  // Tables up to degree N; caller holds mu_lock_.
  void ensure(int N) const {
    while (static_cast<int>(tables_.size()) <= N) {
      const int n = static_cast<int>(tables_.size());
      auto cols = monomials_of_degree(rank_, n);
      if (n == 0) {
        bases_.push_back(cols);
        tables_.push_back({1.0});
        idx_prev_ = detail::index_of(bases_[0]);
        continue;
      }
      const auto idx = detail::index_of(cols);
      bases_.push_back(std::move(cols));
      const auto& rows = bases_[n - 1];
      const auto& basis = bases_[n];
      const std::size_t R = rows.size(), C = basis.size();
      for (auto& refl : reflections_) extend_powers(refl, n, idx);
      Matrix<double> a(C, C), rhs(C, C);
      for (std::size_t i = 0; i < C; ++i) a(i, i) = n;
      for (const auto& refl : reflections_) {
        const auto& pw = refl.powers[n];
        for (std::size_t i = 0; i < C; ++i) {
          a(i, i) += refl.k;
          for (std::size_t j = 0; j < C; ++j) a(i, j) -= refl.k * static_cast<double>(pw[i * C + j]);
        }
      }
      // Σ_j y_j V(∂_j b_a), with ∂_j b_a = √a_j b_{a−e_j} and y_j b_c = √(c_j+1) b_{c+e_j}.
      const auto& prev = tables_[n - 1];
      for (std::size_t col = 0; col < C; ++col)
        for (std::size_t j = 0; j < rank_; ++j) {
          if (basis[col][j] == 0) continue;
          Exponent lower = basis[col];
          --lower[j];
          const std::size_t pa = idx_prev_.at(lower);
          const double da = std::sqrt(static_cast<double>(basis[col][j]));
          for (std::size_t c = 0; c < R; ++c) {
            const double v = prev[c * R + pa];
            if (v == 0) continue;
            Exponent up = rows[c];
            ++up[j];
            rhs(idx.at(up), col) += da * v * std::sqrt(static_cast<double>(up[j]));
          }
        }
      Matrix<double> x;
      try {
        x = solve_stacked(std::move(a), std::move(rhs), 1e-12);
      } catch (const InconsistentSystem& err) {
        throw SingularMultiplicity(std::string("kernel table solve failed at degree ") + std::to_string(n) + ": " +
                                   err.what());
      }
      tables_.push_back(std::move(x.data));
      idx_prev_ = idx;
    }
  }

  std::size_t dim_ = 0, rank_ = 0;
  std::vector<Quad> lquad_;
  std::vector<double> lmat_;
  mutable std::vector<Reflection> reflections_;
  mutable std::mutex mu_lock_;
  mutable std::map<Exponent, std::size_t> idx_prev_;
  mutable std::vector<std::vector<Exponent>> bases_;
  mutable std::vector<std::vector<double>> tables_;  // tables_[n][b*C + a] = coeff of b_b in V(b_a)
};

}  // namespace dunklkit
