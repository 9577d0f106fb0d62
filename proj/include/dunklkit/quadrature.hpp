#pragma once

// Composite Gauss–Legendre quadrature with dyadic grading toward chosen
// points (weight singularities such as |x|^{2k} at 0, or support endpoints),
// and a two-grid error estimate.

#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit {

class QuadratureBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
  int nodes_per_panel = 24;
  double max_panel_width = 0.25;
  /// Two-grid error estimates; off evaluates the coarse rule only.
  bool two_grid = true;
  double target_tol = 1e-10;
  std::size_t node_budget = 4'000'000;
};

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

struct QuadResult {
  Complex value;
  double error = 0;
  std::size_t nodes = 0;
};

/// Gauss–Legendre nodes and weights on [−1, 1], computed once per order.
inline const QuadratureRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("Gauss–Legendre order must be positive");
  QuadratureRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(3.14159265358979323846L * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = z;
      for (int j = 2; j <= n; ++j) {
        long double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      long double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    long double p0 = 1, p1 = z;
    for (int j = 2; j <= n; ++j) {
      long double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1);
    const double w = static_cast<double>(2 / ((1 - z * z) * dp * dp));
    r.x[i] = static_cast<double>(-z);
    r.x[n - 1 - i] = static_cast<double>(z);
    r.w[i] = r.w[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(r)).first->second;
}

namespace detail {

inline void append_panel(QuadratureRule& rule, double a, double b, int n) {
  if (b <= a) return;
  const auto& gl = gauss_legendre(n);
  const double mid = (a + b) / 2, half = (b - a) / 2;
  for (int i = 0; i < n; ++i) {
    rule.x.push_back(mid + half * gl.x[i]);
    rule.w.push_back(half * gl.w[i]);
  }
}

}  // namespace detail

/// A point approached by dyadic panels; levels = 0 only cuts the domain there.
struct GradePoint {
  double at = 0;
  int levels = 0;
};

/// Levels so that the innermost panel at a point with one-sided weight
/// |x − p|^{exponent} contributes below tol; 0 when that weight is analytic.
inline int grading_levels_for(double exponent, double tol) {
  if (exponent >= 0 && std::abs(exponent - std::round(exponent)) < 1e-12) return 0;
  const double e = std::max(exponent + 1, 0.25);
  return std::clamp(static_cast<int>(std::ceil(-std::log2(std::max(tol, 1e-300)) / e)) + 2, 4, 200);
}

/// Composite rule on [a, b]: uniform panels of width ≤ width, with each
/// grading point approached by panels of width h·2^{−j}, j < levels.
inline QuadratureRule composite_rule(double a, double b, const std::vector<GradePoint>& grade_points, double width,
                                     const QuadratureSpec& spec) {
  QuadratureRule rule;
  if (!(b > a)) return rule;
  std::vector<double> cuts{a, b};
  for (const auto& g : grade_points)
    if (g.at > a && g.at < b) cuts.push_back(g.at);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto levels_at = [&](double p) {
    int l = 0;
    for (const auto& g : grade_points)
      if (g.at == p) l = std::max(l, g.levels);
    return l;
  };
  const int n = spec.nodes_per_panel;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    const int l_lo = levels_at(lo), l_hi = levels_at(hi);
    const int n_panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    const double h = (hi - lo) / n_panels;
    for (int i = 0; i < n_panels; ++i) {
      double pa = lo + i * h, pb = lo + (i + 1) * h;
      const int gl = i == 0 ? l_lo : 0, gr = i == n_panels - 1 ? l_hi : 0;
      const double mid = (gl > 0 && gr > 0) ? (pa + pb) / 2 : (gl > 0 ? pb : pa);
      if (gl > 0) {
        const double span = mid - pa;
        for (int j = 0; j < gl; ++j)
          detail::append_panel(rule, pa + span * std::ldexp(1.0, -j - 1), pa + span * std::ldexp(1.0, -j), n);
        detail::append_panel(rule, pa, pa + span * std::ldexp(1.0, -gl), n);
        pa = mid;
      }
      if (gr > 0) {
        const double span = pb - mid;
        for (int j = 0; j < gr; ++j)
          detail::append_panel(rule, pb - span * std::ldexp(1.0, -j), pb - span * std::ldexp(1.0, -j - 1), n);
        detail::append_panel(rule, pb - span * std::ldexp(1.0, -gr), pb, n);
        pb = mid;
      }
      if (pb > pa) detail::append_panel(rule, pa, pb, n);
    }
  }
  if (rule.size() > spec.node_budget)
    throw QuadratureBudgetExceeded("quadrature needs " + std::to_string(rule.size()) + " nodes, budget " +
                                   std::to_string(spec.node_budget));
  return rule;
}

/// Half the panel width and four more levels at every graded point.
inline std::vector<GradePoint> refined_points(std::vector<GradePoint> points) {
  for (auto& g : points)
    if (g.levels > 0) g.levels += 4;
  return points;
}

template <class Fn>
Complex apply_rule(const QuadratureRule& rule, Fn&& f) {
  Complex s(0);
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.w[i] * Complex(f(rule.x[i]));
  return s;
}

/// ∫_a^b f with a two-grid error estimate; width ≤ 0 uses spec.max_panel_width.
template <class Fn>
QuadResult integrate(Fn&& f, double a, double b, const std::vector<GradePoint>& grade_points,
                     const QuadratureSpec& spec, double width = 0) {
  if (!(width > 0)) width = spec.max_panel_width;
  const QuadratureRule coarse = composite_rule(a, b, grade_points, width, spec);
  QuadResult r;
  if (!spec.two_grid) {
    r.value = apply_rule(coarse, f);
    r.nodes = coarse.size();
    return r;
  }
  const QuadratureRule fine = composite_rule(a, b, refined_points(grade_points), width / 2, spec);
  const Complex vc = apply_rule(coarse, f);
  r.value = apply_rule(fine, f);
  r.error = std::abs(r.value - vc);
  r.nodes = coarse.size() + fine.size();
  return r;
}

}  // namespace dunklkit
