#pragma once

// Machine-checkable verification suite. Each check belongs to one acceptance
// criterion (id prefix cNN) and one suite; results come back in registry order
// whatever the worker count, and each check draws from its own seeded stream.

#include "dunkl_ops.hpp"
#include "intertwiner.hpp"
#include "kernels.hpp"
#include "motion_group.hpp"
#include "parallel.hpp"
#include "transform.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit {

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skip";
  }
}

struct CheckResult {
  std::string id;
  std::string suite;
  int criterion = 0;
  CheckStatus status = CheckStatus::skip;
  double residual = 0;
  double tolerance = 0;
  double runtime_ms = 0;
  std::string witness;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
  }
  bool ok() const { return count(CheckStatus::fail) == 0; }
};

/// What a check body reports; status follows from residual ≤ tolerance unless forced.
struct Outcome {
  double residual = 0;
  double tolerance = 0;
  std::string witness;
  bool forced_fail = false;
};

struct CheckDef {
  std::string id;
  std::string suite;
  int criterion = 0;
  std::function<Outcome(std::mt19937_64&)> run;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exact", "numeric", "pw", "motion", "all"};
  return names;
}

namespace verify_detail {

using Q = Rational;
using P = Poly<Rational>;

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Uniform on [lo, hi) from the top 53 bits, independent of the library's distributions.
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline P random_poly(std::mt19937_64& rng, std::size_t dim, int max_degree, int density = 3) {
  P p(dim);
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& e : monomials_of_degree(dim, d))
      if (rng() % density == 0) p.add_term(e, Q(uniform_int(rng, -6, 6), uniform_int(rng, 1, 5)));
  return p;
}

inline P random_homogeneous(std::mt19937_64& rng, std::size_t dim, int degree) {
  P p = random_poly(rng, dim, degree, 2).homogeneous_component(degree);
  if (p.is_zero()) {
    Exponent e(dim, 0);
    e[0] = degree;
    p = P::monomial(e, Q(1));
  }
  return p;
}

inline Multiplicity<Q> random_k(std::mt19937_64& rng, const RootSystem<Q>& rs) {
  std::vector<Q> v;
  for (std::size_t i = 0; i < rs.num_orbits(); ++i) v.push_back(Q(uniform_int(rng, 0, 9), uniform_int(rng, 1, 4)));
  return rs.multiplicity(v);
}

inline std::string k_text(const Multiplicity<Q>& k) {
  std::string s;
  for (const auto& v : k.per_orbit) s += (s.empty() ? "" : ",") + to_string(v);
  return s;
}

inline Vec<Q> unit(std::size_t dim, std::size_t i) {
  Vec<Q> e(dim, Q(0));
  e[i] = 1;
  return e;
}

/// Largest |coefficient|, 0 exactly when the polynomial is zero.
inline double size_of(const P& p) {
  double m = 0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c.convert_to<double>()));
  return m;
}

/// Accumulates exact residuals; the first non-zero one becomes the witness.
struct ExactTally {
  double residual = 0;
  std::string witness;
  void add(const P& r, const std::string& where) {
    const double s = size_of(r);
    if (s > 0 && witness.empty()) witness = where + ": " + to_text(r);
    residual = std::max(residual, s);
  }
  Outcome outcome() const { return {residual, 0, witness}; }
};

/// Keeps the largest residual and its location.
struct NumericTally {
  double residual = 0;
  double tolerance = 0;
  std::string witness;
  explicit NumericTally(double tol) : tolerance(tol) {}
  void add(double r, const std::string& where) {
    if (!(r <= residual)) {
      residual = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
      witness = where;
    }
  }
  Outcome outcome() const { return {residual, tolerance, witness}; }
};

/// Short labels for ids and witnesses; report fields keep full precision.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
inline std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; }

const std::vector<const char*> kGroups{"z2", "a1xa1", "a2", "b2"};

// --- criterion 1 --------------------------------------------------------------

inline Outcome commutativity(std::mt19937_64& rng, const char* tag) {
  const auto rs = RootSystem<Q>::build(tag);
  ExactTally t;
  for (int trial = 0; trial < 5; ++trial) {
    const auto k = random_k(rng, rs);
    const DunklOperators<Q> T(rs, k);
    const P p = random_poly(rng, rs.dim(), 8, rs.dim() > 2 ? 6 : 3);
    for (std::size_t i = 0; i < rs.dim(); ++i)
      for (std::size_t j = i; j < rs.dim(); ++j) {
        const auto xi = unit(rs.dim(), i), eta = unit(rs.dim(), j);
        t.add(T.apply(xi, T.apply(eta, p)) - T.apply(eta, T.apply(xi, p)),
              std::string(tag) + " k=" + k_text(k) + " pair " + std::to_string(i) + std::to_string(j));
      }
  }
  return t.outcome();
}

// --- criterion 2 --------------------------------------------------------------

/// Runs body(T, k, tag) on every group at a random multiplicity.
inline Outcome over_groups(std::mt19937_64& rng,
                           const std::function<void(const DunklOperators<Q>&, const std::string&, ExactTally&)>& body) {
  ExactTally t;
  for (const char* tag : kGroups) {
    const auto rs = RootSystem<Q>::build(tag);
    const auto k = random_k(rng, rs);
    body(DunklOperators<Q>(rs, k), std::string(tag) + " k=" + k_text(k), t);
  }
  return t.outcome();
}

inline Vec<Q> random_direction(std::mt19937_64& rng, std::size_t dim) {
  Vec<Q> xi(dim);
  for (auto& v : xi) v = Q(uniform_int(rng, -3, 3), uniform_int(rng, 1, 3));
  xi[0] += Q(1);
  return xi;
}

inline Outcome commutator_relation(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    const P p = random_poly(rng, T.dim(), 6);
    const Vec<Q> xi = random_direction(rng, T.dim());
    const P xs = P::linear_form(xi);
    t.add((xs * T.laplacian(p) - T.laplacian(xs * p)) * Q(1, 2) + T.apply(xi, p), w);
  });
}

inline Outcome lemma_exp_commutator(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    const P p = random_poly(rng, T.dim(), 6);
    const Vec<Q> xi = random_direction(rng, T.dim());
    const P xs = P::linear_form(xi);
    const P e = T.exp_half_laplacian(-1, p);
    t.add(xs * e - T.exp_half_laplacian(-1, xs * p) - T.apply(xi, e), w);
    t.add(T.exp_half_laplacian(1, e) - p, w + " e^{+}e^{-}");
  });
}

inline Outcome lemma_gaussian_pair(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    const P p = random_poly(rng, T.dim(), 6);
    const Vec<Q> xi = random_direction(rng, T.dim());
    const P lhs = T.apply(xi, GaussPoly<Q>{T.exp_half_laplacian(-1, p)}).poly;
    t.add(lhs + T.exp_half_laplacian(-1, P::linear_form(xi) * p), w);
  });
}

inline Outcome homogeneous_gaussian_identity(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    for (int deg = 0; deg <= 3; ++deg) {
      const P p = random_homogeneous(rng, T.dim(), deg);
      const P q = random_poly(rng, T.dim(), 3);
      const P lhs = T.apply_poly(p, GaussPoly<Q>{T.exp_half_laplacian(-1, q)}).poly;
      t.add(lhs - T.exp_half_laplacian(-1, p * q) * Q(deg % 2 ? -1 : 1), w + " deg " + std::to_string(deg));
    }
  });
}

/// The poly·Gaussian transform obeys D_k(T_ξ f) = i(λ,ξ)D_k f, fixes ψ, and E_k inverts it.
inline Outcome polygaussian_transform(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    const P p = random_poly(rng, T.dim(), 5);
    const Vec<Q> xi = random_direction(rng, T.dim());
    const P xs = P::linear_form(xi);
    const auto df = T.transform_poly_gaussian(p, false);
    const auto dtf = T.transform_poly_gaussian(T.apply(xi, GaussPoly<Q>{p}).poly, false);
    t.add(dtf.re + df.im * xs, w + " exchange re");
    t.add(dtf.im - df.re * xs, w + " exchange im");
    const auto one = T.transform_poly_gaussian(P::constant(T.dim(), Q(1)), false);
    t.add(one.re - P::constant(T.dim(), Q(1)), w + " ψ");
    t.add(one.im, w + " ψ im");
    const auto back = T.transform_poly_gaussian(df, true);
    t.add(back.re - p, w + " inverse");
    t.add(back.im, w + " inverse im");
  });
}

inline Outcome pairing_symmetry(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    for (int trial = 0; trial < 3; ++trial) {
      const P p = random_poly(rng, T.dim(), 4), q = random_poly(rng, T.dim(), 4);
      t.add(P::constant(1, T.pairing(p, q) - T.pairing(q, p)), w);
    }
    const P a = random_homogeneous(rng, T.dim(), 3), b = random_homogeneous(rng, T.dim(), 2);
    t.add(P::constant(1, T.pairing(a, b)), w + " degrees differ");
  });
}

inline Outcome pairing_adjointness(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    for (int trial = 0; trial < 3; ++trial) {
      const P p = random_poly(rng, T.dim(), 4), q = random_poly(rng, T.dim(), 5);
      const Vec<Q> xi = random_direction(rng, T.dim());
      t.add(P::constant(1, T.pairing(P::linear_form(xi) * p, q) - T.pairing(p, T.apply(xi, q))), w);
    }
  });
}

/// E_{k′}D_k(pψ) = (e^{−Δ_{k′}/2}e^{Δ_k/2}p)ψ for (k, k′) = (0, k′), (k′, 0) and (k, k).
inline Outcome transform_composition(std::mt19937_64& rng) {
  ExactTally t;
  for (const char* tag : kGroups) {
    const auto rs = RootSystem<Q>::build(tag);
    const auto k = random_k(rng, rs);
    const DunklOperators<Q> T0(rs, rs.multiplicity(std::vector<Q>(rs.num_orbits(), Q(0)))), Tk(rs, k);
    const P p = random_poly(rng, rs.dim(), 5);
    auto check = [&](const DunklOperators<Q>& from, const DunklOperators<Q>& to, const std::string& label) {
      const auto c = to.transform_poly_gaussian(from.transform_poly_gaussian(p, false), true);
      t.add(c.re - to.exp_half_laplacian(-1, from.exp_half_laplacian(1, p)), std::string(tag) + " " + label);
      t.add(c.im, std::string(tag) + " " + label + " im");
    };
    check(T0, Tk, "0→k=" + k_text(k));
    check(Tk, T0, "k=" + k_text(k) + "→0");
    check(Tk, Tk, "k=" + k_text(k) + "→k");
  }
  return t.outcome();
}

inline Outcome heckman(std::mt19937_64& rng) {
  return over_groups(rng, [&](const auto& T, const std::string& w, ExactTally& t) {
    for (int n = 0; n <= 4; ++n) {
      const P p = random_homogeneous(rng, T.dim(), n);
      const P q = random_poly(rng, T.dim(), 6, 4);
      t.add(T.heckman(p, q) - T.apply_poly(p, q), w + " n=" + std::to_string(n));
    }
  });
}

// --- criterion 3 --------------------------------------------------------------

inline Multiplicity<Q> positive_k(std::mt19937_64& rng, const RootSystem<Q>& rs) {
  std::vector<Q> ks;
  for (std::size_t i = 0; i < rs.num_orbits(); ++i) ks.push_back(Q(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4)));
  return rs.multiplicity(ks);
}

inline Outcome intertwining(std::mt19937_64& rng) {
  ExactTally t;
  for (const char* tag : kGroups) {
    const auto rs = RootSystem<Q>::build(tag);
    const auto k = positive_k(rng, rs);
    const Intertwiner<Q> V(DunklOperators<Q>(rs, k));
    const P p = random_poly(rng, rs.dim(), 8, rs.dim() > 2 ? 5 : 3);
    const P vp = V.vk(p);
    for (std::size_t i = 0; i < rs.dim(); ++i) {
      const auto xi = unit(rs.dim(), i);
      t.add(V.operators().apply(xi, vp) - V.vk(p.dir_derivative(xi)),
            std::string(tag) + " k=" + k_text(k) + " ξ=e" + std::to_string(i));
    }
    t.add(V.vk(P::constant(rs.dim(), Q(1))) - P::constant(rs.dim(), Q(1)), std::string(tag) + " V1");
  }
  return t.outcome();
}

inline Outcome intertwiner_inverse(std::mt19937_64& rng) {
  ExactTally t;
  for (const char* tag : kGroups) {
    const auto rs = RootSystem<Q>::build(tag);
    const auto k = positive_k(rng, rs);
    const Intertwiner<Q> V(DunklOperators<Q>(rs, k));
    const P p = random_poly(rng, rs.dim(), 8, rs.dim() > 2 ? 5 : 3);
    t.add(V.vk(V.wk(p)) - p, std::string(tag) + " k=" + k_text(k) + " V∘W");
    t.add(V.wk(V.vk(p)) - p, std::string(tag) + " k=" + k_text(k) + " W∘V");
  }
  return t.outcome();
}

inline Outcome intertwiner_closed_forms(std::mt19937_64& rng) {
  ExactTally t;
  const auto rs = RootSystem<Q>::build("z2");
  for (int trial = 0; trial < 3; ++trial) {
    const Q k(uniform_int(rng, 0, 9), uniform_int(rng, 1, 4));
    const Intertwiner<Q> V(DunklOperators<Q>(rs, rs.multiplicity({k})));
    const P x = P::variable(1, 0);
    t.add(V.vk(x) - x * (Q(1) / (1 + 2 * k)), "V x, k=" + to_string(k));
    t.add(V.vk(x * x) - x * x * (Q(1) / (1 + 2 * k)), "V x², k=" + to_string(k));
  }
  return t.outcome();
}

// --- criterion 4 --------------------------------------------------------------

inline Outcome kernel_series_agreement(std::mt19937_64&) {
  NumericTally t(1e-10);
  const auto rs = RootSystem<Q>::build("z2");
  for (const char* k : {"0", "3/10", "1", "5/2"}) {
    const KernelSeries<Q> ks(rs, rs.multiplicity(k));
    const double kd = parse_rational(k).convert_to<double>();
    for (double lam : {-2.0, -0.5, 0.0, 1.0, 2.5})
      for (double x : {-1.5, -0.4, 0.0, 0.9, 2.0}) {
        const Complex series = ks.exp({Complex(0, lam)}, {x}, 60).value;
        t.add(std::abs(series - exp_z2(lam, kd, x).value), std::string("k=") + k + " λ=" + fmt(lam) + " x=" + fmt(x));
      }
  }
  return t.outcome();
}

/// |Exp(λ,k,x)| ≤ √|G| e^{max_g Re(λ, gx)} and |Exp(iλ,k,x)| ≤ 1 for real λ; reported as the worst excess ratio − 1.
inline Outcome kernel_growth(std::mt19937_64& rng) {
  NumericTally t(1e-9);
  for (double k : {0.0, 0.3, 1.0, 2.5})
    for (int trial = 0; trial < 20; ++trial) {
      const Complex lam(uniform_real(rng, -3, 3), uniform_real(rng, -3, 3));
      const double x = uniform_real(rng, -3, 3);
      const double bound = std::sqrt(2.0) * std::exp(std::abs(lam.real() * x));
      t.add(std::abs(exp_z2(Complex(0, -1) * lam, k, x).value) / bound - 1, "z2 k=" + fmt(k) + " λ=" + fmt(lam));
      t.add(std::abs(exp_z2(lam.real(), k, x).value) - 1, "z2 real axis k=" + fmt(k) + " λ=" + fmt(lam.real()));
    }
  for (const char* tag : {"b2", "a2"}) {
    const auto rs = RootSystem<Q>::build(tag);
    const KernelEvaluator<Q> ev(rs, rs.multiplicity(std::string(tag) == "b2" ? "1/2,1" : "3/4"));
    const double root_g = std::sqrt(static_cast<double>(rs.group().size()));
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Complex> lam(rs.dim()), ilam(rs.dim()), xc(rs.dim());
      std::vector<double> x(rs.dim());
      for (std::size_t i = 0; i < rs.dim(); ++i) {
        lam[i] = Complex(uniform_real(rng, -1.5, 1.5), uniform_real(rng, -1.5, 1.5));
        ilam[i] = Complex(0, lam[i].real());
        x[i] = uniform_real(rng, -1.5, 1.5);
        xc[i] = x[i];
      }
      const double bound = root_g * std::exp(ev.growth_exponent(lam, xc));
      t.add(std::abs(ev.exp(lam, x).value) / bound - 1, std::string(tag) + " complex λ trial " + std::to_string(trial));
      t.add(std::abs(ev.exp(ilam, x).value) - 1, std::string(tag) + " imaginary λ trial " + std::to_string(trial));
    }
  }
  t.residual = std::max(t.residual, 0.0);
  return t.outcome();
}

// --- criterion 5 --------------------------------------------------------------

inline Outcome pw_support(double k) {
  const auto rep = pw_inverse_support_check(k, 1, 0.1, 3, 40);
  Outcome o{rep.ratio(), 1e-6, "k=" + fmt(k) + " sup outside " + fmt(rep.sup_outside) + ", Λ=" + fmt(rep.cutoff)};
  if (!(rep.sup_inside > 1e-3)) {
    o.forced_fail = true;
    o.witness += "; inverse transform vanishes inside the support too";
  }
  return o;
}

inline Outcome pw_profile(double k) {
  const auto prof = pw_forward_profile(k, 1, {0, 1, 2, 3, 4}, PWGrid{40, 5, 81, 11});
  std::string w = "k=" + fmt(k) + " γ_M =";
  for (double g : prof.gamma) w += " " + fmt(g);
  w += ", quadrature error " + fmt(prof.max_quad_error);
  Outcome o{prof.holds ? 0.0 : 1.0, 0, w};
  if (prof.witness) o.witness += ", non-finite at λ=" + fmt(*prof.witness);
  return o;
}

// --- criterion 6 --------------------------------------------------------------

inline Multiplicity<Q> radial_k(const RootSystem<Q>& rs, const std::string& tag) {
  return rs.multiplicity(tag == "b2" ? "1,1" : "1/2");
}

inline Outcome radial_exact(std::mt19937_64&) {
  ExactTally t;
  for (const char* tag : {"b2", "a2"}) {
    const auto rs = RootSystem<Q>::build(tag);
    for (int q = 0; q <= 3; ++q)
      t.add(radial_reduction_residual(rs, radial_k(rs, tag), q), std::string(tag) + " q=" + std::to_string(q));
  }
  const auto b2 = RootSystem<Q>::build("b2");
  t.add(P::constant(1, b2.gamma(b2.multiplicity("1,1")) - Q(4)), "b2 γ at k=(1,1)");
  return t.outcome();
}

inline Outcome radial_numeric(std::mt19937_64&) {
  NumericTally t(1e-8);
  const std::vector<double> radii{0.0, 0.6, 1.3, 2.1, 3.4};
  for (const char* tag : {"b2", "a2"}) {
    const auto rs = RootSystem<Q>::build(tag);
    for (int q = 0; q <= 3; ++q)
      t.add(radial_reduction_numeric(rs, radial_k(rs, tag), q, radii), std::string(tag) + " q=" + std::to_string(q));
  }
  return t.outcome();
}

// --- criterion 7 --------------------------------------------------------------

inline Outcome shift_symbolic(std::mt19937_64&) {
  const ExpPoly1D r = shift_residual_elementary(1);
  return {r.is_zero() ? 0.0 : 1.0, 0, r.is_zero() ? "" : "k=1→2 residual " + r.to_text()};
}

inline Outcome shift_numeric(std::mt19937_64& rng) {
  NumericTally t(1e-8);
  for (int i = 0; i < 10; ++i) {
    const Complex l(uniform_real(rng, -2, 2), uniform_real(rng, -2, 2));
    const double x = uniform_real(rng, 0.2, 2.0);
    t.add(shift_residual_z2(0.5, l, x), "k=0.5→1.5 λ=" + fmt(l) + " x=" + fmt(x));
  }
  return t.outcome();
}

// --- criterion 8 --------------------------------------------------------------

inline Outcome limit_transition(std::mt19937_64&) {
  const std::vector<std::pair<Complex, double>> pairs{{Complex(0, 1), 1.0}, {Complex(0.5, 0), 0.7},
                                                      {Complex(0.3, -1.2), -1.1}, {Complex(-1, 2), 0.4}};
  Outcome o{0, 1e-3, ""};
  for (double k : {0.5, 1.0})
    for (const auto& [lam, x] : pairs) {
      const auto dev = limit_transition_check(lam, k, x, {1e-1, 1e-2, 1e-3});
      const std::string where = "k=" + fmt(k) + " λ=" + fmt(lam) + " x=" + fmt(x);
      if (!(dev[0] > dev[1] && dev[1] > dev[2]) && !o.forced_fail) {
        o.forced_fail = true;
        o.witness = where + ": deviations " + fmt(dev[0]) + ", " + fmt(dev[1]) + ", " + fmt(dev[2]) + " not decreasing";
      }
      if (dev[2] > o.residual) {
        o.residual = dev[2];
        if (!o.forced_fail) o.witness = where;
      }
    }
  return o;
}

inline Outcome gamma_ratio_limit(std::mt19937_64&) {
  NumericTally t(1e-6);
  for (double a : {0.5, 1.0, 2.0})
    for (double s : {0.5, 1.0, 3.0}) {
      const double target = std::pow(s, a);
      t.add(std::abs(gamma_ratio(a, s, 1e-4) - target) / target, "a=" + fmt(a) + " s=" + fmt(s));
    }
  return t.outcome();
}

// --- criterion 9 --------------------------------------------------------------

inline std::vector<SampledFunction> smooth_inputs() {
  return {bump_function(1), poly_gaussian_function(P::constant(1, Q(1)))};
}

inline Outcome smooth_round_trip(std::mt19937_64&) {
  NumericTally t(1e-6);
  const std::vector<double> xs{-1.1, -0.4, 0.2, 0.75};
  for (double k : {0.5, 1.0}) {
    const SmoothIntertwiner I(k);
    for (const auto& f : smooth_inputs()) {
      const auto vw = I.vk_after_wk(f, xs), wv = I.wk_after_vk(f, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        t.add(std::abs(vw[i].value - f(xs[i])), "V∘W k=" + fmt(k) + " " + f.label + " x=" + fmt(xs[i]));
        t.add(std::abs(wv[i].value - f(xs[i])), "W∘V k=" + fmt(k) + " " + f.label + " x=" + fmt(xs[i]));
      }
    }
  }
  return t.outcome();
}

inline Outcome smooth_intertwining(std::mt19937_64&) {
  NumericTally t(1e-6);
  for (double k : {0.5, 1.0}) {
    const SmoothIntertwiner I(k);
    for (const auto& f : smooth_inputs())
      t.add(I.intertwining_residual(f, {-0.6, 0.35, 0.9}), "k=" + fmt(k) + " " + f.label);
  }
  return t.outcome();
}

inline Outcome smooth_support(std::mt19937_64&) {
  NumericTally t(1e-6);
  const auto f = bump_function(0.5, 1.5);
  std::vector<double> xs;
  for (int i = 0; i <= 10; ++i) xs.push_back(-0.95 + 1.9 * i / 10);
  bool alive = true;
  for (double k : {0.5, 1.0}) {
    const SmoothIntertwiner I(k);
    const auto v = I.vk(f, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) t.add(std::abs(v[i].value), "k=" + fmt(k) + " x=" + fmt(xs[i]));
    alive = alive && std::abs(I.vk(f, {1.5})[0].value) > 1e-3;
  }
  Outcome o = t.outcome();
  if (!alive) {
    o.forced_fail = true;
    o.witness = "V_k f vanishes on the support of f as well";
  }
  return o;
}

// --- criterion 10 -------------------------------------------------------------

inline Outcome motion_radial_part(std::mt19937_64&) {
  ExactTally t;
  for (int n = 2; n <= 6; ++n)
    for (const char* p : {"1", "x0^2", "x0^4 - 3*x0^2 + 1"})
      for (int power : {1, 2}) {
        const auto chk = radial_part_check(FlatModel(n), parse_poly<Q>(p, 1), power);
        t.add(chk.euclidean - chk.dunkl, "N=" + std::to_string(n) + " p=" + p + " power " + std::to_string(power));
      }
  return t.outcome();
}

inline Outcome motion_factorization(std::mt19937_64&) {
  NumericTally t(1e-7);
  std::vector<double> lam;
  for (int i = 0; i <= 40; ++i) lam.push_back(-20 + i);
  for (int n : {2, 3}) {
    const auto rep = factorization_check(FlatModel(n), bump_function(1), lam);
    t.add(rep.worst, "N=" + std::to_string(n) + " bump:R=1 λ=" + fmt(rep.witness.value_or(0)));
    const auto g = measure_identity(FlatModel(n), poly_gaussian_function(P::constant(1, Q(1))));
    t.add(g.residual(), "N=" + std::to_string(n) + " measure identity on the Gaussian");
  }
  return t.outcome();
}

inline Outcome motion_sphere_average(std::mt19937_64& rng) {
  NumericTally t(1e-9);
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      const Complex lam(uniform_real(rng, -4, 4), uniform_real(rng, -4, 4));
      const double x = uniform_real(rng, 0, 3);
      const FlatModel m(n);
      const Complex b = jg_z2(lam, m.k(), x).value;
      t.add(std::abs(sphere_average(m, lam, x).value - b) / std::max(1.0, std::abs(b)),
            "N=" + std::to_string(n) + " λ=" + fmt(lam) + " x=" + fmt(x));
    }
  return t.outcome();
}

inline Outcome motion_abel_round_trip(std::mt19937_64&) {
  std::vector<double> xs;
  for (int i = 0; i < 24; ++i) xs.push_back(0.05 + 1.15 * i / 23);
  return {abel_round_trip(FlatModel(3), bump_function(1), xs), 1e-6, "N=3 bump:R=1 on 0.05 ≤ x ≤ 1.2"};
}

/// A⁻¹ of 2πψ, the N = 3 Abel image of the Gaussian, against ψ.
inline Outcome motion_abel_gaussian(std::mt19937_64&) {
  NumericTally t(1e-8);
  auto g = [](double x) { return 2 * std::numbers::pi * std::exp(-x * x / 2); };
  for (double x : {0.01, 0.3, 1.0, 2.2})
    t.add(std::abs(abel_inverse(FlatModel(3), g, x) - std::exp(-x * x / 2)), "N=3 x=" + fmt(x));
  return t.outcome();
}

}  // namespace verify_detail

/// All checks, ordered by id.
inline const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> checks = [] {
    using namespace verify_detail;
    std::vector<CheckDef> c;
    auto add = [&](std::string id, std::string suite, int criterion, std::function<Outcome(std::mt19937_64&)> fn) {
      c.push_back({std::move(id), std::move(suite), criterion, std::move(fn)});
    };
    for (const char* tag : kGroups)
      add(std::string("c01.commutativity.") + tag, "exact", 1,
          [tag](std::mt19937_64& rng) { return commutativity(rng, tag); });
    add("c02.commutator", "exact", 2, commutator_relation);
    add("c02.exp_commutator", "exact", 2, lemma_exp_commutator);
    add("c02.gaussian_pair", "exact", 2, lemma_gaussian_pair);
    add("c02.homogeneous_gaussian", "exact", 2, homogeneous_gaussian_identity);
    add("c02.polygaussian_transform", "exact", 2, polygaussian_transform);
    add("c02.pairing_symmetry", "exact", 2, pairing_symmetry);
    add("c02.pairing_adjointness", "exact", 2, pairing_adjointness);
    add("c02.transform_composition", "exact", 2, transform_composition);
    add("c02.heckman", "exact", 2, heckman);
    add("c03.intertwining", "exact", 3, intertwining);
    add("c03.inverse", "exact", 3, intertwiner_inverse);
    add("c03.z2_closed_forms", "exact", 3, intertwiner_closed_forms);
    add("c04.series_vs_closed_form", "numeric", 4, kernel_series_agreement);
    add("c04.growth_bounds", "numeric", 4, kernel_growth);
    for (double k : {0.0, 0.3, 0.7, 1.5}) {
      add("c05.pw_support.k=" + fmt(k), "pw", 5, [k](std::mt19937_64&) { return pw_support(k); });
      add("c05.pw_profile.k=" + fmt(k), "pw", 5, [k](std::mt19937_64&) { return pw_profile(k); });
    }
    add("c06.laguerre_exact", "exact", 6, radial_exact);
    add("c06.rank_one_numeric", "numeric", 6, radial_numeric);
    add("c07.shift_symbolic", "exact", 7, shift_symbolic);
    add("c07.shift_numeric", "numeric", 7, shift_numeric);
    add("c08.limit_transition", "numeric", 8, limit_transition);
    add("c08.gamma_ratio", "numeric", 8, gamma_ratio_limit);
    add("c09.round_trip", "numeric", 9, smooth_round_trip);
    add("c09.intertwining", "numeric", 9, smooth_intertwining);
    add("c09.support_shrink", "numeric", 9, smooth_support);
    add("c10.radial_part", "motion", 10, motion_radial_part);
    add("c10.factorization", "motion", 10, motion_factorization);
    add("c10.sphere_average", "motion", 10, motion_sphere_average);
    add("c10.abel_gaussian", "motion", 10, motion_abel_gaussian);
    add("c10.abel_round_trip", "motion", 10, motion_abel_round_trip);
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return c;
  }();
  return checks;
}

inline bool is_suite(const std::string& s) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), s) != n.end();
}

/// Runs one check with its own stream seeded from (seed, id).
inline CheckResult run_check(const CheckDef& def, std::uint64_t seed) {
  CheckResult r;
  r.id = def.id;
  r.suite = def.suite;
  r.criterion = def.criterion;
  std::mt19937_64 rng(seed ^ verify_detail::fnv1a(def.id));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = def.run(rng);
    r.residual = o.residual;
    r.tolerance = o.tolerance;
    r.witness = o.witness;
    r.status = (!o.forced_fail && o.residual <= o.tolerance) ? CheckStatus::pass : CheckStatus::fail;
  } catch (const std::exception& e) {
    r.status = CheckStatus::fail;
    r.residual = std::numeric_limits<double>::infinity();
    r.witness = std::string("exception: ") + e.what();
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs every check of the suite ("all" selects everything) on a worker pool.
inline VerifyReport run_verify(const std::string& suite, std::uint64_t seed = 0, unsigned workers = 0,
                               const std::function<bool(const CheckDef&)>& filter = {}) {
  if (!is_suite(suite)) throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<const CheckDef*> selected;
  for (const auto& c : check_registry())
    if ((suite == "all" || c.suite == suite) && (!filter || filter(c))) selected.push_back(&c);
  VerifyReport rep;
  rep.suite = suite;
  rep.seed = seed;
  rep.checks.resize(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) { rep.checks[i] = run_check(*selected[i], seed); }, workers);
  return rep;
}

}  // namespace dunklkit
