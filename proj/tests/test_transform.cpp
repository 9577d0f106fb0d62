#include <dunklkit/transform.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dunklkit;
using Q = Rational;
using P = Poly<Rational>;

namespace {

// Trapezoid sum of bump(x)e^{−iλx}/√(2π); spectrally accurate for a smooth compactly supported integrand.
Complex classical_fourier_oracle(double lambda, double R) {
  const int n = 20000;
  const double h = 2 * R / n;
  Complex s(0);
  for (int i = 1; i < n; ++i) {
    const double x = -R + i * h;
    s += bump_value(x, R) * std::exp(Complex(0, -lambda * x));
  }
  return s * h / std::sqrt(2 * kPi);
}

double lgam(double x) { return std::lgamma(x); }

}  // namespace

TEST(Quadrature, GaussLegendreIsExactToDegree47) {
  const auto& gl = gauss_legendre(24);
  double s = 0, w = 0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    s += gl.w[i] * std::pow(gl.x[i], 46);
    w += gl.w[i];
  }
  EXPECT_NEAR(w, 2.0, 1e-15);
  EXPECT_NEAR(s, 2.0 / 47, 1e-15);
}

TEST(Quadrature, GradingResolvesAlgebraicWeight) {
  QuadratureSpec spec;
  spec.target_tol = 1e-14;
  const int lv = grading_levels_for(0.6, spec.target_tol);
  EXPECT_GT(lv, 0);
  EXPECT_EQ(grading_levels_for(2.0, spec.target_tol), 0);
  auto r = integrate([](double x) { return std::pow(x, 0.6); }, 0, 1, {{0, lv}}, spec);
  EXPECT_NEAR(r.value.real(), 1 / 1.6, 1e-13);
  EXPECT_LT(r.error, 1e-12);
}

TEST(Quadrature, BudgetIsEnforced) {
  QuadratureSpec spec;
  spec.node_budget = 100;
  EXPECT_THROW(composite_rule(0, 10, {}, 0.1, spec), QuadratureBudgetExceeded);
}

TEST(Mehta, ClosedFormValues) {
  EXPECT_NEAR(mehta_c_closed_form(0), std::sqrt(2 * kPi), 1e-14);
  EXPECT_NEAR(mehta_c_closed_form(0.5), 2.0, 1e-14);
  EXPECT_NEAR(mehta_c_closed_form(1), std::sqrt(2 * kPi), 1e-14);
}

TEST(Mehta, RankOneQuadratureMatchesClosedForm) {
  auto rs = RootSystem<Q>::build("z2");
  for (const char* k : {"0", "3/10", "1/2", "7/10", "3/2"}) {
    GaussianCubature cub(rs, rs.multiplicity(k));
    const double kd = parse_rational(k).convert_to<double>();
    EXPECT_NEAR(cub.mehta() / mehta_c_closed_form(kd), 1.0, 1e-10) << k;
  }
}

TEST(Mehta, RankTwoMatchesMehtaMacdonald) {
  // A_2 in ℝ³: (2π)^{3/2} Γ(1+2k)Γ(1+3k)/Γ(1+k)².
  auto a2 = RootSystem<Q>::build("a2");
  for (double k : {0.0, 0.5, 0.7, 1.0}) {
    const double expect = std::pow(2 * kPi, 1.5) * std::exp(lgam(1 + 2 * k) + lgam(1 + 3 * k) - 2 * lgam(1 + k));
    const double got = mehta_c(a2, a2.multiplicity({parse_rational(format_double(k))}));
    EXPECT_NEAR(got / expect, 1.0, 1e-10) << k;
  }
  // B_2 with short-root multiplicity a and long-root multiplicity b:
  // 2π Π_{j=1,2} Γ(1+jb)/Γ(1+b) · 2^{a+2(j−1)b} Γ(1/2+a+(j−1)b)/Γ(1/2).
  auto b2 = RootSystem<Q>::build("b2");
  const auto& first = b2.roots()[b2.orbits()[0][0]];
  const bool short_first = dot(first, first) == Q(1);
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {0.3, 0.7}}) {
    double expect = 2 * kPi;
    for (int j = 1; j <= 2; ++j)
      expect *= std::exp(lgam(1 + j * b) - lgam(1 + b) + (a + 2 * (j - 1) * b) * std::log(2.0) +
                         lgam(0.5 + a + (j - 1) * b) - lgam(0.5));
    std::vector<Q> ks{parse_rational(format_double(a)), parse_rational(format_double(b))};
    if (!short_first) std::swap(ks[0], ks[1]);
    EXPECT_NEAR(mehta_c(b2, b2.multiplicity(ks)) / expect, 1.0, 1e-10) << a << "," << b;
  }
}

TEST(RankOneTransformTest, GaussianIsFixed) {
  const auto psi = poly_gaussian_function(P::constant(1, 1));
  for (double k : {0.0, 0.3, 1.5}) {
    RankOneTransform t(k);
    for (double l : {0.0, 0.8, -2.5, 4.0}) {
      auto r = t.forward(psi, Complex(l));
      EXPECT_LT(std::abs(r.value - std::exp(-l * l / 2)), 1e-12) << k << " " << l;
    }
  }
}

TEST(RankOneTransformTest, ClassicalCaseMatchesFourierOracle) {
  RankOneTransform t(0);
  const auto f = bump_function(1);
  for (double l : {0.0, 1.0, 7.5, -20.0, 40.0}) {
    auto r = t.forward(f, Complex(l));
    EXPECT_LT(std::abs(r.value - classical_fourier_oracle(l, 1)), 1e-9) << l;
  }
}

TEST(RankOneTransformTest, PolyGaussianMatchesExactLayer) {
  // D_1(x²ψ) = −(λ² − 3)ψ(λ).
  RankOneTransform t(1);
  const auto f = poly_gaussian_function(parse_poly("x^2", 1));
  auto rs = RootSystem<Q>::build("z2");
  const auto exact = poly_gaussian_transform(rs, rs.multiplicity("1"), parse_poly("x^2", 1), Direction::forward);
  EXPECT_EQ(exact.re, parse_poly("3 - x^2", 1));
  for (double l : {0.0, 0.5, 1.7, -3.0}) {
    auto r = t.forward(f, Complex(l));
    EXPECT_LT(std::abs(r.value - evaluate(exact, {l})), 1e-9) << l;
    EXPECT_LT(std::abs(r.value - (3 - l * l) * std::exp(-l * l / 2)), 1e-9) << l;
  }
}

TEST(RankOneTransformTest, OddAndAsymmetricInputs) {
  auto rs = RootSystem<Q>::build("z2");
  for (const char* kq : {"3/10", "3/2"}) {
    const double k = parse_rational(kq).convert_to<double>();
    RankOneTransform t(k);
    const P p = parse_poly("x^3 - 2*x + 1", 1);
    const auto exact = poly_gaussian_transform(rs, rs.multiplicity(kq), p, Direction::forward);
    for (double l : {0.3, -1.2, 2.2}) {
      auto r = t.forward(poly_gaussian_function(p), Complex(l));
      EXPECT_LT(std::abs(r.value - evaluate(exact, {l})), 1e-10) << kq << " " << l;
    }
  }
}

TEST(RankOneTransformTest, InversionRoundTripOnBumps) {
  const std::vector<double> xs{-0.9, -0.3, 0.0, 0.45, 0.8, 1.2};
  for (double k : {0.3, 1.0}) {
    for (const auto& f : {bump_function(1), bump_function(0.5, 0.4)}) {
      auto back = inversion_round_trip(k, f, xs);
      for (std::size_t i = 0; i < xs.size(); ++i)
        EXPECT_LT(std::abs(back[i].value - f(xs[i])), 1e-7) << k << " " << f.label << " x=" << xs[i];
    }
  }
}

TEST(RankOneTransformTest, UnboundedSupportIsRejected) {
  SampledFunction f;
  f.fn = [](double) { return Complex(1); };
  EXPECT_THROW(RankOneTransform(0.5).forward(f, Complex(1)), std::invalid_argument);
}

TEST(PolyGaussianTransform, InverseUndoesForward) {
  auto rs = RootSystem<Q>::build("b2");
  auto k = rs.multiplicity("1/2,2");
  const P p = parse_poly("x0^3*x1 - 2*x1^2 + x0", 2);
  DunklOperators<Q> T(rs, k);
  const auto fwd = T.transform_poly_gaussian(p, false);
  const auto back = T.transform_poly_gaussian(fwd, true);
  EXPECT_EQ(back.re, p);
  EXPECT_TRUE(back.im.is_zero());
}

TEST(RadialReduction, ExactLaguerreForm) {
  for (const char* tag : {"b2", "a2"}) {
    auto rs = RootSystem<Q>::build(tag);
    auto k = rs.multiplicity(std::string(tag) == "b2" ? "1,1" : "1/2");
    for (int q = 0; q <= 3; ++q) EXPECT_TRUE(radial_reduction_residual(rs, k, q).is_zero()) << tag << " q=" << q;
  }
  auto b2 = RootSystem<Q>::build("b2");
  EXPECT_EQ(b2.gamma(b2.multiplicity("1,1")), Q(4));
  // q = 1: (|x|² − 2γ)ψ.
  EXPECT_EQ(radial_laguerre_form(2, 1, Q(4)), parse_poly("x0^2 + x1^2 - 8", 2));
  EXPECT_EQ(radial_laguerre_form(3, 0, Q(4)), P::constant(3, 1));
}

TEST(RadialReduction, NumericRankOneAgreement) {
  const std::vector<double> radii{0.0, 0.6, 1.3, 2.1, 3.4};
  auto b2 = RootSystem<Q>::build("b2");
  auto a2 = RootSystem<Q>::build("a2");
  for (int q = 0; q <= 3; ++q) {
    EXPECT_LT(radial_reduction_numeric(b2, b2.multiplicity("1,1"), q, radii), 1e-8) << "b2 q=" << q;
    EXPECT_LT(radial_reduction_numeric(a2, a2.multiplicity("1/2"), q, radii), 1e-8) << "a2 q=" << q;
  }
  // The exact transform is (−1)^q times the Laguerre form with index γ + dim/2 − 1.
  auto k = b2.multiplicity("1,1");
  const auto exact = poly_gaussian_transform(b2, k, P::norm_squared(2).pow(2), Direction::forward);
  EXPECT_EQ(exact.re, laguerre_half_norm(2, 2, Q(4)) * Q(8));
}

TEST(PaleyWiener, InverseOfClassicalInputVanishesOutsideSupport) {
  for (double k : {0.0, 0.7}) {
    auto rep = pw_inverse_support_check(k, 1, 0.1, 3, 20);
    EXPECT_LT(rep.ratio(), 1e-6) << k;
    EXPECT_GT(rep.sup_inside, 1e-3) << k;
    EXPECT_GT(rep.cutoff, 50);
  }
}

TEST(PaleyWiener, ForwardProfileAndRate) {
  PWGrid grid;
  grid.n_re = 41;
  grid.n_im = 11;
  auto prof = pw_forward_profile(0.7, 1, {0, 1, 2, 3, 4}, grid);
  EXPECT_TRUE(prof.holds);
  EXPECT_FALSE(prof.witness.has_value());
  ASSERT_EQ(prof.gamma.size(), 5u);
  for (double g : prof.gamma) EXPECT_TRUE(std::isfinite(g) && g > 0);
  EXPECT_NEAR(prof.fitted_rate, 1.0, 0.05);
  const double r1 = fit_exponential_rate(0.7, 1), r2 = fit_exponential_rate(0.7, 2);
  EXPECT_NEAR(r2 / r1, 2.0, 0.1);
  const double c1 = fit_exponential_rate(0, 1), c2 = fit_exponential_rate(0, 2);
  EXPECT_NEAR(c2 / c1, 2.0, 0.1);
}

TEST(ShiftRelation, RankOneNumeric) {
  EXPECT_LT(shift_residual_z2(0.5, Complex(0, 1), 0.7), 1e-8);
  EXPECT_EQ(shift_residual_z2(0.5, Complex(0), 0.7), 0.0);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2, 2), ux(0.2, 2.0);
  for (int i = 0; i < 10; ++i) {
    const Complex l(u(rng), u(rng));
    const double x = ux(rng);
    EXPECT_LT(shift_residual_z2(0.5, l, x), 1e-8) << l << " " << x;
  }
  EXPECT_THROW(shift_residual_z2(0.5, Complex(1), 5e-4), std::domain_error);
}

TEST(ShiftRelation, ElementaryKernelsExactly) {
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(shift_residual_elementary(k).is_zero()) << k;
}

TEST(ShiftRelation, B2ExactPerDegree) {
  auto rs = RootSystem<Q>::build("b2");
  auto k = rs.multiplicity("1/2,1");
  const Vec<Q> lambda{Q(2, 3), Q(-1, 5)};
  for (std::size_t orbit = 0; orbit < rs.num_orbits(); ++orbit) {
    auto res = shift_residual_exact(rs, k, orbit, lambda, 2);
    for (std::size_t m = 0; m < res.size(); ++m) EXPECT_TRUE(res[m].is_zero()) << "orbit " << orbit << " degree " << m;
  }
}

TEST(SmoothIntertwiner, ZeroMultiplicityIsIdentity) {
  SmoothIntertwiner I(0);
  const auto f = bump_function(1);
  const std::vector<double> xs{-0.7, 0.0, 0.3, 0.95};
  auto v = I.vk(f, xs), w = I.wk(f, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_LT(std::abs(v[i].value - f(xs[i])), 1e-9);
    EXPECT_LT(std::abs(w[i].value - f(xs[i])), 1e-9);
  }
}

TEST(SmoothIntertwiner, RoundTripsAndIntertwining) {
  const std::vector<double> xs{-1.1, -0.4, 0.2, 0.75};
  const auto psi = poly_gaussian_function(P::constant(1, 1));
  for (double k : {0.5, 1.0}) {
    SmoothIntertwiner I(k);
    for (const auto& f : {bump_function(1), psi}) {
      auto vw = I.vk_after_wk(f, xs), wv = I.wk_after_vk(f, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_LT(std::abs(vw[i].value - f(xs[i])), 1e-6) << k << " " << f.label;
        EXPECT_LT(std::abs(wv[i].value - f(xs[i])), 1e-6) << k << " " << f.label;
      }
      EXPECT_LT(I.intertwining_residual(f, {-0.6, 0.35, 0.9}), 1e-6) << k << " " << f.label;
    }
  }
}

TEST(SmoothIntertwiner, VkOfGaussianAgainstSeries) {
  // V_k ψ(x) = c_0⁻¹∫ e^{−λ²/2} Exp(iλ,k,x) dλ = Σ_m (−x²/2)^m (2m−1)!!/(2m)! · (2m)!/Π_{j≤2m}(j+2k[j odd]).
  const double k = 0.5;
  auto series = [&](double x) {
    double sum = 0, term = 1;
    for (int m = 0; m < 80; ++m) {
      if (m > 0) term *= -x * x * (2 * m - 1) / ((2 * m - 1 + 2 * k) * 2 * m);
      sum += term;
    }
    return sum;
  };
  SmoothIntertwiner I(k);
  const std::vector<double> xs{0.0, 0.5, 1.5, 2.5};
  auto v = I.vk(poly_gaussian_function(P::constant(1, 1)), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LT(std::abs(v[i].value - series(xs[i])), 1e-9) << xs[i];
}

TEST(SmoothIntertwiner, SupportShrinks) {
  const auto f = bump_function(0.5, 1.5);  // vanishes on (−1, 1)
  std::vector<double> xs;
  for (int i = 0; i <= 10; ++i) xs.push_back(-0.95 + 1.9 * i / 10);
  for (double k : {0.5, 1.0}) {
    SmoothIntertwiner I(k);
    auto v = I.vk(f, xs);
    double sup = 0;
    for (const auto& r : v) sup = std::max(sup, std::abs(r.value));
    EXPECT_LT(sup, 1e-6) << k;
    auto outside = I.vk(f, {1.5});
    EXPECT_GT(std::abs(outside[0].value), 1e-3) << k;
  }
}

TEST(SmoothIntertwiner, WkOfQuadraticGaussianMatchesExactLayer) {
  // k = 1: W_1(x²ψ) = (c_0/c_1)E_0(λ²·D_1(x²ψ)) with D_1(x²ψ) = (3 − λ²)ψ; c_0 = c_1.
  auto rs = RootSystem<Q>::build("z2");
  const auto exact = poly_gaussian_transform(rs, rs.multiplicity("0"), parse_poly("3*x^2 - x^4", 1), Direction::inverse);
  EXPECT_EQ(exact.re.degree(), 4);
  SmoothIntertwiner I(1);
  const std::vector<double> xs{0.0, 0.7, 1.9};
  auto w = I.wk(poly_gaussian_function(parse_poly("x^2", 1)), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LT(std::abs(w[i].value - evaluate(exact, {xs[i]})), 1e-9);
}

TEST(TransformInvariants, OperatorExchange) {
  auto rs = RootSystem<Q>::build("z2");
  const char* kq = "7/10";
  const double k = 0.7;
  DunklOperators<Q> T(rs, rs.multiplicity(kq));
  RankOneTransform t(k);
  const P p = parse_poly("x^3 - x + 2", 1);
  const auto Tf = T.apply(Vec<Q>{Q(1)}, GaussPoly<Q>{p}).poly;
  const auto Df = T.transform_poly_gaussian(p, false);
  // D_k(T f) = iλ D_k f.
  for (double l : {0.4, -1.3, 2.0}) {
    auto lhs = t.forward(poly_gaussian_function(Tf), Complex(l)).value;
    EXPECT_LT(std::abs(lhs - Complex(0, l) * evaluate(Df, {l})), 1e-8) << l;
  }
  // D_k(i x f) = −T D_k f, with T applied to the exact transform.
  const auto TDf_re = T.apply(Vec<Q>{Q(1)}, GaussPoly<Q>{Df.re}).poly;
  const auto TDf_im = T.apply(Vec<Q>{Q(1)}, GaussPoly<Q>{Df.im}).poly;
  const P xp = parse_poly("x", 1) * p;
  for (double l : {0.4, -1.3, 2.0}) {
    auto lhs = Complex(0, 1) * t.forward(poly_gaussian_function(xp), Complex(l)).value;
    const Complex rhs = -evaluate(ComplexPoly<Q>(TDf_re, TDf_im), {l});
    EXPECT_LT(std::abs(lhs - rhs), 1e-8) << l;
  }
}

TEST(TransformInvariants, AntiSymmetryPlancherelSelfAdjointness) {
  auto rs = RootSystem<Q>::build("z2");
  for (const char* kq : {"3/10", "1"}) {
    const double k = parse_rational(kq).convert_to<double>();
    DunklOperators<Q> T(rs, rs.multiplicity(kq));
    const P p = parse_poly("x^2 + x", 1), q = parse_poly("2 - x^3", 1);
    const auto Tf = T.apply(Vec<Q>{Q(1)}, GaussPoly<Q>{p}).poly, Tg = T.apply(Vec<Q>{Q(1)}, GaussPoly<Q>{q}).poly;
    const auto f = poly_gaussian_function(p), g = poly_gaussian_function(q);
    const auto tf = poly_gaussian_function(Tf), tg = poly_gaussian_function(Tg);
    QuadratureSpec spec = transform_quadrature();
    const int lv = grading_levels_for(2 * k, spec.target_tol);
    auto weighted = [&](auto fn) {
      return integrate([&](double x) { return fn(x) * std::pow(std::abs(x), 2 * k); }, -14, 14, {{0, lv}}, spec).value;
    };
    const Complex lhs = weighted([&](double x) { return tf(x) * g(x); });
    const Complex rhs = -weighted([&](double x) { return f(x) * tg(x); });
    EXPECT_LT(std::abs(lhs - rhs), 1e-8) << kq;

    // Plancherel with the transform computed numerically on a λ-rule.
    RankOneTransform t(k);
    for (const auto& h : {bump_function(1), f}) {
      const auto s = t.spectrum(h, 2 * k, 0);
      Complex spec_norm(0);
      for (std::size_t i = 0; i < s.fine.size(); ++i)
        spec_norm += s.fine.w[i] * std::norm(s.fine_values[i]) * std::pow(std::abs(s.fine.x[i]), 2 * k);
      const Complex space_norm = weighted([&](double x) { return std::norm(h(x)); });
      EXPECT_NEAR(spec_norm.real() / t.c_k(), space_norm.real() / t.c_k(),
                  1e-6 * std::abs(space_norm) / t.c_k()) << kq << " " << h.label;
    }

    // ∫(D_k f) g w = ∫ f (D_k g) w for f a bump and g poly·Gaussian.
    const auto bump = bump_function(1);
    const auto s_b = t.spectrum(bump, 2 * k, 0);
    Complex a(0);
    for (std::size_t i = 0; i < s_b.fine.size(); ++i)
      a += s_b.fine.w[i] * s_b.fine_values[i] * g(s_b.fine.x[i]) * std::pow(std::abs(s_b.fine.x[i]), 2 * k);
    const auto on_bump = composite_rule(-1, 1, {{-1, 8}, {0, lv}, {1, 8}}, 0.1, spec);
    const auto dg = t.forward(g, std::vector<Complex>(on_bump.x.begin(), on_bump.x.end()));
    Complex b(0);
    for (std::size_t i = 0; i < on_bump.size(); ++i)
      b += on_bump.w[i] * bump(on_bump.x[i]) * dg[i].value * std::pow(std::abs(on_bump.x[i]), 2 * k);
    EXPECT_LT(std::abs(a - b), 1e-8) << kq;
  }
}

TEST(TransformInvariants, RankTwoAgainstExactLayerAndRadialInvariance) {
  auto rs = RootSystem<Q>::build("b2");
  auto k = rs.multiplicity("1,1");
  GaussianClassTransform<Q> t(rs, k);
  const P radial = parse_poly("x0^2 + x1^2", 2);
  std::vector<std::vector<double>> circle;
  for (int j = 0; j < 8; ++j) circle.push_back({std::cos(0.3 + j * kPi / 8), std::sin(0.3 + j * kPi / 8)});
  auto vals = t.forward(radial, circle);
  double lo = 1e300, hi = -1e300;
  for (auto v : vals) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
    EXPECT_LT(std::abs(v.imag()), 1e-10);
  }
  EXPECT_LT(hi - lo, 1e-6);
  const auto exact_r = poly_gaussian_transform(rs, k, radial, Direction::forward);
  EXPECT_LT(std::abs(vals[0] - evaluate(exact_r, circle[0])), 1e-9);

  const P p = parse_poly("x0^3 - 2*x0*x1 + x1", 2);
  const auto exact = poly_gaussian_transform(rs, k, p, Direction::forward);
  const auto inv = poly_gaussian_transform(rs, k, p, Direction::inverse);
  const std::vector<std::vector<double>> pts{{0.3, -0.8}, {1.1, 0.4}, {-0.6, 0.9}};
  auto fw = t.forward(p, pts), bw = t.inverse(p, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_LT(std::abs(fw[i] - evaluate(exact, pts[i])), 1e-9);
    EXPECT_LT(std::abs(bw[i] - evaluate(inv, pts[i])), 1e-9);
  }
}

TEST(TransformInvariants, PairingEqualsGaussianIntegral) {
  for (const char* tag : {"z2", "b2"}) {
    auto rs = RootSystem<Q>::build(tag);
    auto k = rs.multiplicity(std::string(tag) == "z2" ? "3/10" : "1/2,7/10");
    DunklOperators<Q> T(rs, k);
    const P p = std::string(tag) == "z2" ? parse_poly("x^3 + x", 1) : parse_poly("x0^2*x1 + x1^3 - x0", 2);
    const P q = std::string(tag) == "z2" ? parse_poly("x^3 - 2*x", 1) : parse_poly("x0^2*x1 + 2*x0", 2);
    const double exact = T.pairing(p, q).convert_to<double>();
    const P integrand = T.exp_half_laplacian(-1, p) * T.exp_half_laplacian(-1, q);
    const double numeric = gaussian_expectation(rs, k, integrand);
    EXPECT_NEAR(numeric, exact, 1e-8 * std::max(1.0, std::abs(exact))) << tag;
  }
}

TEST(DerivativeOf, BumpSecondDerivativeMatchesDifferences) {
  const auto f = bump_function(1.3, 0.2);
  const auto f1 = derivative_of(f), f2 = derivative_of(f1);
  for (double x : {-0.6, 0.1, 0.9}) {
    const double h = 1e-3;
    const double fd = (f(x + h) - 2.0 * f(x) + f(x - h)).real() / (h * h);
    EXPECT_NEAR(f2(x).real(), fd, 1e-5 * std::max(1.0, std::abs(fd))) << x;
  }
  EXPECT_THROW(derivative_of(f2), std::invalid_argument);
}
