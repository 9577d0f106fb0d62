#include <dunklkit/kernels.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dunklkit;

namespace {

// Σ (iλx)^n / Π_{j≤n}(j + 2k[j odd]), summed directly.
Complex z2_series_oracle(Complex lambda, double k, double x) {
  Complex term(1), sum(1);
  const Complex w = Complex(0, 1) * lambda * x;
  for (int j = 1; j < 400; ++j) {
    term *= w / (j + (j % 2 ? 2 * k : 0.0));
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum) && j > 20) break;
  }
  return sum;
}

// k = 1 closed form: sin z / z + i (sin z − z cos z)/z².
Complex exp_z2_k1(Complex z) { return std::sin(z) / z + Complex(0, 1) * (std::sin(z) - z * std::cos(z)) / (z * z); }

}  // namespace

TEST(ExpZ2, ReducesToExponentialAtZeroMultiplicity) {
  for (double lam : {-3.0, 0.4, 7.5, 31.0})
    for (double x : {-2.0, 0.3, 1.7}) {
      EXPECT_LT(std::abs(exp_z2(lam, 0, x).value - std::exp(Complex(0, lam * x))), 1e-12) << lam << " " << x;
    }
  EXPECT_EQ(exp_z2(0.0, 0.7, 3.0).value, Complex(1));
}

TEST(ExpZ2, MatchesHypergeometricSum) {
  for (double k : {0.0, 0.3, 1.0, 2.5})
    for (Complex lam : {Complex(1, 0), Complex(-2.5, 0), Complex(0.5, 0.7)})
      for (double x : {-1.5, 0.2, 2.9}) {
        EXPECT_LT(std::abs(exp_z2(lam, k, x).value - z2_series_oracle(lam, k, x)), 1e-12) << k << lam << x;
      }
}

TEST(ExpZ2, ClosedFormAtUnitMultiplicityAcrossRegimes) {
  for (double z : {0.3, -4.0, 19.0, 21.5, 50.0, -33.0}) {
    const Complex v = exp_z2(z, 1.0, 1.0).value;
    EXPECT_LT(std::abs(v - exp_z2_k1(z)), 1e-13) << z;
    EXPECT_NEAR(v.real(), std::sin(z) / z, 1e-13);
  }
  EXPECT_LT(std::abs(exp_z2(Complex(3, 1.5), 1.0, 10.0).value - exp_z2_k1(Complex(30, 15))), 1e-13 * std::exp(15.0));
}

TEST(ExpZ2, BoundedByOneOnRealAxis) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-60, 60), kd(0, 4);
  for (int i = 0; i < 500; ++i) {
    EXPECT_LE(std::abs(exp_z2(u(rng), kd(rng), u(rng) / 10).value), 1 + 1e-12);
  }
}

TEST(ExpZ2, BesselSystemRadialForm) {
  // (d²/dx² + (2k/x) d/dx) J(iλ,k,x) = −λ² J(iλ,k,x), via d/dz j_ν = −z/(2(ν+1)) j_{ν+1}.
  for (double k : {0.3, 1.0, 2.2})
    for (double lam : {0.7, 3.0})
      for (double x : {0.4, 1.9, 9.0}) {
        const double nu = k - 0.5;
        const Complex z = lam * x;
        const Complex j0 = normalized_bessel(nu, z).value, j1 = normalized_bessel(nu + 1, z).value,
                      j2 = normalized_bessel(nu + 2, z).value;
        const Complex d1 = lam * (-z / (2 * (nu + 1))) * j1;
        const Complex d2 = lam * lam * (-j1 / (2 * (nu + 1)) + z * z / (4 * (nu + 1) * (nu + 2)) * j2);
        EXPECT_LT(std::abs(d2 + (2 * k / x) * d1 + lam * lam * j0), 1e-9);
      }
}

TEST(GeneralizedBessel, RankOneSymmetrization) {
  for (double lam : {0.5, 2.0, -7.0})
    for (double x : {0.3, -1.2, 4.0}) {
      const Complex jg = jg_z2(Complex(0, lam), 1.0, x).value;
      EXPECT_LT(std::abs(jg - std::sin(lam * x) / (lam * x)), 1e-14);
      const Complex avg = (dunkl_kernel_z2(Complex(0, lam), 1.0, x).value + dunkl_kernel_z2(Complex(0, lam), 1.0, -x).value) / 2.0;
      EXPECT_LT(std::abs(jg - avg), 1e-14);
    }
  EXPECT_EQ(jg_z2(0.0, 0.4, 2.0).value, Complex(1));
}

TEST(GeneralizedBessel, GroupInvariantInRankTwo) {
  auto rs = RootSystem<Rational>::build("b2");
  KernelEvaluator<Rational> ev(rs, rs.multiplicity("1,1"));
  std::vector<Complex> lam{{0.3, 1.1}, {-0.6, 0.4}};
  std::vector<double> x{0.8, -0.5};
  const Complex ref = ev.jg(lam, x).value;
  for (const auto& g : rs.group()) {
    std::vector<double> gx(2, 0.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gx[i] += g.matrix(i, j).convert_to<double>() * x[j];
    EXPECT_LT(std::abs(ev.jg(lam, gx).value - ref), 1e-10);
  }
  EXPECT_LT(std::abs(ev.jg({0, 0}, x).value - 1.0), 1e-15);
}

TEST(GeneralizedBessel, SeriesAgreesWithClosedFormInRankOne) {
  auto rs = RootSystem<Rational>::build("z2");
  for (const char* k : {"0", "3/10", "1", "5/2"}) {
    KernelSeries<Rational> ks(rs, rs.multiplicity(k));
    const double kd = parse_rational(k).convert_to<double>();
    for (double lam : {-2.0, -0.5, 0.0, 1.0, 2.5})
      for (double x : {-1.5, -0.4, 0.0, 0.9, 2.0}) {
        const Complex series = ks.exp({Complex(0, lam)}, {x}, 60).value;
        EXPECT_LT(std::abs(series - exp_z2(lam, kd, x).value), 1e-10) << k << " " << lam << " " << x;
      }
  }
}

TEST(GeneralizedBessel, GrowthBoundsRankTwo) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const char* tag : {"b2", "a2"}) {
    auto rs = RootSystem<Rational>::build(tag);
    KernelEvaluator<Rational> ev(rs, rs.multiplicity(std::string(tag) == "b2" ? "1/2,1" : "3/4"));
    const double root_g = std::sqrt(static_cast<double>(rs.group().size()));
    for (int t = 0; t < 30; ++t) {
      std::vector<Complex> lam(rs.dim());
      std::vector<double> x(rs.dim());
      std::vector<Complex> xc(rs.dim());
      for (std::size_t i = 0; i < rs.dim(); ++i) {
        lam[i] = Complex(u(rng), u(rng));
        x[i] = u(rng);
        xc[i] = x[i];
      }
      const double bound = root_g * std::exp(ev.growth_exponent(lam, xc));
      EXPECT_LE(std::abs(ev.exp(lam, x).value), bound * (1 + 1e-9)) << tag;
      std::vector<Complex> ilam(rs.dim());
      for (std::size_t i = 0; i < rs.dim(); ++i) ilam[i] = Complex(0, lam[i].real());
      EXPECT_LE(std::abs(ev.exp(ilam, x).value), 1 + 1e-9) << tag;
    }
  }
}

TEST(PhiFunctions, SumAndContinuation) {
  const double k = 0.3, x = 2, lam = 1.5;
  auto phi = phi_functions(k, x, lam);
  const double z = lam * x;
  const Complex expect = 2.0 * std::pow(z, 0.5 - k) * bessel_j(k - 0.5, z).value * std::pow(lam, 2 * k);
  EXPECT_LT(std::abs(phi.phi1 + phi.phi2 - expect), 1e-12);
  // k = 0: φ^{(1)}(λ) = √(2/π) e^{iλx}, bounded as λ → 0.
  for (double l : {1e-6, 0.1, 3.0})
    EXPECT_LT(std::abs(phi_functions(0, 1.0, l).phi1 - std::sqrt(2 / kPi) * std::exp(Complex(0, l))), 1e-12);
  EXPECT_LT(std::abs(phi1_continued(0.7, 1.0, -2.0) - phi_functions(0.7, 1.0, 2.0).phi2), 1e-9);
  EXPECT_LT(std::abs(phi1_continued(0.7, 1.0, 2.0) - phi_functions(0.7, 1.0, 2.0).phi1), 1e-13);
  EXPECT_THROW(phi_functions(0.5, 1.0, 1.0), IntegerOrder);
}

TEST(ExpPoly, ElementaryKernelStructure) {
  auto e1 = elementary_kernel_1d(1);
  ExpPoly1D expect = ExpPoly1D::term(Rational(1, 2), 1, -1, 1) + ExpPoly1D::term(Rational(-1, 2), -1, -1, 1);
  EXPECT_EQ(e1.numerator, expect);
  for (int k = 1; k <= 4; ++k) {
    auto ek = elementary_kernel_1d(k);
    EXPECT_EQ(ek.numerator.num_exponentials(), 2u);
    EXPECT_GE(ek.numerator.min_x_power(), -2 * k + 1 - 1);
    EXPECT_GE(ek.numerator.min_lambda_power(), 1);
    EXPECT_NO_THROW(ek.numerator.divide_lambda(1));
    EXPECT_TRUE(ek.numerator.is_even());
  }
  EXPECT_THROW(elementary_kernel_1d(5), std::invalid_argument);
}

TEST(ExpPoly, ElementaryKernelMatchesBesselForm) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> lr(-3, 3), xr(0.5, 2.0);
  for (int k = 1; k <= 4; ++k)
    for (int t = 0; t < 20; ++t) {
      const Complex lam(lr(rng), lr(rng));
      const double x = xr(rng);
      const Complex a = elementary_kernel_1d(k).jg(lam, x);
      const Complex b = jg_z2(lam, k, x).value;
      EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b))) << k << lam << x;
    }
  // k = 1 at imaginary λ: sin form.
  EXPECT_LT(std::abs(elementary_kernel_1d(1).jg(Complex(0, 2), 0.7) - std::sin(1.4) / 1.4), 1e-14);
}

TEST(ExpPoly, DunklOperatorOnKernel) {
  // T(k) Exp(λ,k,·) = λ Exp: check the derivative/reflection algebra on k = 0.
  ExpPoly1D e = ExpPoly1D::exp_kernel();
  EXPECT_EQ(e.dunkl(Rational(0)), e.shifted(0, 1));
  ExpPoly1D odd = ExpPoly1D::term(Rational(1), 1, 1, 0);
  EXPECT_EQ(odd.reflected(), ExpPoly1D::term(Rational(-1), -1, 1, 0));
}

TEST(Cherednik, ZeroMultiplicityAndNormalization) {
  for (double t : {-1.2, 0.3, 2.0}) {
    const Complex lam(0.4, -1.1);
    EXPECT_LT(std::abs(cherednik_rank1(lam, 0, t).value - std::exp(lam * t)), 1e-13);
  }
  EXPECT_EQ(cherednik_rank1(0.0, 0.8, 0.0).value, Complex(1));
  EXPECT_THROW(cherednik_rank1(1.0, 0.5, 4.0), SeriesDivergence);
}

TEST(Cherednik, EigenEquationResidual) {
  CherednikSeries s(Complex(1, 1), 0.5, 80);
  EXPECT_LT(std::abs(s.residual(0.3)), 1e-10);
  EXPECT_LT(std::abs(s.residual(-1.1)), 1e-10);
  CherednikSeries s2(Complex(-0.5, 3), 2.0, 120);
  EXPECT_LT(std::abs(s2.residual(1.5)), 1e-9);
}

TEST(Cherednik, LimitTransitionDecreases) {
  auto dev = limit_transition_check(Complex(0, 1), 0.5, 1.0, {1e-1, 1e-2, 1e-3});
  ASSERT_EQ(dev.size(), 3u);
  EXPECT_GT(dev[0], dev[1]);
  EXPECT_GT(dev[1], dev[2]);
  EXPECT_LT(dev[2], 1e-3);
  // C(−ρ, k, ·) ≡ 1 with ρ = k/2; at λ = 0 the deviation is O(ε).
  EXPECT_LT(std::abs(cherednik_rank1(-0.25, 0.5, 1.3).value - 1.0), 1e-15);
  auto at_zero = limit_transition_check(0.0, 0.5, 1.0, {1e-1, 1e-2, 1e-3});
  EXPECT_LT(at_zero[2], 1e-3);
  EXPECT_LT(at_zero[2], at_zero[0] / 50);
  for (double d : limit_transition_check(Complex(0.3, 2), 0.0, 1.0, {1e-1, 1e-2, 1e-3})) EXPECT_LT(d, 1e-12);
}

TEST(GammaRatio, FunctionalEquationCases) {
  for (double eps : {1.0, 1e-2, 1e-4}) {
    EXPECT_NEAR(gamma_ratio(1, 2.5, eps), 2.5, 1e-12);
    EXPECT_NEAR(gamma_ratio(0, 2.5, eps), 1.0, 1e-15);
    EXPECT_NEAR(gamma_ratio(2, 1, eps), std::sqrt(1 + eps * eps), 1e-12);
  }
  EXPECT_THROW(gamma_ratio(1, 0, 0.1), GammaPole);
}

TEST(GammaRatio, LimitAndBounds) {
  for (double a : {0.5, 1.0, 2.0})
    for (double s : {0.5, 1.0, 3.0}) EXPECT_NEAR(gamma_ratio(a, s, 1e-4), std::pow(s, a), 1e-6 * std::pow(s, a));
  std::vector<double> grid;
  for (int i = -400; i <= 400; ++i) grid.push_back(i * 0.05);
  for (double a : {-0.7, 0.5, 1.0, 2.5}) {
    auto fit = fit_gamma_bounds(a, grid);
    EXPECT_TRUE(fit.holds) << a;
    EXPECT_GT(fit.m1, 0);
  }
}
