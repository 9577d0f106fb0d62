#include <dunklkit/special.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace dunklkit;

namespace {

Complex j_half(Complex z) { return std::sqrt(2 / kPi) * std::sin(z) / std::sqrt(z); }
Complex j_three_halves(Complex z) { return std::sqrt(2 / kPi) * (std::sin(z) / z - std::cos(z)) / std::sqrt(z); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(gamma(Complex(5)).real(), 24.0, 1e-12);
  EXPECT_NEAR(gamma(Complex(0.5)).real(), std::sqrt(kPi), 1e-14);
  EXPECT_NEAR(gamma(Complex(-0.5)).real(), -2 * std::sqrt(kPi), 1e-13);
  EXPECT_NEAR(std::norm(gamma(Complex(0, 1))), kPi / std::sinh(kPi), 1e-14);
  for (double x : {0.1, 0.7, 1.3, 4.5, 17.25, 60.0})
    EXPECT_NEAR(log_gamma(Complex(x)).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
  EXPECT_THROW(log_gamma(Complex(-3)), GammaPole);
}

TEST(LogGamma, FunctionalEquationOffAxis) {
  for (Complex z : {Complex(0.3, 2.0), Complex(-2.7, 0.4), Complex(3.0, -15.0), Complex(0.0, 40.0)}) {
    const Complex lhs = std::exp(log_gamma(z + 1.0) - log_gamma(z));
    EXPECT_LT(rel(lhs, z), 1e-13) << z;
  }
}

TEST(LogGamma, RatioIsStableForLargeImaginaryPart) {
  for (double s : {0.5, 1.0, 3.0})
    for (double eps : {1e-1, 1e-2, 1e-4}) {
      const Complex z(0, s / eps);
      EXPECT_NEAR(std::abs(std::exp(log_gamma_ratio(z, 1.0))), s / eps, 1e-12 * s / eps);
      // Γ(z+2)/Γ(z) = z(z+1)
      EXPECT_LT(rel(std::exp(log_gamma_ratio(z, 2.0)), z * (z + 1.0)), 1e-13);
    }
  EXPECT_NEAR(std::abs(std::exp(log_gamma_ratio(Complex(0.2, 0.3), -1.5))),
              std::abs(gamma(Complex(-1.3, 0.3)) / gamma(Complex(0.2, 0.3))), 1e-12);
}

TEST(Bessel, HalfIntegerClosedForms) {
  EXPECT_LT(rel(bessel_j(0.5, 1.0).value, j_half(1.0)), 1e-15);
  EXPECT_LT(rel(bessel_j(1.5, 2.0).value, j_three_halves(2.0)), 1e-14);
  for (Complex z : {Complex(30, 5), Complex(-25, 3), Complex(-25, -3), Complex(3, 22), Complex(60, -1)}) {
    EXPECT_LT(rel(bessel_j(0.5, z).value, j_half(z)), 1e-13) << z;
    EXPECT_LT(rel(bessel_j(1.5, z).value, j_three_halves(z)), 1e-13) << z;
  }
  EXPECT_EQ(bessel_j(0.3, 0.0).value, Complex(0));
  EXPECT_EQ(bessel_j(0.0, 0.0).value, Complex(1));
}

TEST(Bessel, MatchesStandardLibraryOnRealAxis) {
  for (double nu : {0.0, 0.3, 1.0, 2.5, 4.0})
    for (double x : {0.01, 0.5, 3.0, 12.0, 19.9, 20.1, 35.0, 90.0}) {
      const double expect = std::cyl_bessel_j(nu, x);
      EXPECT_NEAR(bessel_j(nu, x).value.real(), expect, 2e-13) << nu << " " << x;
    }
  EXPECT_NEAR(bessel_j(-2.0, 3.0).value.real(), std::cyl_bessel_j(2.0, 3.0), 1e-14);
}

TEST(Bessel, SeriesAndAsymptoticsAgreeInOverlap) {
  for (double nu : {-0.3, 0.2, 0.5, 1.7, 3.2})
    for (double theta : {0.0, 0.4, 0.9, 1.3, 1.5707963267948966}) {
      const Complex z = std::polar(kBesselSeriesRadius, theta);
      const Complex series = detail::to_complex(detail::bessel_series(nu, detail::qcomplex(z)));
      const Complex asym = (detail::hankel_asymptotic(1, nu, z).value + detail::hankel_asymptotic(2, nu, z).value) / 2.0;
      EXPECT_LT(std::abs(series - asym), 1e-11 * std::max(1.0, std::abs(series))) << nu << " " << theta;
    }
}

TEST(Bessel, NormalizedFormIsEvenAndEntire) {
  EXPECT_LT(rel(normalized_bessel(0.5, Complex(1.3, 0.2)).value, std::sin(Complex(1.3, 0.2)) / Complex(1.3, 0.2)), 1e-15);
  EXPECT_LT(rel(normalized_bessel(-0.5, Complex(27, 4)).value, std::cos(Complex(27, 4))), 1e-13);
  for (Complex z : {Complex(5, 1), Complex(-30, 2), Complex(2, -25)})
    EXPECT_LT(rel(normalized_bessel(1.2, z).value, normalized_bessel(1.2, -z).value), 1e-14) << z;
  EXPECT_EQ(normalized_bessel(0.7, 0.0).value, Complex(1));
  EXPECT_THROW(normalized_bessel(0.3, Complex(0, 800)), BesselOverflow);
}

TEST(Hankel, ClosedFormAndRecombination) {
  const Complex z(1, 1);
  const Complex expect = Complex(0, -1) * std::sqrt(2.0 / (kPi * z)) * std::exp(Complex(0, 1) * z);
  EXPECT_LT(rel(hankel(1, 0.5, z).value, expect), 1e-14);
  for (Complex w : {Complex(2, 0), Complex(25, 0), Complex(-22, 1), Complex(3, -4), Complex(40, 30)}) {
    const Complex mean = (hankel(1, 0.3, w).value + hankel(2, 0.3, w).value) / 2.0;
    EXPECT_LT(std::abs(mean - bessel_j(0.3, w).value), 1e-10 * std::max(1.0, std::abs(mean))) << w;
  }
  const double decay = std::abs(hankel(1, 0.3, Complex(0, 10)).value);
  const double model = std::sqrt(2 / (kPi * 10)) * std::exp(-10.0);
  EXPECT_NEAR(decay / model, 1.0, 0.05);
}

TEST(Hankel, AsymptoticResidualDecaysLikeInverseArgument) {
  const double nu = 0.3;
  double fitted = 0;
  for (double r : {10.0, 15.0, 20.0, 30.0, 50.0, 100.0})
    for (double arg : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4}) {
      const Complex z = std::polar(r, arg);
      const Complex lead = std::sqrt(2.0 / (kPi * z)) * std::exp(Complex(0, 1) * (z - nu * kPi / 2 - kPi / 4));
      fitted = std::max(fitted, std::abs(hankel(1, nu, z).value / lead - 1.0) * r);
    }
  // First correction term: |4ν² − 1| / 8.
  EXPECT_LT(fitted, 2 * std::abs(4 * nu * nu - 1) / 8);
}

TEST(Hankel, IntegerOrderNeedsRegularization) {
  EXPECT_THROW(hankel(1, 1.0, Complex(2.0)), IntegerOrder);
  EXPECT_THROW(hankel(2, 0.0, Complex(2.0)), IntegerOrder);
  for (double x : {0.5, 5.0, 15.0}) {
    const Complex h = hankel_regularized(1, 1.0, x).value;
    EXPECT_NEAR(h.real(), std::cyl_bessel_j(1.0, x), 1e-10) << x;
    EXPECT_NEAR(h.imag(), std::cyl_neumann(1.0, x), 1e-10) << x;
  }
  EXPECT_LT(std::abs(hankel_regularized(1, 2.0, Complex(30, 1)).value - detail::hankel_asymptotic(1, 2.0, Complex(30, 1)).value),
            1e-10);
}

TEST(NormalizedBessel, RealAxisPathMatchesQuadSeries) {
  for (double nu : {-0.4, -0.2, 0.2, 0.5, 1.5, 3.0})
    for (double x : {0.01, 3.0, 9.9, 10.1, 14.0, 19.9}) {
      const double ref = static_cast<double>(crealq(detail::normalized_bessel_series(nu, detail::qcomplex(Complex(x)))));
      EXPECT_NEAR(normalized_bessel(nu, Complex(x)).value.real(), ref, 1e-13) << nu << " " << x;
      EXPECT_EQ(normalized_bessel(nu, Complex(-x)).value, normalized_bessel(nu, Complex(x)).value);
    }
  EXPECT_NEAR(normalized_bessel(-0.2, Complex(35)).value.real(), -0.27817283141438735283, 1e-15);
  EXPECT_NEAR(normalized_bessel(1.5, Complex(120)).value.real(), -0.00016861302999822065601, 1e-17);
  EXPECT_NEAR(normalized_bessel(0.2, Complex(900)).value.real(), 0.0066144674611874825039, 1e-15);
  EXPECT_NEAR(normalized_bessel(0.5, Complex(14.5)).value.real(), 0.06447552107066779555, 1e-15);
}
