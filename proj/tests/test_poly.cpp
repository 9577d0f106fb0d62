#include <dunklkit/poly.hpp>
#include <dunklkit/root_system.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dunklkit;
using P = Poly<Rational>;

namespace {

P parse2(const char* s) { return parse_poly(s, 2); }

P random_poly(std::mt19937& rng, std::size_t dim, int max_degree) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  P p(dim);
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& e : monomials_of_degree(dim, d))
      if (rng() % 3 == 0) p.add_term(e, Rational(coeff(rng), den(rng)));
  return p;
}

}  // namespace

TEST(PolyArithmetic, DifferenceOfSquares) {
  EXPECT_EQ(parse2("(x+y)*(x-y)"), parse2("x^2 - y^2"));
}

TEST(PolyArithmetic, AdditiveIdentity) {
  P p = parse2("3/2*x^3*y - 7*y + 1");
  const P zero(2);
  EXPECT_EQ(p + zero, p);
}

TEST(PolyArithmetic, ScaleUndoesHalving) {
  EXPECT_EQ(parse2("x/2") * Rational(2), parse2("x"));
}

TEST(PolyArithmetic, DimensionMismatchThrows) {
  EXPECT_THROW(parse_poly("x", 1) + parse_poly("x", 2), DimensionMismatch);
}

TEST(PolyArithmetic, NoZeroCoefficientsStored) {
  P p = parse2("x + y - x");
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.degree(), 1);
}

TEST(PolyDerivative, Basics) {
  P x2 = parse_poly("x^2", 1);
  EXPECT_EQ(x2.partial(0), parse_poly("2*x", 1));
  std::vector<Rational> xi{1, 1};
  EXPECT_TRUE(P::constant(2, 1).dir_derivative(xi).is_zero());
  EXPECT_EQ(parse2("x*y").dir_derivative(xi), parse2("x + y"));
}

TEST(PolyDerivative, DropsDegreeByOneOnHomogeneous) {
  std::mt19937 rng(7);
  std::vector<Rational> xi{Rational(2, 3), -1};
  for (int t = 0; t < 20; ++t) {
    P p = random_poly(rng, 2, 6).homogeneous_component(5);
    P d = p.dir_derivative(xi);
    if (!d.is_zero()) {
      EXPECT_EQ(d.degree(), 4);
      EXPECT_TRUE(d.is_homogeneous());
    }
  }
}

TEST(PolyGroupAction, ReflectionsAndComposition) {
  auto z2 = RootSystem<Rational>::build("z2");
  EXPECT_EQ(parse_poly("x^3", 1).substitute(z2.group()[1].matrix.transpose()), parse_poly("-x^3", 1));
  auto b2 = RootSystem<Rational>::build("b2");
  auto r1 = reflection_matrix(std::vector<Rational>{1, 0});
  EXPECT_EQ(parse2("x + y").substitute(r1), parse2("-x + y"));
  EXPECT_EQ(parse2("x^2 + y").substitute(r1), parse2("x^2 + y"));
  // (gh)·p = g·(h·p) with g·p = p(gᵀx).
  std::mt19937 rng(3);
  P p = random_poly(rng, 2, 5);
  auto act = [](const Matrix<Rational>& g, const P& q) { return q.substitute(g.transpose()); };
  for (const auto& g : b2.group())
    for (const auto& h : b2.group()) EXPECT_EQ(act(g.matrix * h.matrix, p), act(g.matrix, act(h.matrix, p)));
}

TEST(PolyGroupAction, GeneralMatrixMatchesPermutationFastPath) {
  std::mt19937 rng(11);
  P p = random_poly(rng, 3, 4);
  Matrix<Rational> perm(3, 3);
  perm(0, 1) = 1;
  perm(1, 2) = -1;
  perm(2, 0) = 1;
  Matrix<Rational> perturbed = perm;
  perturbed(0, 0) = Rational(1, 3);
  // The signed-permutation shortcut must equal the expanded substitution.
  P fast = p.substitute(perm);
  P slow(3);
  for (const auto& [e, c] : p.terms()) {
    P t = P::constant(3, c);
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<Rational> row{perm(i, 0), perm(i, 1), perm(i, 2)};
      t = t * P::linear_form(row).pow(e[i]);
    }
    slow += t;
  }
  EXPECT_EQ(fast, slow);
  EXPECT_NE(p.substitute(perturbed), fast);
}

TEST(PolyDivision, Examples) {
  std::vector<Rational> one{1};
  EXPECT_TRUE(P(1).divide_linear(one).is_zero());  // x² − (−x)² = 0
  EXPECT_EQ(parse_poly("2*x^3", 1).divide_linear(std::vector<Rational>{2}), parse_poly("x^2", 1));
  EXPECT_THROW(parse_poly("x^2 + 1", 1).divide_linear(one), NonDivisible);
  std::vector<Rational> a{1, -1};
  EXPECT_EQ(parse2("x^2 - y^2").divide_linear(a), parse2("x + y"));
}

TEST(PolyDivision, ReflectionDifferenceAlwaysDivides) {
  std::mt19937 rng(2024);
  for (const char* tag : {"z2", "a2", "b2", "a1xa1", "i2:6"}) {
    auto rs = RootSystem<Rational>::build(tag);
    for (int t = 0; t < 6; ++t) {
      P p = random_poly(rng, rs.dim(), 8);
      for (const auto& alpha : rs.roots()) {
        P num = p - p.substitute(reflection_matrix(alpha));
        P q = num.divide_linear(alpha);
        EXPECT_EQ(q * P::linear_form(alpha), num) << tag;
      }
    }
  }
}

TEST(PolyDivision, FloatingFieldDividesWithinTolerance) {
  auto rs = RootSystem<double>::build("i2:5");
  std::mt19937 rng(5);
  P exact = random_poly(rng, 2, 6);
  Poly<double> p = exact.convert<double>();
  for (const auto& alpha : rs.roots()) {
    Poly<double> num = p - p.substitute(reflection_matrix(alpha));
    Poly<double> q = num.divide_linear(alpha);
    Poly<double> back = q * Poly<double>::linear_form(alpha) - num;
    EXPECT_LT(back.max_abs(), 1e-10);
  }
}

TEST(PolyEvaluate, Examples) {
  EXPECT_EQ(parse_poly("x^2 + 1", 1).evaluate<Rational>(std::vector<Rational>{2}), Rational(5));
  P p = parse2("3*x*y + 2*x - 4");
  EXPECT_EQ(p.evaluate<Rational>(std::vector<Rational>{0, 0}), p.constant_term());
  auto v = parse2("x*y").evaluate<Complex>(std::vector<Complex>{{0, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(v.real(), -1.0);
  EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(PolyHomogeneous, ComponentsSumBack) {
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    P p = random_poly(rng, 3, 7);
    P sum(3);
    for (const auto& c : p.homogeneous_components()) {
      EXPECT_TRUE(c.is_homogeneous());
      sum += c;
    }
    EXPECT_EQ(sum, p);
  }
}

TEST(PolyText, RoundTripIsStable) {
  P p = parse2("-3/2*x^2*y + y^3 - x + 7/3");
  EXPECT_EQ(to_text(p), "-3/2*x0^2*x1 + x1^3 - x0 + 7/3");
  EXPECT_EQ(parse_poly(to_text(p), 2), p);
  EXPECT_EQ(to_text(P(2)), "0");
}

TEST(PolyText, RejectsUnknownVariable) {
  EXPECT_THROW(parse_poly("x + w", 2), ParseError);
  EXPECT_THROW(parse_poly("x2", 2), ParseError);
}

TEST(RationalParse, DecimalsAndLeadingZerosAreBaseTen) {
  EXPECT_EQ(parse_rational("0.300000"), Rational(3, 10));
  EXPECT_EQ(parse_rational("007/010"), Rational(7, 10));
  EXPECT_EQ(parse_rational("-2.5e-1"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("1e3"), Rational(1000));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("0x10"), ParseError);
}
