// A short tour: Dunkl operators on B2, the rank-one kernel, a transform of a
// bump, and the three-dimensional spherical function.

#include <dunklkit/dunklkit.hpp>

#include <cmath>
#include <cstdio>

using namespace dunklkit;

int main() {
  const auto b2 = RootSystem<Rational>::build("b2");
  const DunklOperators<Rational> ops(b2, b2.multiplicity("1/2,3/2"));
  const auto p = parse_poly<Rational>("x0^2*x1 + x1^3", 2);
  std::printf("T_e1 (%s) = %s\n", to_text(p).c_str(), to_text(ops.apply({Rational(1), Rational(0)}, p)).c_str());
  std::printf("Δ_k  (%s) = %s\n", to_text(p).c_str(), to_text(ops.laplacian(p)).c_str());

  const Intertwiner<Rational> v(ops);
  const auto sq = parse_poly<Rational>("x0^2", 2);
  std::printf("V_k x0^2 = %s\n", to_text(v.vk(sq)).c_str());

  for (double x : {0.5, 1.0, 2.0}) {
    const KernelValue e = dunkl_kernel_z2(Complex(0, 1), 0.7, x);
    std::printf("Exp(i, 0.7, %.1f) = %.12f %+.12fi  (%s)\n", x, e.value.real(), e.value.imag(), e.method.c_str());
  }

  const RankOneTransform t(0.7);
  const auto bump = bump_function(1);
  for (double lambda : {0.0, 5.0, 20.0}) {
    const QuadResult r = t.forward(bump, Complex(lambda));
    std::printf("D_k bump(%4.1f) = %.3e  (est. error %.1e)\n", lambda, r.value.real(), r.error);
  }

  const FlatModel r3(3);
  const double mu = 2.5, x = 1.2;
  std::printf("sphere average in R^3 at iμx = %.15f, sin(μx)/(μx) = %.15f\n",
              sphere_average(r3, Complex(0, mu), x).value.real(), std::sin(mu * x) / (mu * x));
}
