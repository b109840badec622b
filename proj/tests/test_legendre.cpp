#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hklag/legendre.hpp"

using namespace hklag;
using Cx = std::complex<double>;

static HomogeneousPolynomial hp(const std::string& s, int nvars) {
  return HomogeneousPolynomial::parse(s, nvars);
}

TEST_CASE("legendre_map closed forms") {
  auto f = hp("x0*x1", 2);
  Cx a(2, 1), b(-1, 3);
  auto pt = legendre_map(f, {a, b});
  CHECK(std::abs(pt.xi[0] - b) < 1e-14);
  CHECK(std::abs(pt.xi[1] - a) < 1e-14);
  // dual value equals xi0*xi1 = ab
  CHECK(std::abs(pt.f_dual_value - pt.xi[0] * pt.xi[1]) < 1e-13);

  auto q = hp("x0*x2 - x1^2", 3);
  auto p2 = legendre_map(q, {1, 1, 1});
  CHECK(std::abs(p2.xi[0] - Cx(1)) < 1e-14);
  CHECK(std::abs(p2.xi[1] - Cx(-2)) < 1e-14);
  CHECK(std::abs(p2.xi[2] - Cx(1)) < 1e-14);
  CHECK(std::abs(p2.f_value) < 1e-14);
  CHECK(std::abs(p2.f_dual_value) < 1e-14);

  CHECK_THROWS_AS(legendre_map(f, {a}), DimensionMismatch);
}

TEST_CASE("dual value equals (p-1) f(x) on the image") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0, 1);
  for (const char* s : {"x0*x1", "x0*x2 - x1^2", "x0^3 - x1^2*x2",
                        "x0^3 + x1^3 + x2^3"}) {
    auto f = hp(s, 3);
    int p = f.degree();
    for (int it = 0; it < 10; ++it) {
      CVec x;
      for (int i = 0; i < 3; ++i) x.push_back(Cx(g(rng), g(rng)));
      auto pt = legendre_map(f, x);
      try {
        // warm start at the known preimage to stay on its branch of the
        // many-valued inverse gradient map
        Cx v = dual_value(f, pt.xi, x, NewtonConfig{.seed = 99});
        Cx want = double(p - 1) * pt.f_value;
        CHECK(std::abs(v - want) <= 1e-9 * (1 + std::abs(want)));
      } catch (const NoConvergence&) {
        // sampled near the discriminant; acceptable for this property
      }
    }
  }
}

TEST_CASE("legendre_invert explicit cases") {
  auto f = hp("x0*x1", 2);
  Cx a(3, 0), b(5, 0);
  auto inv = legendre_invert(f, {b, a});
  CHECK(std::abs(inv.x[0] - a) < 1e-10);
  CHECK(std::abs(inv.x[1] - b) < 1e-10);
  CHECK(inv.residual <= 1e-12);

  auto q = hp("x0*x2 - x1^2", 3);
  auto inv2 = legendre_invert(q, {1, -2, 1});
  // any gradient preimage is acceptable; verify by the forward map
  auto back = legendre_map(q, inv2.x);
  CHECK(std::abs(back.xi[0] - Cx(1)) < 1e-10);
  CHECK(std::abs(back.xi[1] - Cx(-2)) < 1e-10);
  CHECK(std::abs(back.xi[2] - Cx(1)) < 1e-10);
  CHECK(inv2.residual <= 1e-12);

  CHECK_THROWS_AS(legendre_invert(hp("x0 + x1", 2), {1, 1}), DegreeOne);
}

TEST_CASE("degenerate critical point is flagged") {
  auto f = hp("x0^3", 1);
  auto inv = legendre_invert(f, {0});
  CHECK(std::abs(inv.x[0]) < 1e-10);
  CHECK(inv.hessian_det_abs < 1e-8);  // Hessian 0 at the solution
}

TEST_CASE("dual_value closed form and trivial cases") {
  auto f = hp("x0*x1", 2);
  Cx v = dual_value(f, {2, 3});
  CHECK(std::abs(v - Cx(6)) < 1e-10);

  // xi = 0 gives 0 for any degree >= 2
  for (const char* s : {"x0*x1", "x0^3 + x1^3"}) {
    Cx z = dual_value(hp(s, 2), {0, 0});
    CHECK(std::abs(z) < 1e-12);
  }
}

TEST_CASE("dual value vanishes on gradients of zero-set points") {
  // Fermat quadric x0^2 - x1^2 - x2^2; points on the zero set
  auto f = hp("x0^2 - x1^2 - x2^2", 3);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0, 1);
  for (int it = 0; it < 10; ++it) {
    Cx x1(g(rng), g(rng)), x2(g(rng), g(rng));
    Cx x0 = std::sqrt(x1 * x1 + x2 * x2);
    CVec x = {x0, x1, x2};
    CHECK(std::abs(f.evaluate(x)) < 1e-12);
    auto pt = legendre_map(f, x);
    Cx v = dual_value(f, pt.xi, NewtonConfig{.seed = 5});
    CHECK(std::abs(v) <= 1e-9);
  }
}

TEST_CASE("round trip where the hessian is invertible") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0, 1);
  auto f = hp("x0^3 - x1^2*x2", 3);
  int done = 0;
  for (int it = 0; it < 30 && done < 10; ++it) {
    CVec x;
    for (int i = 0; i < 3; ++i) x.push_back(Cx(g(rng), g(rng)));
    auto pt = legendre_map(f, x);
    try {
      auto inv = legendre_invert(f, pt.xi, NewtonConfig{.seed = 4});
      if (inv.hessian_det_abs <= 1e-8) continue;
      auto back = legendre_map(f, inv.x);
      double err = 0;
      for (int i = 0; i < 3; ++i) err += std::abs(back.xi[i] - pt.xi[i]);
      CHECK(err <= 1e-9);
      ++done;
    } catch (const NoConvergence&) {
    }
  }
  CHECK(done >= 5);
}

TEST_CASE("involution residuals") {
  auto r1 = involution_check(hp("x0*x1", 2), 100, {.seed = 2});
  CHECK(r1.max_residual() <= 1e-9);

  auto r2 = involution_check(hp("x0*x2 - x1^2", 3), 100, {.seed = 2});
  CHECK(r2.max_residual() <= 1e-8);

  CHECK_THROWS_AS(involution_check(hp("x0", 1), 5, {}), DegreeOne);
}

TEST_CASE("gradient scaling covariance is exact") {
  // grad f(e x) = e^{p-1} grad f(x), checked symbolically
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int it = 0; it < 20; ++it) {
    int nvars = 2 + static_cast<int>(rng() % 2);
    int deg = 2 + static_cast<int>(rng() % 3);
    Poly p(nvars);
    std::vector<int> e(nvars, 0);
    // a couple of random monomials of the same degree
    for (int t = 0; t < 4; ++t) {
      int rem = deg;
      for (int i = 0; i < nvars - 1; ++i) {
        e[i] = static_cast<int>(rng() % (rem + 1));
        rem -= e[i];
      }
      e[nvars - 1] = rem;
      p.add_term(e, coef(rng));
    }
    if (p.is_zero()) continue;
    HomogeneousPolynomial f(p);
    Rational lambda(5, 3);
    for (int i = 0; i < nvars; ++i) {
      Poly d = f.poly().derivative(i);
      Poly scaled = d;
      for (int v = 0; v < nvars; ++v)
        scaled = scaled.substitute(v, lambda * Poly::variable(nvars, v));
      Rational lp = 1;
      for (int k = 0; k < deg - 1; ++k) lp *= lambda;
      CHECK(scaled == d * lp);
    }
  }
}

TEST_CASE("fermat closed forms") {
  auto r1 = fermat_dual(2, 3);
  CHECK(r1.q == Rational(2));
  CHECK(r1.dual_degree == 2);
  auto r2 = fermat_dual(3, 2);
  CHECK(r2.q == Rational(3, 2));
  CHECK(r2.dual_degree == 6);
  auto r3 = fermat_dual(4, 2);
  CHECK(r3.q == Rational(4, 3));
  CHECK(r3.dual_degree == 12);
}
