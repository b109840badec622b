#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hklag/dualcurve.hpp"

using namespace hklag;

static HomogeneousPolynomial hp(const std::string& s) {
  return HomogeneousPolynomial::parse(s, 3);
}

TEST_CASE("dual of the conic") {
  auto r = dual_polynomial(hp("x0*x2 - x1^2"));
  CHECK(r.dual_degree == 2);
  // xi1^2 - 4 xi0 xi2 up to normalization
  auto want = HomogeneousPolynomial::parse("x1^2 - 4*x0*x2", 3);
  CHECK(r.dual_poly.poly() == want.poly().normalized());
}

TEST_CASE("dual of the cuspidal cubic") {
  auto r = dual_polynomial(hp("x0^3 - x1^2*x2"));
  // degree matches the pluecker count 3*2 - 3*1 = 3
  CHECK(r.dual_degree == 3);
  // the dual is again cuspidal: its own pluecker data must return degree 3
  // (checked numerically below through the formulas)
}

TEST_CASE("dual of the fermat cubic") {
  auto r = dual_polynomial(hp("x0^3 + x1^3 + x2^3"));
  CHECK(r.dual_degree == 6);
}

TEST_CASE("dual of the nodal cubic") {
  // x0^3 + x1^3 - x0 x1 x2: node at (0:0:1)
  auto r = dual_polynomial(hp("x0^3 + x1^3 - x0*x1*x2"));
  CHECK(r.dual_degree == 4);  // 3*2 - 2*1 = 4
}

TEST_CASE("dual polynomial preconditions") {
  CHECK_THROWS_AS(dual_polynomial(hp("x0 + x1")), DegreeTooSmall);
  CHECK_THROWS_AS(dual_polynomial(hp("x0^5 - x1^5")), DegreeTooLarge);
  CHECK_THROWS_AS(dual_polynomial(hp("x0^2*x2 + x0^2*x1")), NonReduced);
}

TEST_CASE("dual polynomial is canonical") {
  auto r = dual_polynomial(hp("x0*x2 - x1^2"));
  const Poly& p = r.dual_poly.poly();
  CHECK(p.content() == 1);
  CHECK(p.squarefree_part() == p.normalized());
  CHECK(p.terms().begin()->second > 0);
}

TEST_CASE("pluecker formulas") {
  auto a = pluecker(PlueckerTriple(3, 0, 0));
  CHECK(a.d_dual == 6);
  CHECK(a.kappa_dual == 9);
  auto b = pluecker(PlueckerTriple(2, 0, 0));
  CHECK(b.d_dual == 2);
  CHECK(b.kappa_dual == 0);
  auto c = pluecker(PlueckerTriple(3, 1, 0));
  CHECK(c.d_dual == 4);
  CHECK(c.kappa_dual == 3);

  CHECK_THROWS_AS(pluecker(PlueckerTriple(1, 0, 0)), DegreeTooSmall);
  CHECK_THROWS_AS(PlueckerTriple(3, 2, 0), std::invalid_argument);
}

TEST_CASE("pluecker involution on the cuspidal cubic") {
  // dual of the cuspidal cubic is cuspidal of degree 3: applying the
  // formula to (3, 0, 1) recovers 3
  auto fwd = pluecker(PlueckerTriple(3, 0, 1));
  CHECK(fwd.d_dual == 3);
  auto back = pluecker(PlueckerTriple(3, 0, 1));
  CHECK(back.d_dual == 3);
}

TEST_CASE("chi bar formula as printed") {
  CHECK(chi_bar_formula(PlueckerTriple(1, 0, 0)) == -2);
  CHECK(chi_bar_formula(PlueckerTriple(2, 0, 0)) == -2);
  CHECK(chi_bar_formula(PlueckerTriple(3, 0, 1)) == 3);
}

TEST_CASE("degree identity report calculates both sides") {
  auto conic = degree_identity_report(PlueckerTriple(2, 0, 0),
                                      PlueckerTriple(2, 0, 0));
  CHECK(conic.lhs == 6);
  CHECK(conic.rhs == 6);
  CHECK(conic.match);

  auto cubic = degree_identity_report(PlueckerTriple(3, 0, 0),
                                      PlueckerTriple(6, 0, 9));
  CHECK(cubic.lhs == 18);
  CHECK(cubic.rhs == -90);
  CHECK_FALSE(cubic.match);

  auto cusp = degree_identity_report(PlueckerTriple(3, 0, 1),
                                     PlueckerTriple(3, 0, 1));
  CHECK(cusp.lhs == 9);
  CHECK(cusp.rhs == -9);
  CHECK_FALSE(cusp.match);

  CHECK_THROWS_AS(degree_identity_report(PlueckerTriple(3, 0, 0),
                                         PlueckerTriple(4, 0, 0)),
                  InconsistentDualDegree);
}

TEST_CASE("bidual of the conic") {
  auto r = bidual_check(hp("x0*x2 - x1^2"));
  CHECK(r.proportional);
  CHECK(r.scalar == 1);
}

TEST_CASE("bidual of the cuspidal cubic") {
  auto r = bidual_check(hp("x0^3 - x1^2*x2"));
  CHECK(r.proportional);
}

TEST_CASE("bidual of the smooth cubic is gated") {
  CHECK_THROWS_AS(bidual_check(hp("x0^3 + x1^3 + x2^3")), DegreeTooLarge);
}
