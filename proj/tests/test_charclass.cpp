#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hklag/charclass.hpp"

using namespace hklag;

// hand-checkable rank-one expansions of the three genera, frozen from the
// taylor series of (t/2)/sinh(t/2), t/tanh t and t/(1 - e^{-t})
TEST_CASE("rank-one genus expansions") {
  auto ahat = genus_series(GenusKind::AHat, 1, 4);
  Poly ea(1);
  ea.add_term({0}, 1);
  ea.add_term({2}, Rational(-1, 24));
  ea.add_term({4}, Rational(7, 5760));
  CHECK(ahat.poly() == ea);

  auto l = genus_series(GenusKind::L, 1, 4);
  Poly el(1);
  el.add_term({0}, 1);
  el.add_term({2}, Rational(1, 3));
  el.add_term({4}, Rational(-1, 45));
  CHECK(l.poly() == el);

  auto todd = genus_series(GenusKind::Todd, 1, 2);
  Poly et(1);
  et.add_term({0}, 1);
  et.add_term({1}, Rational(1, 2));
  et.add_term({2}, Rational(1, 12));
  CHECK(todd.poly() == et);
}

TEST_CASE("truncation cap") {
  CHECK_THROWS_AS(genus_series(GenusKind::AHat, 1, 13), TruncationTooLarge);
  CHECK_NOTHROW(genus_series(GenusKind::L, 2, 12));
}

TEST_CASE("chern class of E + E^*") {
  // rank 1: (1 + c1)(1 - c1) = 1 - c1^2
  auto s1 = chern_of_E_plus_Edual(1, 4);
  Poly e1(1);
  e1.add_term({0}, 1);
  e1.add_term({2}, -1);
  CHECK(s1.poly() == e1);

  // odd graded components vanish identically for every rank
  for (int rank = 1; rank <= 4; ++rank) {
    auto s = chern_of_E_plus_Edual(rank, 8);
    for (int k = 1; k <= 8; k += 2) CHECK(s.component(k).is_zero());
    // top component is (-1)^r c_r^2
    if (2 * rank <= 8) {
      Poly top = Poly::variable(rank, rank - 1, 2);
      Rational sign = (rank % 2 == 0) ? 1 : -1;
      CHECK(s.component(2 * rank) == top * sign);
    }
  }
}

TEST_CASE("pontrjagin classes") {
  // rank 1: p_1 = c1^2
  CHECK(pontrjagin_class(1, 4, 1) == Poly::variable(1, 0, 2));
  // rank 2: p_1 = c1^2 - 2 c2
  Poly p1(2);
  p1.add_term({2, 0}, 1);
  p1.add_term({0, 1}, -2);
  CHECK(pontrjagin_class(2, 4, 1) == p1);
  // rank 2: p_2 = c2^2
  Poly p2(2);
  p2.add_term({0, 2}, 1);
  CHECK(pontrjagin_class(2, 4, 2) == p2);
  CHECK_THROWS_AS(pontrjagin_class(2, 4, 3), TruncationTooLarge);
}

// genus(E + F) = genus(E) genus(F), checked on two rank-one factors by
// substituting the whitney sum chern classes into the rank-two sequence
TEST_CASE("genera are multiplicative") {
  const int N = 8;
  Poly u = Poly::variable(2, 0), v = Poly::variable(2, 1);
  std::vector<Poly> sum_chern = {u + v, u * v};
  for (auto kind : {GenusKind::AHat, GenusKind::Todd, GenusKind::L}) {
    auto of_sum = genus_series(kind, 2, N).compose(2, sum_chern);
    auto g1 = genus_series(kind, 1, N);
    auto in_u = g1.compose(2, {u});
    auto in_v = g1.compose(2, {v});
    CHECK(of_sum == in_u * in_v);
  }
}

TEST_CASE("square root of a class series") {
  for (int rank : {1, 2, 3}) {
    auto a = genus_series(GenusKind::AHat, rank, 8);
    CHECK(sqrt_series(a * a) == a);
    auto l = genus_series(GenusKind::L, rank, 8);
    auto r = sqrt_series(l);
    CHECK(r * r == l);
    CHECK(sqrt_series(ClassSeries::one(rank, 8)) ==
          ClassSeries::one(rank, 8));
  }
  auto bad = ClassSeries::one(1, 4) * Rational(2);
  CHECK_THROWS_AS(sqrt_series(bad), BadConstantTerm);
}

// Todd(E + E^*) = Ahat(E + E^*) = Ahat(E)^2: c1 of E + E^* vanishes, so
// the todd and ahat sequences agree on it, and the square comes from
// multiplicativity plus evenness of the ahat characteristic series
TEST_CASE("ahat square identity") {
  CHECK(a_hat_square_identity(1, 4));
  CHECK(a_hat_square_identity(2, 6));
  CHECK(a_hat_square_identity(3, 8));
}
