#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hklag/symplin.hpp"

using namespace hklag;

// span of standard basis vectors, 1-indexed to match the usual e1..e2n
// notation (e1 -> coordinate 0).
static SymplecticSubspace span_of(const SymplecticSpace& sp,
                                  std::initializer_list<int> idx) {
  RatMat rows;
  for (int i : idx) {
    RatVec v(sp.dim(), 0);
    v[i - 1] = 1;
    rows.push_back(std::move(v));
  }
  return SymplecticSubspace(sp, rows);
}

TEST_CASE("row reduction basics") {
  RatMat m = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(rank(m) == 2);
  RatMat e = rref(m);
  CHECK(e[0] == RatVec{1, 0, 1});
  CHECK(e[1] == RatVec{0, 1, 1});
  RatMat ker = nullspace(m);
  REQUIRE(ker.size() == 1);
  // kernel vector (-1, -1, 1)
  CHECK(ker[0] == RatVec{-1, -1, 1});
}

TEST_CASE("perp explicit cases") {
  SymplecticSpace s2(2);
  CHECK(perp(span_of(s2, {1, 2})).same_space(span_of(s2, {1, 2})));
  CHECK(perp(span_of(s2, {1})).same_space(span_of(s2, {1, 2, 4})));

  SymplecticSpace s3(3);
  CHECK(perp(span_of(s3, {1, 2, 3, 4})).same_space(span_of(s3, {2, 3})));
}

TEST_CASE("perp is an involution with complementary dimension") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + static_cast<int>(rng() % 4);
    SymplecticSpace sp(n);
    int d = 1 + static_cast<int>(rng() % (2 * n));
    RatMat rows;
    for (int i = 0; i < d; ++i) {
      RatVec v(2 * n);
      for (auto& x : v) x = coef(rng);
      rows.push_back(std::move(v));
    }
    rows = row_space_basis(rows);
    if (rows.empty()) continue;
    SymplecticSubspace c(sp, rows);
    SymplecticSubspace p = perp(c);
    CHECK(c.dim() + p.dim() == 2 * n);
    CHECK(perp(p).same_space(c));
  }
}

TEST_CASE("classify explicit cases") {
  SymplecticSpace s2(2);
  CHECK(classify(span_of(s2, {1})) == Classification::Isotropic);
  CHECK(classify(span_of(s2, {1, 2})) == Classification::Lagrangian);
  CHECK(classify(span_of(s2, {1, 2, 3})) == Classification::Coisotropic);
  CHECK(classify(span_of(s2, {1, 3})) == Classification::None);
}

TEST_CASE("wedge power vanishing explicit cases") {
  SymplecticSpace s3(3);
  CHECK(wedge_power_vanishes(span_of(s3, {1, 2, 3, 4}), 2));
  CHECK_FALSE(wedge_power_vanishes(span_of(s3, {1, 4, 2, 5}), 2));
  CHECK_THROWS_AS(wedge_power_vanishes(span_of(s3, {1}), 0), BadExponent);
  CHECK_THROWS_AS(wedge_power_vanishes(span_of(s3, {1}), 4), BadExponent);
}

TEST_CASE("hyperplane criterion") {
  SymplecticSpace s2(2);
  // z1 = 0, z2 = 0: intersection span(e3, e4), Lagrangian
  RatMat good = {{1, 0, 0, 0}, {0, 1, 0, 0}};
  auto r1 = coisotropic_via_hyperplanes(s2, good);
  CHECK(r1.coisotropic);
  CHECK_FALSE(r1.witness.has_value());
  CHECK(classify(hyperplane_intersection(s2, good)) ==
        Classification::Lagrangian);

  // z1 = 0, z3 = 0: intersection span(e2, e4) is symplectic
  RatMat bad = {{1, 0, 0, 0}, {0, 0, 1, 0}};
  auto r2 = coisotropic_via_hyperplanes(s2, bad);
  CHECK_FALSE(r2.coisotropic);
  REQUIRE(r2.witness.has_value());
  CHECK(*r2.witness == std::make_pair(0, 1));

  RatMat dep = {{1, 0, 0, 0}, {2, 0, 0, 0}};
  CHECK_THROWS_AS(coisotropic_via_hyperplanes(s2, dep), DependentHyperplanes);
}

TEST_CASE("reduction of a coisotropic subspace") {
  SymplecticSpace s2(2);
  auto d = span_of(s2, {1, 2, 3});
  auto red = reduce(d);
  CHECK(red.quotient.dim() == 2);
  CHECK(row_space_basis(red.dperp) == span_of(s2, {2}).basis);
  // induced pairing on [e1], [e3] is the standard one
  CHECK(red.quotient.gram[0][1] == 1);
  CHECK(red.quotient.gram[1][0] == -1);

  RatVec e3(4, 0);
  e3[2] = 1;
  CHECK(red.project(e3) == RatVec{0, 1});
  RatVec e2(4, 0);
  e2[1] = 1;
  CHECK(red.project(e2) == RatVec{0, 0});

  CHECK_THROWS_AS(reduce(span_of(s2, {1, 3})), NotCoisotropic);
}

TEST_CASE("lagrangian projection and reduction") {
  SymplecticSpace s2(2);
  auto c = span_of(s2, {3, 4});
  auto d = span_of(s2, {1, 2, 3});
  auto proj = lag_project(c, d);
  CHECK(proj.same_space(span_of(s2, {2, 3})));
  CHECK(classify(proj) == Classification::Lagrangian);

  auto red = reduce(d);
  auto img = lag_reduce(c, d, red);
  REQUIRE(img.dim() == 1);
  CHECK(img.basis[0] == RatVec{0, 1});
  CHECK(classify(img) == Classification::Lagrangian);

  // C = D Lagrangian: everything collapses to the zero subspace of a
  // zero-dimensional quotient
  auto l = span_of(s2, {1, 2});
  auto redl = reduce(l);
  CHECK(redl.quotient.dim() == 0);
  auto img0 = lag_reduce(l, l, redl);
  CHECK(img0.dim() == 0);

  CHECK_THROWS_AS(lag_project(span_of(s2, {1}), d), NotLagrangian);
  CHECK_THROWS_AS(lag_project(c, span_of(s2, {1, 3})), NotCoisotropic);
}

TEST_CASE("lag_project of a generic lagrangian stays lagrangian") {
  SymplecticSpace s2(2);
  // graph of a symmetric matrix [[1,2],[2,3]]: span(e1 + f-part, ...)
  RatMat rows = {{1, 0, 1, 2}, {0, 1, 2, 3}};
  SymplecticSubspace c(s2, rows);
  REQUIRE(classify(c) == Classification::Lagrangian);
  auto d = span_of(s2, {1, 2, 3});
  auto proj = lag_project(c, d);
  CHECK(classify(proj) == Classification::Lagrangian);
  CHECK(d.contains(intersect(c, d)));
}

TEST_CASE("classification agrees with wedge and hyperplane criteria") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-5, 5);
  int tested = 0;
  while (tested < 200) {
    int n = 1 + static_cast<int>(rng() % 4);
    SymplecticSpace sp(n);
    int d = 1 + static_cast<int>(rng() % (2 * n));
    RatMat rows;
    for (int i = 0; i < d; ++i) {
      RatVec v(2 * n);
      for (auto& x : v) x = coef(rng);
      rows.push_back(std::move(v));
    }
    rows = row_space_basis(rows);
    if (rows.empty()) continue;
    SymplecticSubspace c(sp, rows);
    Classification cls = classify(c);
    bool iso = cls == Classification::Isotropic ||
               cls == Classification::Lagrangian;
    bool coiso = cls == Classification::Coisotropic ||
                 cls == Classification::Lagrangian;
    // isotropic iff the restricted form itself vanishes
    CHECK(wedge_power_vanishes(c, 1) == iso);
    // coisotropic iff every pairwise hyperplane intersection passes
    RatMat covectors = nullspace(c.basis);
    if (!covectors.empty()) {
      auto hc = coisotropic_via_hyperplanes(sp, covectors);
      CHECK(hc.coisotropic == coiso);
    } else {
      CHECK(coiso);  // full space
    }
    ++tested;
  }
}
