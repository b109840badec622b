#include "hklag/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <random>

#include "hklag/charclass.hpp"
#include "hklag/dualcurve.hpp"
#include "hklag/hk.hpp"
#include "hklag/lagclass.hpp"
#include "hklag/legendre.hpp"
#include "hklag/symplin.hpp"

namespace hklag {

namespace {

using Cx = std::complex<double>;

std::uint64_t item_seed(std::uint64_t seed, int index) {
  // splitmix64 step keeps per-item streams independent of each other
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct ItemBuilder {
  VerifyItem item;
  bool exact_ok = true;

  explicit ItemBuilder(std::string name) { item.name = std::move(name); }

  void require(bool ok) { exact_ok = exact_ok && ok; }
  void residual(std::string name, double value, double tol) {
    item.residuals.push_back({std::move(name), value, tol});
  }
  VerifyItem finish(std::chrono::steady_clock::time_point t0) {
    bool ok = exact_ok;
    for (const auto& r : item.residuals)
      ok = ok && std::isfinite(r.value) && r.value <= r.tolerance;
    item.pass = ok;
    item.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return item;
  }
};

VerifyItem check_dual_conic() {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("dual_conic");
  try {
    auto f = HomogeneousPolynomial::parse("x0*x2 - x1^2", 3);
    auto r = dual_polynomial(f);
    auto expected = parse_poly("x1^2 - 4*x0*x2", 3).normalized();
    b.require(r.dual_degree == 2);
    b.require(r.dual_poly.poly() == expected);
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_pluecker() {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("pluecker_numbers");
  try {
    auto p1 = pluecker({3, 0, 0});
    b.require(p1.d_dual == 6 && p1.kappa_dual == 9);
    auto p2 = pluecker({3, 1, 0});
    b.require(p2.d_dual == 4 && p2.kappa_dual == 3);
    auto p3 = pluecker({2, 0, 0});
    b.require(p3.d_dual == 2 && p3.kappa_dual == 0);
    // elimination cross-check: the cuspidal cubic has dual degree 3
    auto cusp = HomogeneousPolynomial::parse("x0^3 - x1^2*x2", 3);
    b.require(dual_polynomial(cusp).dual_degree == 3);
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_bidual() {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("biduality");
  try {
    auto conic = HomogeneousPolynomial::parse("x0*x2 - x1^2", 3);
    b.require(bidual_check(conic).proportional);
    auto cusp = HomogeneousPolynomial::parse("x0^3 - x1^2*x2", 3);
    b.require(bidual_check(cusp).proportional);
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_legendre(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("legendre_relation");
  try {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    struct Case {
      const char* text;
      int nvars;
    };
    for (Case c : {Case{"x0*x1", 2}, Case{"x0*x2 - x1^2", 3},
                   Case{"x0^3 - x1^2*x2", 3}}) {
      auto f = HomogeneousPolynomial::parse(c.text, c.nvars);
      int p = f.degree();
      NewtonConfig ncfg;
      ncfg.seed = rng();
      double worst = 0;
      for (int it = 0; it < 100; ++it) {
        CVec x(c.nvars);
        for (auto& v : x) v = Cx(g(rng), g(rng));
        auto pt = legendre_map(f, x);
        Cx fd = dual_value(f, pt.xi, x, ncfg);
        double rel = std::abs(fd - double(p - 1) * pt.f_value) /
                     (1 + std::abs(pt.f_value));
        worst = std::max(worst, rel);
      }
      b.residual(std::string("relation:") + c.text, worst, 1e-9);

      // samples on the zero set: the dual value must vanish
      double worst0 = 0;
      for (int it = 0; it < 20; ++it) {
        CVec x;
        if (std::string(c.text) == "x0*x1") {
          x = {0, Cx(g(rng), g(rng))};
        } else if (std::string(c.text) == "x0*x2 - x1^2") {
          Cx t(g(rng), g(rng));
          x = {1, t, t * t};
        } else {
          Cx a(g(rng), g(rng)), bb(1 + std::abs(g(rng)), g(rng));
          x = {a, bb, a * a * a / (bb * bb)};
        }
        auto pt = legendre_map(f, x);
        worst0 = std::max(worst0, std::abs(dual_value(f, pt.xi, x, ncfg)));
      }
      b.residual(std::string("zero_set:") + c.text, worst0, 1e-9);
    }
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

QuotientPoint random_level_point(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0, 1);
  for (;;) {
    HKVec x(d), eta(d);
    for (int i = 0; i < d; ++i) {
      x[i] = Cx(g(rng), g(rng));
      eta[i] = Cx(g(rng), g(rng));
    }
    int k = 0;
    for (int i = 1; i < d; ++i)
      if (std::abs(x[i]) > std::abs(x[k])) k = i;
    Cx rest = 0;
    for (int i = 0; i < d; ++i)
      if (i != k) rest += eta[i] * x[i];
    eta[k] = -rest / x[k];
    double n2 = 0;
    for (auto& v : eta) n2 += std::norm(v);
    if (n2 < 1e-4) continue;
    return level_normalize(x, eta);
  }
}

VerifyItem check_flop(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("flop_suite");
  try {
    std::mt19937_64 rng(seed);
    for (int n : {1, 2, 3}) {
      double level = 0, invol = 0;
      for (int it = 0; it < 100; ++it) {
        auto p = random_level_point(rng, n + 1);
        auto q = flop(p);
        auto m = moment_maps(q.x, q.xi);
        level = std::max(level, std::abs(m.mu_c));
        level = std::max(level, std::abs(m.mu_J - Cx(0, -1)));
        auto back = flop(q);
        double dist = 0;
        for (size_t i = 0; i < p.x.size(); ++i)
          dist +=
              std::abs(back.x[i] - p.x[i]) + std::abs(back.xi[i] - p.xi[i]);
        invol = std::max(invol, dist);
      }
      std::string tag = std::to_string(n);
      b.residual("level:n=" + tag, level, 1e-10);
      b.residual("involution:n=" + tag, invol, 1e-10);
      NumericConfig cfg;
      cfg.fd_step = 1e-5;
      cfg.samples = n < 3 ? 100 : 40;
      cfg.seed = rng();
      b.residual("pullback:n=" + tag, symplectic_pullback_check(n, cfg),
                 1e-6);
    }
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_calabi(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("calabi_metric");
  try {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 0.5);
    NumericConfig cfg;
    cfg.fd_step = 1e-3;
    for (int n : {1, 2}) {
      double herm = 0, lo = 0, hi = 0;
      bool posdef = true, first = true;
      for (int it = 0; it < (n == 1 ? 50 : 20); ++it) {
        CotangentChart c;
        for (int i = 0; i < n; ++i) {
          c.z.push_back(Cx(g(rng), g(rng)));
          c.zeta.push_back(Cx(g(rng), g(rng)));
        }
        auto m = calabi_metric(c, cfg);
        herm = std::max(herm, (m.g - m.g.adjoint()).norm());
        posdef = posdef && m.min_eigenvalue > 0;
        if (first || m.det < lo) lo = m.det;
        if (first || m.det > hi) hi = m.det;
        first = false;
      }
      std::string tag = std::to_string(n);
      b.residual("hermitian:n=" + tag, herm, 1e-6);
      b.residual("det_spread:n=" + tag, (hi - lo) / std::abs(hi), 1e-6);
      b.require(posdef);
    }
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_conormal(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("conormal_transport");
  try {
    std::mt19937_64 rng(seed);
    NumericConfig cfg;
    cfg.seed = rng();
    auto conic = HomogeneousPolynomial::parse("x0*x2 - x1^2", 3);
    auto r1 = conormal_transport(conic, 20, cfg);
    b.require(r1.samples_used == 20);
    b.residual("conic", r1.max_residual, 1e-8);
    cfg.seed = rng();
    auto fermat = HomogeneousPolynomial::parse("x0^2 - x1^2 - x2^2", 3);
    auto r2 = conormal_transport(fermat, 20, cfg);
    b.require(r2.samples_used == 20);
    b.residual("fermat_quadric", r2.max_residual, 1e-8);
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_symplin(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("symplectic_linear_algebra");
  try {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-5, 5);
    int tested = 0;
    while (tested < 500) {
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
      b.require(wedge_power_vanishes(c, 1) == iso);
      RatMat covectors = nullspace(c.basis);
      if (!covectors.empty())
        b.require(coisotropic_via_hyperplanes(sp, covectors).coisotropic ==
                  coiso);
      else
        b.require(coiso);
      ++tested;
    }

    // lagrangian projection/reduction always lands on lagrangians
    for (int it = 0; it < 60; ++it) {
      int n = 1 + static_cast<int>(rng() % 3);
      SymplecticSpace sp(n);
      auto graph_lagrangian = [&]() {
        RatMat s(n, RatVec(n, 0));
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) s[i][j] = s[j][i] = coef(rng);
        RatMat rows(n, RatVec(2 * n, 0));
        for (int i = 0; i < n; ++i) {
          rows[i][i] = 1;
          for (int j = 0; j < n; ++j) rows[i][n + j] = s[i][j];
        }
        return SymplecticSubspace(sp, rows);
      };
      auto c = graph_lagrangian();
      auto l2 = graph_lagrangian();
      int keep = 1 + static_cast<int>(rng() % n);
      RatMat iso_rows(l2.basis.begin(), l2.basis.begin() + keep);
      auto d = perp(SymplecticSubspace(sp, iso_rows));
      b.require(classify(d) != Classification::None);
      b.require(classify(lag_project(c, d)) == Classification::Lagrangian);
      auto red = reduce(d);
      auto img = lag_reduce(c, d, red);
      if (red.quotient.dim() > 0)
        b.require(classify(img) == Classification::Lagrangian);
    }
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

LagrangianClassTable random_table(std::mt19937_64& rng, int n, int k) {
  std::uniform_int_distribution<int> small(-20, 20);
  IntVec a(k), b(k);
  for (int i = 0; i < k; ++i) {
    b[i] = small(rng);
    a[i] = b[i] + Integer(n + 1) * Integer(small(rng) % 5);
  }
  Integer eps = (n % 2 == 0) ? 1 : -1;
  IntMat s(k, IntVec(k)), sd(k, IntVec(k));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      s[i][j] = s[j][i] = small(rng);
      Integer diff = (a[i] * a[j] - b[i] * b[j]) / Integer(n + 1);
      sd[i][j] = sd[j][i] = s[i][j] - eps * diff;
    }
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("C" + std::to_string(i));
  return LagrangianClassTable(n, labels, s, a, b, sd);
}

VerifyItem check_lagclass(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("normalized_transform_tables");
  try {
    std::mt19937_64 rng(seed);
    for (int it = 0; it < 1000; ++it) {
      int n = 1 + static_cast<int>(rng() % 4);
      int k = 1 + static_cast<int>(rng() % 4);
      auto t = random_table(rng, n, k);
      b.require(transform_preserves_product(t));
      for (int i = 0; i < k; ++i) {
        b.require(transformed_pairing_with_p(t, i) == Rational(t.a[i]));
        for (int j = 0; j < k; ++j) {
          auto sides = pluecker_type_check(t, i, j);
          b.require(sides.lhs == sides.rhs);
        }
      }
      if (k >= 2) {
        // the shared-center generalization specializes to the same data
        MukaiCenterData d;
        d.k = n;
        d.a1 = t.a[0];
        d.a2 = t.a[1];
        d.g = t.p_dot_p();
        d.b1 = t.b[0];
        d.b2 = t.b[1];
        d.s12 = t.s[0][1];
        d.s12_dual = t.s_dual[0][1];
        auto m = mukai_pluecker_check(d);
        b.require(m.lhs == m.rhs && m.product_preserved);
      }
    }
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_reflection(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("reflection_variant");
  try {
    GramLattice l(3, {{-2, 1, 0}, {1, 0, 1}, {0, 1, -2}});
    IntVec p = {1, 0, 0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-6, 6);
    b.require(k3_reflection_variant(l, p, p) == IntVec{-1, 0, 0});
    for (int it = 0; it < 100; ++it) {
      IntVec c1(3), c2(3);
      for (int i = 0; i < 3; ++i) {
        c1[i] = small(rng);
        c2[i] = small(rng);
      }
      auto r1 = k3_reflection_variant(l, p, c1);
      auto r2 = k3_reflection_variant(l, p, c2);
      b.require(gram_pair(l, r1, r2) == gram_pair(l, c1, c2));
      b.require(k3_reflection_variant(l, p, r1) == c1);
      if (gram_pair(l, c1, p) == 0) b.require(r1 == c1);
    }
    // fixed regression: the verbatim formula sends P to 3P, which has
    // self-intersection -18, so it is not an isometry on C = P
    auto v = k3_reflection(l, p, p);
    b.require(v == IntVec{3, 0, 0});
    b.require(gram_pair(l, v, v) == -18);
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

VerifyItem check_charclass() {
  auto t0 = std::chrono::steady_clock::now();
  ItemBuilder b("charclass_identities");
  try {
    for (int rank = 1; rank <= 4; ++rank) {
      auto s = chern_of_E_plus_Edual(rank, 8);
      for (int k = 1; k <= 8; k += 2) b.require(s.component(k).is_zero());
      if (2 * rank <= 8) {
        Poly top = Poly::variable(rank, rank - 1, 2);
        Rational sign = (rank % 2 == 0) ? 1 : -1;
        b.require(s.component(2 * rank) == top * sign);
      }
    }
    for (int rank : {1, 2, 3}) {
      b.require(a_hat_square_identity(rank, 8));
      auto l = genus_series(GenusKind::L, rank, 8);
      auto r = sqrt_series(l);
      b.require(r * r == l);
    }
  } catch (const std::exception&) {
    b.require(false);
  }
  return b.finish(t0);
}

}  // namespace

bool VerifyReport::pass() const {
  for (const auto& i : items)
    if (!i.pass) return false;
  return !items.empty();
}

VerifyReport verify_all(std::uint64_t seed) {
  VerifyReport rep;
  rep.seed = seed;
  rep.items.push_back(check_dual_conic());
  rep.items.push_back(check_pluecker());
  rep.items.push_back(check_bidual());
  rep.items.push_back(check_legendre(item_seed(seed, 3)));
  rep.items.push_back(check_flop(item_seed(seed, 4)));
  rep.items.push_back(check_calabi(item_seed(seed, 5)));
  rep.items.push_back(check_conormal(item_seed(seed, 6)));
  rep.items.push_back(check_symplin(item_seed(seed, 7)));
  rep.items.push_back(check_lagclass(item_seed(seed, 8)));
  rep.items.push_back(check_reflection(item_seed(seed, 9)));
  rep.items.push_back(check_charclass());
  return rep;
}

}  // namespace hklag
