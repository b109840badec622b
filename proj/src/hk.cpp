#include "hklag/hk.hpp"

#include <cmath>
#include <random>

#include "hklag/dualcurve.hpp"
#include "hklag/legendre.hpp"

namespace hklag {

namespace {

using Cx = std::complex<double>;

double norm2(const HKVec& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

Cx pair_bilinear(const HKVec& xi, const HKVec& x) {
  Cx s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += xi[i] * x[i];
  return s;
}

void apply_phase(HKVec& x, HKVec& xi) {
  // make the first nonzero coordinate of x real positive; fall back to xi
  // when x vanishes (zero section of the other side)
  const HKVec& lead = norm2(x) > 1e-20 ? x : xi;
  for (const auto& c : lead) {
    if (std::abs(c) > 1e-12) {
      Cx ph = c / std::abs(c);
      // x carries weight +1 under the circle action, xi weight -1
      Cx inv = std::conj(ph);
      bool gauge_on_x = &lead == &x;
      for (auto& v : x) v *= gauge_on_x ? inv : ph;
      for (auto& v : xi) v *= gauge_on_x ? ph : inv;
      return;
    }
  }
}

}  // namespace

MomentValues moment_maps(const HKVec& x, const HKVec& xi) {
  if (x.size() != xi.size())
    throw DimensionMismatch("moment_maps: length mismatch");
  Cx i_unit(0, 1);
  return MomentValues{i_unit * (norm2(x) - norm2(xi)), pair_bilinear(xi, x)};
}

QuotientPoint level_normalize(const HKVec& x_in, const HKVec& xi_in,
                              Side side) {
  if (x_in.size() != xi_in.size())
    throw DimensionMismatch("level_normalize: length mismatch");
  HKVec x = x_in, xi = xi_in;
  double scale = std::sqrt(std::max(norm2(x), norm2(xi)));
  if (std::abs(pair_bilinear(xi, x)) > 1e-12 * std::max(1.0, scale * scale))
    throw ComplexMomentNonzero("level_normalize: xi(x) != 0");
  // the real scaling (x, xi) -> (s x, xi / s) keeps mu_c = 0 and solves
  // u^2 |x|^2 - u - |xi|^2 = 0 for u = s^2 > 0
  const HKVec& big = (side == Side::M) ? x : xi;
  const double b2 = norm2(big);
  const double o2 = (side == Side::M) ? norm2(xi) : norm2(x);
  if (b2 < 1e-30)
    throw Unnormalizable("level_normalize: point limits to the wrong side");
  double u = (1.0 + std::sqrt(1.0 + 4.0 * b2 * o2)) / (2.0 * b2);
  double s = std::sqrt(u);
  if (side == Side::M) {
    for (auto& v : x) v *= s;
    for (auto& v : xi) v /= s;
  } else {
    for (auto& v : xi) v *= s;
    for (auto& v : x) v /= s;
  }
  apply_phase(x, xi);
  return QuotientPoint{std::move(x), std::move(xi), side};
}

HKVec to_base(const QuotientPoint& p) {
  double f = 1.0 / std::sqrt(1.0 + norm2(p.side == Side::M ? p.xi : p.x));
  HKVec y = p.side == Side::M ? p.x : p.xi;
  for (auto& v : y) v *= f;
  return y;
}

QuotientPoint flop(const QuotientPoint& p) {
  double nx = std::sqrt(norm2(p.x)), nxi = std::sqrt(norm2(p.xi));
  const double& fib = p.side == Side::M ? nxi : nx;
  if (fib < 1e-12) throw ZeroSection("flop: point on the zero section");
  QuotientPoint q;
  q.side = p.side == Side::M ? Side::M_prime : Side::M;
  q.x.resize(p.x.size());
  q.xi.resize(p.xi.size());
  for (size_t i = 0; i < p.x.size(); ++i) {
    q.xi[i] = (nx / nxi) * p.xi[i];
    q.x[i] = (nxi / nx) * p.x[i];
  }
  return q;
}

Eigen::MatrixXcd blowdown(const QuotientPoint& p) {
  long n = static_cast<long>(p.x.size());
  Eigen::MatrixXcd a(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) a(i, j) = p.x[i] * p.xi[j];
  return a;
}

double calabi_potential(const CotangentChart& c) {
  double z2 = norm2(c.z), zeta2 = norm2(c.zeta);
  Cx zdot = pair_bilinear(c.zeta, c.z);
  double t = (1.0 + z2) * (zeta2 + std::norm(zdot));
  double s = std::sqrt(1.0 + 4.0 * t);
  return std::log(1.0 + z2) + s - std::log(1.0 + s);
}

namespace {

Eigen::MatrixXcd calabi_metric_fd(const CotangentChart& c, double h) {
  int n = static_cast<int>(c.z.size());
  const int m = 2 * n;  // holomorphic coordinates w = (z, zeta)

  auto eval = [&](const std::vector<double>& d) {
    // d: 2m real offsets (re, im per holomorphic coordinate)
    CotangentChart cc = c;
    for (int i = 0; i < n; ++i) {
      cc.z[i] += Cx(d[2 * i], d[2 * i + 1]);
      cc.zeta[i] += Cx(d[2 * (n + i)], d[2 * (n + i) + 1]);
    }
    return calabi_potential(cc);
  };

  // real Hessian by central differences
  Eigen::MatrixXd hess(2 * m, 2 * m);
  for (int a = 0; a < 2 * m; ++a)
    for (int b = a; b < 2 * m; ++b) {
      std::vector<double> d(2 * m, 0.0);
      double v;
      if (a == b) {
        d[a] = h;
        double fp = eval(d);
        d[a] = -h;
        double fm = eval(d);
        d[a] = 0;
        v = (fp - 2 * eval(d) + fm) / (h * h);
      } else {
        d[a] = h;
        d[b] = h;
        double fpp = eval(d);
        d[b] = -h;
        double fpm = eval(d);
        d[a] = -h;
        double fmm = eval(d);
        d[b] = h;
        double fmp = eval(d);
        v = (fpp - fpm - fmp + fmm) / (4 * h * h);
      }
      hess(a, b) = v;
      hess(b, a) = v;
    }

  // g_{i jbar} = (1/4) [ (H_aa' + H_bb') + i (H_ab' - H_ba') ] where
  // a, b are the real/imag parts of w_i and a', b' those of w_j
  Eigen::MatrixXcd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double re = hess(2 * i, 2 * j) + hess(2 * i + 1, 2 * j + 1);
      double im = hess(2 * i, 2 * j + 1) - hess(2 * i + 1, 2 * j);
      g(i, j) = 0.25 * Cx(re, im);
    }
  return g;
}

}  // namespace

CalabiMetric calabi_metric(const CotangentChart& c, const NumericConfig& cfg) {
  if (c.zeta.size() != c.z.size())
    throw DimensionMismatch("calabi_metric: chart length mismatch");
  // richardson extrapolation of the central-difference hessian
  double h = cfg.fd_step;
  Eigen::MatrixXcd g =
      (4.0 * calabi_metric_fd(c, h) - calabi_metric_fd(c, 2 * h)) / 3.0;
  double asym = (g - g.adjoint()).norm();
  if (asym > 1e-6 * std::max(1.0, g.norm()))
    throw NumericBreakdown("calabi_metric: non-Hermitian result");
  g = 0.5 * (g + Eigen::MatrixXcd(g.adjoint()));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  double mineig = es.eigenvalues().minCoeff();
  double det = g.determinant().real();
  return CalabiMetric{std::move(g), mineig, det};
}

namespace {

// Real 2-form sum dx_i ^ dxi_i evaluated on tangent vectors given as
// (dx, dxi) complex perturbation pairs.
Cx holo_form(const HKVec& ux, const HKVec& uxi, const HKVec& vx,
             const HKVec& vxi) {
  Cx s = 0;
  for (size_t i = 0; i < ux.size(); ++i)
    s += ux[i] * vxi[i] - vx[i] * uxi[i];
  return s;
}

}  // namespace

double symplectic_pullback_check(int n, const NumericConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g(0, 1);
  const int d = n + 1;
  const int rdim = 4 * d;  // real dimension of T*V
  const double h = cfg.fd_step;
  double max_res = 0;
  int done = 0, guard = 0;

  auto pack = [&](const HKVec& x, const HKVec& xi) {
    Eigen::VectorXd v(rdim);
    for (int i = 0; i < d; ++i) {
      v[4 * i] = x[i].real();
      v[4 * i + 1] = x[i].imag();
      v[4 * i + 2] = xi[i].real();
      v[4 * i + 3] = xi[i].imag();
    }
    return v;
  };
  auto unpack = [&](const Eigen::VectorXd& v, HKVec* x, HKVec* xi) {
    x->resize(d);
    xi->resize(d);
    for (int i = 0; i < d; ++i) {
      (*x)[i] = Cx(v[4 * i], v[4 * i + 1]);
      (*xi)[i] = Cx(v[4 * i + 2], v[4 * i + 3]);
    }
  };
  // ambient flop formula, defined off the level set as well
  auto phi = [&](const Eigen::VectorXd& v) {
    HKVec x, xi;
    unpack(v, &x, &xi);
    double nx = std::sqrt(norm2(x)), nxi = std::sqrt(norm2(xi));
    HKVec xp(d), xip(d);
    for (int i = 0; i < d; ++i) {
      xip[i] = (nx / nxi) * xi[i];
      xp[i] = (nxi / nx) * x[i];
    }
    return pack(xp, xip);
  };

  while (done < cfg.samples && ++guard < 20 * cfg.samples + 100) {
    HKVec x(d), eta(d);
    for (int i = 0; i < d; ++i) {
      x[i] = Cx(g(rng), g(rng));
      eta[i] = Cx(g(rng), g(rng));
    }
    // force the bilinear pairing to zero against the largest coordinate
    int k = 0;
    for (int i = 1; i < d; ++i)
      if (std::abs(x[i]) > std::abs(x[k])) k = i;
    Cx rest = 0;
    for (int i = 0; i < d; ++i)
      if (i != k) rest += eta[i] * x[i];
    eta[k] = -rest / x[k];
    QuotientPoint p;
    try {
      p = level_normalize(x, eta);
    } catch (const Unnormalizable&) {
      continue;
    }
    if (std::sqrt(norm2(p.xi)) < 1e-3) continue;  // near the zero section

    // level-set tangent space: kernel of the three real constraints
    Eigen::VectorXd v0 = pack(p.x, p.xi);
    Eigen::MatrixXd jac(3, rdim);
    auto constraints = [&](const Eigen::VectorXd& v) {
      HKVec xx, xxi;
      unpack(v, &xx, &xxi);
      Cx mc = pair_bilinear(xxi, xx);
      Eigen::Vector3d c;
      c << mc.real(), mc.imag(), norm2(xx) - norm2(xxi);
      return c;
    };
    for (int a = 0; a < rdim; ++a) {
      Eigen::VectorXd vp = v0, vm = v0;
      vp[a] += h;
      vm[a] -= h;
      jac.col(a) = (constraints(vp) - constraints(vm)) / (2 * h);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    Eigen::MatrixXd ker = lu.kernel();  // rdim x (rdim-3)

    // push a handful of tangent pairs through the flop jacobian
    int nt = std::min<int>(4, static_cast<int>(ker.cols()));
    std::vector<HKVec> tx(nt), txi(nt), fx(nt), fxi(nt);
    for (int a = 0; a < nt; ++a) {
      Eigen::VectorXd u = ker.col(a).normalized();
      HKVec ux, uxi;
      unpack(u, &ux, &uxi);
      tx[a] = ux;
      txi[a] = uxi;
      Eigen::VectorXd img =
          (phi(v0 + h * u) - phi(v0 - h * u)) / (2 * h);
      HKVec wx, wxi;
      unpack(img, &wx, &wxi);
      fx[a] = wx;
      fxi[a] = wxi;
    }
    for (int a = 0; a < nt; ++a)
      for (int b = a + 1; b < nt; ++b) {
        Cx before = holo_form(tx[a], txi[a], tx[b], txi[b]);
        Cx after = holo_form(fx[a], fxi[a], fx[b], fxi[b]);
        max_res = std::max(max_res, std::abs(before - after));
      }
    ++done;
  }
  if (done < cfg.samples)
    throw NumericBreakdown("symplectic_pullback_check: sampling starved");
  return max_res;
}

ConormalReport conormal_transport(const HomogeneousPolynomial& f, int samples,
                                  const NumericConfig& cfg) {
  const int d = f.nvars();
  std::mt19937_64 rng(cfg.seed + 7);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  std::vector<Poly> grad;
  for (int i = 0; i < d; ++i) grad.push_back(f.poly().derivative(i));

  // exact dual membership test for plane curves, dual value otherwise
  bool use_dual_poly = (d == 3 && f.degree() <= 4);
  Poly dual(3);
  double dual_norm = 1;
  if (use_dual_poly) {
    dual = dual_polynomial(f).dual_poly.poly();
    for (const auto& [e, c] : dual.terms())
      dual_norm += std::abs(to_double(c));
  }

  ConormalReport rep{0.0, 0, {}};
  int guard = 0;
  while (rep.samples_used < samples && ++guard < 50 * samples + 200) {
    // intersect a random complex line with {f = 0}
    HKVec a(d), b(d);
    for (int i = 0; i < d; ++i) {
      a[i] = Cx(g(rng), g(rng));
      b[i] = Cx(g(rng), g(rng));
    }
    int deg = f.degree();
    Eigen::MatrixXcd V(deg + 1, deg + 1);
    Eigen::VectorXcd y(deg + 1);
    for (int k = 0; k <= deg; ++k) {
      Cx t(0.7 * k - 1, 0.4 * k + 0.2);
      HKVec xx(d);
      for (int i = 0; i < d; ++i) xx[i] = a[i] + t * b[i];
      Cx p = 1;
      for (int j = 0; j <= deg; ++j) {
        V(k, j) = p;
        p *= t;
      }
      y[k] = f.evaluate(xx);
    }
    Eigen::VectorXcd coef = V.fullPivLu().solve(y);
    int top = deg;
    while (top > 0 && std::abs(coef[top]) < 1e-12) --top;
    if (top < 1) continue;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(top, top);
    for (int i = 0; i < top; ++i) comp(i, top - 1) = -coef[i] / coef[top];
    for (int i = 1; i < top; ++i) comp(i, i - 1) = 1;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);

    for (int r = 0; r < top && rep.samples_used < samples; ++r) {
      Cx t = es.eigenvalues()[r];
      HKVec x(d);
      for (int i = 0; i < d; ++i) x[i] = a[i] + t * b[i];
      // newton-polish along the line
      for (int it = 0; it < 6; ++it) {
        Cx fv = f.evaluate(x);
        Cx dfv = 0;
        for (int i = 0; i < d; ++i) dfv += grad[i].eval(x) * b[i];
        if (std::abs(dfv) < 1e-14) break;
        t -= fv / dfv;
        for (int i = 0; i < d; ++i) x[i] = a[i] + t * b[i];
      }
      if (std::abs(f.evaluate(x)) > 1e-10) continue;
      HKVec gx(d);
      double gn = 0;
      for (int i = 0; i < d; ++i) {
        gx[i] = grad[i].eval(x);
        gn += std::norm(gx[i]);
      }
      if (std::sqrt(gn) < 1e-6)
        throw SingularSample("conormal_transport: grad f ~ 0 on sample");
      double c = scale(rng);
      HKVec xi(d);
      for (int i = 0; i < d; ++i) xi[i] = c * gx[i];
      // xi(x) = c p f(x) = 0 by the euler identity, so this is conormal
      QuotientPoint p;
      try {
        p = level_normalize(x, xi);
      } catch (const ComplexMomentNonzero&) {
        continue;
      }
      if (std::sqrt(norm2(p.xi)) < 1e-3) continue;
      QuotientPoint q = flop(p);
      HKVec ybase = to_base(q);  // proportional to grad f(x)

      double res;
      if (use_dual_poly) {
        res = std::abs(dual.eval(std::span<const Cx>(ybase))) / dual_norm;
      } else {
        // the dual value vanishes on gradients of zero-set points
        res = std::abs(dual_value(f, ybase, NewtonConfig{.seed = cfg.seed}));
      }
      rep.residuals.push_back(res);
      rep.max_residual = std::max(rep.max_residual, res);
      ++rep.samples_used;
    }
  }
  return rep;
}

}  // namespace hklag
