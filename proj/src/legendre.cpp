#include "hklag/legendre.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace hklag {

namespace {

using Cx = std::complex<double>;
using EVec = Eigen::VectorXcd;
using EMat = Eigen::MatrixXcd;

EVec to_eigen(const CVec& v) {
  EVec e(static_cast<long>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) e[static_cast<long>(i)] = v[i];
  return e;
}

CVec from_eigen(const EVec& e) {
  CVec v(static_cast<size_t>(e.size()));
  for (long i = 0; i < e.size(); ++i) v[static_cast<size_t>(i)] = e[i];
  return v;
}

struct GradData {
  std::vector<Poly> grad;
  std::vector<std::vector<Poly>> hess;
  int n;

  explicit GradData(const HomogeneousPolynomial& f) : n(f.nvars()) {
    for (int i = 0; i < n; ++i) grad.push_back(f.poly().derivative(i));
    hess.resize(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hess[i].push_back(grad[i].derivative(j));
  }

  EVec eval_grad(const EVec& x) const {
    CVec xv = from_eigen(x);
    EVec g(n);
    for (int i = 0; i < n; ++i) g[i] = grad[i].eval(xv);
    return g;
  }

  EMat eval_hess(const EVec& x) const {
    CVec xv = from_eigen(x);
    EMat h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = hess[i][j].eval(xv);
    return h;
  }
};

// Newton from a single start; returns the best residual reached.
bool newton_from(const GradData& gd, const EVec& xi, EVec x, double tol,
                 int max_iter, EVec* out, double* res_out) {
  double res = (gd.eval_grad(x) - xi).norm();
  for (int it = 0; it < max_iter && res > tol; ++it) {
    EMat h = gd.eval_hess(x);
    Eigen::PartialPivLU<EMat> lu(h);
    EVec step = lu.solve(xi - gd.eval_grad(x));
    if (!step.allFinite()) break;
    double t = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      EVec cand = x + t * step;
      double r = (gd.eval_grad(cand) - xi).norm();
      if (r < res) {
        x = cand;
        res = r;
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;
  }
  *out = x;
  *res_out = res;
  return res <= tol;
}

InvertResult invert_impl(const HomogeneousPolynomial& f, const CVec& xi,
                         const NewtonConfig& cfg, const CVec* warm) {
  if (f.is_zero()) throw ZeroPolynomial("legendre_invert: zero polynomial");
  if (f.degree() < 2)
    throw DegreeOne("legendre_invert: gradient map is constant");
  if (static_cast<int>(xi.size()) != f.nvars())
    throw DimensionMismatch("xi has wrong length");
  GradData gd(f);
  EVec target = to_eigen(xi);
  double scale = std::max(1.0, target.norm());

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_start = [&]() {
    EVec v(gd.n);
    for (int i = 0; i < gd.n; ++i) v[i] = Cx(gauss(rng), gauss(rng));
    // match the expected magnitude |x| ~ |xi|^{1/(p-1)}
    double mag = std::pow(scale, 1.0 / (f.degree() - 1));
    return EVec(mag * v);
  };

  EVec best_x;
  double best_res = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < cfg.restarts + 2; ++attempt) {
    EVec start;
    if (attempt == 0 && warm)
      start = to_eigen(*warm);
    else if (attempt == (warm ? 1 : 0))
      start = target;
    else
      start = random_start();
    EVec x;
    double res;
    bool ok = newton_from(gd, target, start, cfg.tolerance,
                          cfg.max_iterations, &x, &res);
    if (res < best_res) {
      best_res = res;
      best_x = x;
    }
    if (ok) break;
  }
  if (best_res > cfg.tolerance)
    throw NoConvergence("legendre_invert: residual " +
                        std::to_string(best_res));
  double hdet = std::abs(gd.eval_hess(best_x).determinant());
  return InvertResult{from_eigen(best_x), best_res, hdet};
}

Cx dual_value_impl(const HomogeneousPolynomial& f, const CVec& xi,
                   const NewtonConfig& cfg, const CVec* warm) {
  InvertResult inv = invert_impl(f, xi, cfg, warm);
  Cx acc = 0;
  for (size_t i = 0; i < xi.size(); ++i) acc += inv.x[i] * xi[i];
  return acc - f.evaluate(inv.x);
}

}  // namespace

LegendrePoint legendre_map(const HomogeneousPolynomial& f, const CVec& x) {
  if (f.is_zero()) throw ZeroPolynomial("legendre_map: zero polynomial");
  if (static_cast<int>(x.size()) != f.nvars())
    throw DimensionMismatch("x has wrong length");
  LegendrePoint pt;
  pt.x = x;
  for (int i = 0; i < f.nvars(); ++i)
    pt.xi.push_back(f.poly().derivative(i).eval(x));
  pt.f_value = f.evaluate(x);
  Cx acc = 0;
  for (size_t i = 0; i < x.size(); ++i) acc += x[i] * pt.xi[i];
  pt.f_dual_value = acc - pt.f_value;
  return pt;
}

InvertResult legendre_invert(const HomogeneousPolynomial& f, const CVec& xi,
                             const NewtonConfig& cfg) {
  return invert_impl(f, xi, cfg, nullptr);
}

InvertResult legendre_invert(const HomogeneousPolynomial& f, const CVec& xi,
                             const CVec& hint, const NewtonConfig& cfg) {
  return invert_impl(f, xi, cfg, &hint);
}

std::complex<double> dual_value(const HomogeneousPolynomial& f, const CVec& xi,
                                const NewtonConfig& cfg) {
  return dual_value_impl(f, xi, cfg, nullptr);
}

std::complex<double> dual_value(const HomogeneousPolynomial& f, const CVec& xi,
                                const CVec& hint, const NewtonConfig& cfg) {
  return dual_value_impl(f, xi, cfg, &hint);
}

InvolutionReport involution_check(const HomogeneousPolynomial& f, int samples,
                                  const NewtonConfig& cfg) {
  if (f.is_zero()) throw ZeroPolynomial("involution_check: zero polynomial");
  if (f.degree() < 2) throw DegreeOne("involution_check: degree < 2");
  GradData gd(f);
  std::mt19937_64 rng(cfg.seed + 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double max_v = 0.0, max_vstar = 0.0;
  int done = 0, attempts = 0;
  const double h = 1e-6;
  while (done < samples && attempts < 20 * samples + 100) {
    ++attempts;
    EVec x(gd.n);
    for (int i = 0; i < gd.n; ++i) x[i] = Cx(gauss(rng), gauss(rng));
    if (std::abs(gd.eval_hess(x).determinant()) < 1e-4) continue;
    CVec xv = from_eigen(x);
    LegendrePoint pt = legendre_map(f, xv);
    try {
      // grad of the dual at xi by central differences, warm-started at the
      // known preimage so every evaluation stays on the same branch
      EVec gdual(gd.n);
      for (int i = 0; i < gd.n; ++i) {
        CVec xp = pt.xi, xm = pt.xi;
        xp[i] += h;
        xm[i] -= h;
        Cx vp = dual_value_impl(f, xp, cfg, &xv);
        Cx vm = dual_value_impl(f, xm, cfg, &xv);
        gdual[i] = (vp - vm) / (2 * h);
      }
      // compare to x up to projective scale (least-squares alignment)
      Cx lambda = (x.conjugate().transpose() * gdual)(0) / x.squaredNorm();
      double rv = (gdual - lambda * x).norm() / x.norm();
      max_v = std::max(max_v, rv);

      // the other order: invert xi, push forward again
      InvertResult inv = invert_impl(f, pt.xi, cfg, &xv);
      EVec back = gd.eval_grad(to_eigen(inv.x));
      EVec xiv = to_eigen(pt.xi);
      double rvs = (back - xiv).norm() / std::max(1.0, xiv.norm());
      max_vstar = std::max(max_vstar, rvs);
      ++done;
    } catch (const NoConvergence&) {
      continue;  // sampled too close to the discriminant
    }
  }
  if (done < samples)
    throw NoConvergence("involution_check: insufficient usable samples");
  return InvolutionReport{max_v, max_vstar};
}

FermatDual fermat_dual(int p, int n) {
  if (p < 2 || n < 1) throw std::invalid_argument("fermat_dual: p>=2, n>=1");
  Rational q(p, p - 1);
  q.canonicalize();
  Integer deg = p;
  for (int k = 0; k < n - 1; ++k) deg *= (p - 1);
  return FermatDual{q, deg};
}

}  // namespace hklag
