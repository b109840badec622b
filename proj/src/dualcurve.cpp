#include "hklag/dualcurve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace hklag {

namespace {

using Cx = std::complex<double>;

// The elimination ring: variables 0..2 are x0..x2, 3..5 are xi0..xi2.
constexpr int kNV = 6;

Poly lift_x(const Poly& p) {
  Poly r(kNV);
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> ee = {e[0], e[1], e[2], 0, 0, 0};
    r.add_term(ee, c);
  }
  return r;
}

Poly drop_to_xi(const Poly& p) {
  // p must involve only variables 3..5; re-index them as 0..2
  Poly r(3);
  for (const auto& [e, c] : p.terms()) {
    if (e[0] || e[1] || e[2])
      throw EliminationCollapse("residual x-dependence after elimination");
    r.add_term({e[3], e[4], e[5]}, c);
  }
  return r;
}

Poly xi_var(int i) { return Poly::variable(kNV, 3 + i); }

// Strip all monomial factors (powers of single variables).
Poly strip_monomials(Poly p) {
  for (int v = 0; v < p.nvars(); ++v) {
    Poly xv = Poly::variable(p.nvars(), v);
    Poly q(p.nvars());
    while (!p.is_zero() && Poly::try_divexact(p, xv, &q)) p = q;
  }
  return p;
}

// Roots of a univariate complex polynomial via the companion matrix.
std::vector<Cx> roots_of(const std::vector<Cx>& coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  while (n > 0 && std::abs(coeffs[n]) < 1e-300) --n;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / coeffs[n];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<Cx> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

// Sample smooth points of {f = 0} along random complex lines and return
// the corresponding normalized tangent covectors grad f(x).
std::vector<std::vector<Cx>> sample_conormals(const HomogeneousPolynomial& f,
                                              int count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  std::vector<Poly> grad;
  for (int i = 0; i < 3; ++i) grad.push_back(f.poly().derivative(i));
  std::vector<std::vector<Cx>> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && ++guard < 200) {
    std::vector<Cx> a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a[i] = Cx(g(rng), g(rng));
      b[i] = Cx(g(rng), g(rng));
    }
    // f(a + t b): expand through evaluation at d+1 nodes (interpolation)
    int d = f.degree();
    std::vector<std::vector<Cx>> pts;
    std::vector<Cx> vals;
    // coefficients by solving a small Vandermonde at nodes t = 0..d
    Eigen::MatrixXcd V(d + 1, d + 1);
    Eigen::VectorXcd y(d + 1);
    for (int k = 0; k <= d; ++k) {
      Cx t(k, 0.5 * k + 0.25);
      std::vector<Cx> x = {a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
      Cx p = 1;
      for (int j = 0; j <= d; ++j) {
        V(k, j) = p;
        p *= t;
      }
      y[k] = f.evaluate(x);
    }
    Eigen::VectorXcd c = V.fullPivLu().solve(y);
    std::vector<Cx> coeffs(c.data(), c.data() + d + 1);
    for (Cx t : roots_of(coeffs)) {
      std::vector<Cx> x = {a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
      // polish the root with a few Newton steps along the line
      for (int it = 0; it < 5; ++it) {
        Cx fv = f.evaluate(x);
        Cx dfv = 0;
        for (int i = 0; i < 3; ++i) dfv += grad[i].eval(x) * b[i];
        if (std::abs(dfv) < 1e-14) break;
        t -= fv / dfv;
        x = {a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
      }
      if (std::abs(f.evaluate(x)) > 1e-10) continue;
      std::vector<Cx> xi(3);
      double nrm = 0;
      for (int i = 0; i < 3; ++i) {
        xi[i] = grad[i].eval(x);
        nrm += std::norm(xi[i]);
      }
      nrm = std::sqrt(nrm);
      if (nrm < 1e-8) continue;  // singular point of the curve
      for (auto& v : xi) v /= nrm;
      out.push_back(std::move(xi));
      if (static_cast<int>(out.size()) >= count) break;
    }
  }
  return out;
}

std::vector<std::vector<int>> monomials_of_degree(int d) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j + i <= d; ++j) out.push_back({i, j, d - i - j});
  return out;
}

double coeff_norm(const Poly& p) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) s += std::abs(to_double(c));
  return s;
}

double membership_residual(const Poly& p, const std::vector<Cx>& xi) {
  return std::abs(p.eval(std::span<const Cx>(xi))) /
         std::max(1e-300, coeff_norm(p));
}

bool rationalize(double v, Rational* out, long max_den = 100000) {
  // continued fractions with a denominator cap
  double x = v;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(x);
    if (fl > 1e15 || fl < -1e15) return false;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = double(p1) / double(q1);
    if (std::abs(approx - v) <= 1e-9 * std::max(1.0, std::abs(v))) {
      *out = Rational(p1, q1);
      out->canonicalize();
      return true;
    }
    double frac = x - fl;
    if (std::abs(frac) < 1e-12) break;
    x = 1.0 / frac;
  }
  double approx = double(p1) / double(q1);
  if (q1 != 0 && std::abs(approx - v) <= 1e-9 * std::max(1.0, std::abs(v))) {
    *out = Rational(p1, q1);
    out->canonicalize();
    return true;
  }
  return false;
}

// Try to find a factor of `g` of degree `deg` vanishing on the sampled
// dual points, by interpolation through the sample set.
bool interpolate_factor(const Poly& g, int deg,
                        const std::vector<std::vector<Cx>>& samples,
                        Poly* out) {
  auto mons = monomials_of_degree(deg);
  int m = static_cast<int>(mons.size());
  if (static_cast<int>(samples.size()) < m + 5) return false;
  int rows = static_cast<int>(samples.size());
  Eigen::MatrixXcd V(rows, m);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < m; ++c) {
      Cx val = 1;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < mons[c][i]; ++k) val *= samples[r][i];
      V(r, c) = val;
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv[m - 1] > 1e-8 * sv[0]) return false;  // no curve of this degree
  Eigen::VectorXcd null = svd.matrixV().col(m - 1);
  // normalize by the largest entry, then rationalize
  int big = 0;
  for (int c = 1; c < m; ++c)
    if (std::abs(null[c]) > std::abs(null[big])) big = c;
  null /= null[big];
  Poly cand(3);
  for (int c = 0; c < m; ++c) {
    Cx v = null[c];
    if (std::abs(v) < 1e-9) continue;
    if (std::abs(v.imag()) > 1e-7) return false;
    Rational q;
    if (!rationalize(v.real(), &q)) return false;
    cand.add_term(mons[c], q);
  }
  cand = cand.normalized();
  if (cand.is_zero() || cand.total_degree() != deg) return false;
  // must divide the elimination output exactly
  Poly quot(3);
  if (!Poly::try_divexact(g, cand, &quot)) return false;
  // and vanish at every sample
  for (const auto& s : samples)
    if (membership_residual(cand, s) > 1e-8) return false;
  *out = cand;
  return true;
}

}  // namespace

PlueckerTriple::PlueckerTriple(int d_, int delta_, int kappa_)
    : d(d_), delta(delta_), kappa(kappa_) {
  if (d < 1 || delta < 0 || kappa < 0)
    throw std::invalid_argument("pluecker triple: bad signs");
  if (2 * (delta + kappa) > (d - 1) * (d - 2))
    throw std::invalid_argument("pluecker triple: genus bound violated");
}

DualCurveResult dual_polynomial(const HomogeneousPolynomial& f) {
  if (f.nvars() != 3)
    throw DimensionMismatch("dual_polynomial: expected a plane curve");
  if (f.degree() < 2) throw DegreeTooSmall("dual_polynomial: degree < 2");
  if (f.degree() > 4) throw DegreeTooLarge("dual_polynomial: degree > 4");
  if (!(f.poly().squarefree_part() == f.poly().normalized()))
    throw NonReduced("dual_polynomial: curve has a repeated component");

  Poly F = lift_x(f.poly());
  std::vector<Poly> grad;
  for (int i = 0; i < 3; ++i) grad.push_back(F.derivative(i));
  Poly m01 = xi_var(0) * grad[1] - xi_var(1) * grad[0];
  Poly m02 = xi_var(0) * grad[2] - xi_var(2) * grad[0];

  Poly r1 = Poly::resultant(F, m01, 2);
  Poly r2 = Poly::resultant(F, m02, 2);
  r1 = strip_monomials(r1.primitive_part());
  r2 = strip_monomials(r2.primitive_part());
  if (r1.is_zero() || r2.is_zero())
    throw EliminationCollapse("intermediate resultant vanished");
  Poly r = Poly::resultant(r1, r2, 1);
  if (r.is_zero()) throw EliminationCollapse("final resultant vanished");

  // the genuine dual equation has no x-dependence: take the content of the
  // result viewed as a polynomial in x0, then canonicalize
  int dx0 = r.degree_in(0);
  Poly content(kNV);
  for (int k = 0; k <= dx0; ++k) {
    Poly ck = r.coeff_in(0, k);
    if (!ck.is_zero()) content = Poly::gcd(content, ck);
    if (!content.is_zero() && content.total_degree() == 0) break;
  }
  Poly g = strip_monomials(content).squarefree_part();
  if (g.is_zero() || g.total_degree() == 0)
    throw EliminationCollapse("elimination left no dual equation");
  Poly gxi = drop_to_xi(g);

  // interpolation against sampled conormal covectors strips any remaining
  // extraneous (non-monomial) factor
  std::vector<std::string> removed;
  int need = 0;
  for (int d = 1; d <= gxi.total_degree(); ++d)
    need = std::max(need, 2 * static_cast<int>(monomials_of_degree(d).size()));
  auto samples = sample_conormals(f, need + 10, 1234);
  Poly dual = gxi;
  for (int d = 1; d < gxi.total_degree(); ++d) {
    Poly cand(3);
    if (interpolate_factor(gxi, d, samples, &cand)) {
      dual = cand;
      Poly extra = Poly::divexact(gxi, cand).normalized();
      if (extra.total_degree() > 0) removed.push_back(extra.str("xi"));
      break;
    }
  }
  dual = dual.normalized();
  // final membership audit of the retained polynomial
  int ok = 0;
  for (const auto& s : samples)
    if (membership_residual(dual, s) <= 1e-8) ++ok;
  if (ok < std::min<int>(20, static_cast<int>(samples.size())))
    throw EliminationCollapse("dual candidate fails membership sampling");

  return DualCurveResult{HomogeneousPolynomial(dual), dual.total_degree(),
                         std::move(removed)};
}

PlueckerDual pluecker(const PlueckerTriple& t) {
  if (t.d < 2) throw DegreeTooSmall("pluecker: requires d >= 2");
  Integer d = t.d, delta = t.delta, kappa = t.kappa;
  Integer d_dual = d * (d - 1) - 2 * delta - 3 * kappa;
  Integer kappa_dual = 3 * d * d - 6 * d - 6 * delta - 8 * kappa;
  return PlueckerDual{d_dual, kappa_dual};
}

Integer chi_bar_formula(const PlueckerTriple& t) {
  Integer d = t.d;
  return d * d - 3 * d + 2 * Integer(t.delta) + 3 * Integer(t.kappa);
}

DegreeIdentityReport degree_identity_report(const PlueckerTriple& t,
                                            const PlueckerTriple& t_dual) {
  if (pluecker(t).d_dual != t_dual.d)
    throw InconsistentDualDegree("dual degree does not match pluecker(t)");
  Integer lhs = 3 * Integer(t_dual.d);
  Integer rhs = -chi_bar_formula(t) - 2 * chi_bar_formula(t_dual);
  return DegreeIdentityReport{lhs, rhs, lhs == rhs};
}

BidualResult bidual_check(const HomogeneousPolynomial& f) {
  DualCurveResult first = dual_polynomial(f);
  DualCurveResult second = dual_polynomial(first.dual_poly);
  Poly fn = f.poly().normalized();
  bool prop = second.dual_poly.poly() == fn;
  if (!prop) return BidualResult{false, 0};
  // normalized forms match; report the scalar relating f to its bidual
  Rational lc_f = f.poly().terms().begin()->second;
  Rational lc_b = second.dual_poly.poly().terms().begin()->second;
  return BidualResult{true, lc_f / lc_b};
}

}  // namespace hklag
