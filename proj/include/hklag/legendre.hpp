#pragma once

#include <complex>
#include <vector>

#include "hklag/poly.hpp"
#include "hklag/rational.hpp"

namespace hklag {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeOne : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using CVec = std::vector<std::complex<double>>;

struct NewtonConfig {
  double tolerance = 1e-12;
  int max_iterations = 60;
  int restarts = 16;
  unsigned long seed = 0;
};

// Pointwise transform data: xi = grad f at x, and the dual value
// f^(xi) = sum x^i xi_i - f(x).
struct LegendrePoint {
  CVec x;
  CVec xi;
  std::complex<double> f_value;
  std::complex<double> f_dual_value;
};

LegendrePoint legendre_map(const HomogeneousPolynomial& f, const CVec& x);

struct InvertResult {
  CVec x;
  double residual;
  double hessian_det_abs;  // |det Hess f| at the solution
};

// Solve grad f(x) = xi by damped Newton with multi-start.  Throws
// NoConvergence when every start stalls, DegreeOne for linear f.  The
// warm-start overloads try `hint` first, which keeps repeated calls on
// the same branch of the (generically many-valued) inverse.
InvertResult legendre_invert(const HomogeneousPolynomial& f, const CVec& xi,
                             const NewtonConfig& cfg = {});
InvertResult legendre_invert(const HomogeneousPolynomial& f, const CVec& xi,
                             const CVec& hint, const NewtonConfig& cfg = {});

// f^(xi) through inversion and the defining formula.
std::complex<double> dual_value(const HomogeneousPolynomial& f, const CVec& xi,
                                const NewtonConfig& cfg = {});
std::complex<double> dual_value(const HomogeneousPolynomial& f, const CVec& xi,
                                const CVec& hint,
                                const NewtonConfig& cfg = {});

// Round-trip residuals for both composition orders, sampled at random
// points away from the singular locus of the gradient map.
struct InvolutionReport {
  double max_residual_V;      // x -> xi -> grad f^(xi), compare to x
  double max_residual_Vstar;  // xi -> x -> grad f(x), compare to xi
  double max_residual() const {
    return max_residual_V > max_residual_Vstar ? max_residual_V
                                               : max_residual_Vstar;
  }
};

InvolutionReport involution_check(const HomogeneousPolynomial& f, int samples,
                                  const NewtonConfig& cfg = {});

// Closed forms for the Fermat hypersurface x0^p = x1^p + ... + xn^p:
// conjugate exponent q with 1/p + 1/q = 1 and the dual degree.
struct FermatDual {
  Rational q;
  Integer dual_degree;
};

FermatDual fermat_dual(int p, int n);

}  // namespace hklag
