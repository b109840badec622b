#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hklag/poly.hpp"

namespace hklag {

struct ComplexMomentNonzero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Unnormalizable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroSection : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using HKVec = std::vector<std::complex<double>>;

enum class Side { M, M_prime };

// Level-set representative of a point of the hyperkahler quotient.  On
// side M: xi(x) = 0 and |x|^2 - |xi|^2 = 1; on M_prime the roles of x and
// xi swap.  Defined up to the circle action (e^{it} x, e^{-it} xi); the
// canonical gauge makes the first nonzero coordinate of x real positive.
struct QuotientPoint {
  HKVec x;
  HKVec xi;
  Side side = Side::M;
};

// Inhomogeneous cotangent coordinates: sum zeta_j dz^j over the chart
// z of the base projective space.
struct CotangentChart {
  HKVec z;
  HKVec zeta;
};

struct NumericConfig {
  double fd_step = 1e-5;
  double tolerance = 1e-8;
  int samples = 100;
  unsigned long seed = 0;
};

struct MomentValues {
  std::complex<double> mu_J;  // i(|x|^2 - |xi|^2), purely imaginary
  std::complex<double> mu_c;  // xi(x)
};

MomentValues moment_maps(const HKVec& x, const HKVec& xi);

QuotientPoint level_normalize(const HKVec& x, const HKVec& xi,
                              Side side = Side::M);

// Unit representative of the base point: y = x (1 + |xi|^2)^{-1/2}.
HKVec to_base(const QuotientPoint& p);

QuotientPoint flop(const QuotientPoint& p);

Eigen::MatrixXcd blowdown(const QuotientPoint& p);

double calabi_potential(const CotangentChart& c);

struct CalabiMetric {
  Eigen::MatrixXcd g;  // 2n x 2n Hermitian, indices ordered (z, zeta)
  double min_eigenvalue;
  double det;
};

CalabiMetric calabi_metric(const CotangentChart& c,
                           const NumericConfig& cfg = {});

// Max discrepancy between the holomorphic symplectic form on level
// tangent vectors and its image under the finite-difference flop Jacobian.
double symplectic_pullback_check(int n, const NumericConfig& cfg = {});

struct ConormalReport {
  double max_residual;
  int samples_used;
  std::vector<double> residuals;
};

// Transport conormal directions of {f = 0} through the flop and test the
// resulting base points against the dual hypersurface.
ConormalReport conormal_transport(const HomogeneousPolynomial& f, int samples,
                                  const NumericConfig& cfg = {});

}  // namespace hklag
