#pragma once

#include <string>
#include <vector>

#include "hklag/poly.hpp"
#include "hklag/rational.hpp"

namespace hklag {

struct NonReduced : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EliminationCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentDualDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plane curve of degree d with delta nodes and kappa cusps.  The
// constructor enforces the genus bound delta + kappa <= (d-1)(d-2)/2.
struct PlueckerTriple {
  int d;
  int delta;
  int kappa;

  PlueckerTriple(int d_, int delta_, int kappa_);
};

struct DualCurveResult {
  HomogeneousPolynomial dual_poly;  // in the dual variables, canonical form
  int dual_degree;
  std::vector<std::string> extraneous_factors_removed;
};

// Defining polynomial of the dual curve of {f = 0}, by resultant
// elimination of the conormal system {f = 0, xi || grad f}.
DualCurveResult dual_polynomial(const HomogeneousPolynomial& f);

struct PlueckerDual {
  Integer d_dual;
  Integer kappa_dual;
};

// d^ = d(d-1) - 2 delta - 3 kappa,  kappa^ = 3d^2 - 6d - 6 delta - 8 kappa.
PlueckerDual pluecker(const PlueckerTriple& t);

// d^2 - 3d + 2 delta + 3 kappa, exactly as printed.
Integer chi_bar_formula(const PlueckerTriple& t);

// Both sides of "3 d^ = -chibar(S) - 2 chibar(S^)".  A calculator, not an
// asserter: the identity fails for some classical data and the report
// surfaces that honestly.
struct DegreeIdentityReport {
  Integer lhs;
  Integer rhs;
  bool match;
};

DegreeIdentityReport degree_identity_report(const PlueckerTriple& t,
                                            const PlueckerTriple& t_dual);

struct BidualResult {
  bool proportional;
  Rational scalar;  // f = scalar * (f^)^
};

BidualResult bidual_check(const HomogeneousPolynomial& f);

}  // namespace hklag
