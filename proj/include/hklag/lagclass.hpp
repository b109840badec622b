#pragma once

#include <string>
#include <vector>

#include "hklag/rational.hpp"

namespace hklag {

struct MissingClass : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotMinusTwo : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AllNull : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PlueckerViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

// Intersection bookkeeping for Lagrangian classes C_1..C_k on a
// 2n-dimensional M containing a Lagrangian P^n, together with the
// corresponding dual-side data.  a_i = C_i . P, b_i = C_i^ . P*, and
// P.P = P*.P* = (-1)^n (n+1).  Construction enforces the Plucker-type
// relation; it is a theorem, so inconsistent tables are rejected.
struct LagrangianClassTable {
  int n;
  std::vector<std::string> labels;
  IntMat s;       // s_{ij} = C_i . C_j
  IntVec a;       // C_i . P
  IntVec b;       // C_i^ . P*
  IntMat s_dual;  // s'_{ij} = C_i^ . C_j^

  LagrangianClassTable(int n_, std::vector<std::string> labels_, IntMat s_,
                       IntVec a_, IntVec b_, IntMat s_dual_);

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;  // throws MissingClass
  Integer p_dot_p() const;                       // (-1)^n (n+1)
};

struct GramLattice {
  int rank;
  IntMat gram;

  GramLattice(int rank_, IntMat gram_);  // validates symmetry
};

// Shared-center Mukai modification data for a pair of classes.
struct MukaiCenterData {
  int k;               // fiber dimension of the P^k-bundle
  Integer a1, a2;      // C_i . C^proj
  Integer g;           // C^proj . C^proj = C^{proj,dual} . C^{proj,dual}
  Integer b1, b2;      // C_i^ . C^{proj,dual}
  Integer s12;         // C_1 . C_2
  Integer s12_dual;    // C_1^ . C_2^
};

Integer euler_from_class(int n, const Integer& self_intersection);
Integer ext_euler(int n, const Integer& c1_dot_c2);
Integer clean_intersection_euler(int dim_d, const Integer& euler_d);

struct PlueckerSides {
  Rational lhs;
  Rational rhs;
};

PlueckerSides pluecker_type_check(const LagrangianClassTable& t, int i, int j);

// The normalized transform L(C_i) = C_i^ + coef . P*, with
// coef = (a_i + (-1)^{n+1} b_i) / (n+1).
struct TransformedClass {
  int index;
  Rational coef;
  bool integral;  // false flags a non-integer cycle coefficient
};

TransformedClass normalized_transform(const LagrangianClassTable& t, int i);

// L(C_i) . L(C_j), computed bilinearly from the table.
Rational transformed_pairing(const LagrangianClassTable& t, int i, int j);
// L(C_i) . L(P), where L(P) = (-1)^n P*.
Rational transformed_pairing_with_p(const LagrangianClassTable& t, int i);

bool transform_preserves_product(const LagrangianClassTable& t);

Integer gram_pair(const GramLattice& l, const IntVec& u, const IntVec& v);

// The classical K3 display taken verbatim: C - (C.P) P.  Not a Gram
// isometry; see the variant below for the honest reflection.
IntVec k3_reflection(const GramLattice& l, const IntVec& p, const IntVec& c);
// Standard Picard-Lefschetz reflection in a (-2)-class: C + (C.P) P.
IntVec k3_reflection_variant(const GramLattice& l, const IntVec& p,
                             const IntVec& c);

struct MukaiCheckResult {
  Rational lhs;
  Rational rhs;
  bool product_preserved;  // L(C_1).L(C_2) = C_1.C_2
};

MukaiCheckResult mukai_pluecker_check(const MukaiCenterData& d);

struct FujikiSample {
  IntVec phi;
  Integer integral;  // value of the 2(n-k)-fold power integral at phi
};

struct FujikiFit {
  Rational c;
  Rational max_defect;
};

FujikiFit bb_fujiki_fit(const GramLattice& q_gram,
                        const std::vector<FujikiSample>& samples, int n,
                        int k);

}  // namespace hklag
