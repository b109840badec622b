#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hklag/rational.hpp"

namespace hklag {

struct NotCoisotropic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotLagrangian : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DependentHyperplanes : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadExponent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row major

// Row reduction utilities over Q.
RatMat rref(RatMat m);
int rank(const RatMat& m);
RatMat nullspace(const RatMat& m);  // basis rows of the right kernel
RatMat row_space_basis(const RatMat& m);  // nonzero rows of rref

// Symplectic vector space of dimension 2n over Q.  `gram` is the matrix of
// the symplectic form in the working basis; the default realizes
// Omega(e_i, e_{n+i}) = 1 with all other independent pairings zero.
struct SymplecticSpace {
  int n;
  RatMat gram;

  explicit SymplecticSpace(int n_half);
  SymplecticSpace(int n_half, RatMat gram_matrix);  // validates shape
  int dim() const { return static_cast<int>(gram.size()); }
};

enum class Classification { Isotropic, Coisotropic, Lagrangian, None };

struct SymplecticSubspace {
  SymplecticSpace ambient;
  RatMat basis;  // rows, linearly independent

  SymplecticSubspace(SymplecticSpace space, RatMat basis_rows);
  int dim() const { return static_cast<int>(basis.size()); }
  bool same_space(const SymplecticSubspace& o) const;
  bool contains(const SymplecticSubspace& o) const;
};

SymplecticSubspace perp(const SymplecticSubspace& c);
Classification classify(const SymplecticSubspace& c);

// True iff Omega^k restricted to C vanishes identically, decided by the
// Pfaffians of all 2k x 2k principal blocks of the restricted form.
bool wedge_power_vanishes(const SymplecticSubspace& c, int k);

// Hyperplanes given as covectors; returns false with the first failing
// (i, j) pair if Omega^{n-1} does not vanish on some D_i cap D_j.
struct HyperplaneCheck {
  bool coisotropic;
  std::optional<std::pair<int, int>> witness;
};
HyperplaneCheck coisotropic_via_hyperplanes(const SymplecticSpace& space,
                                            const RatMat& covectors);

SymplecticSubspace hyperplane_intersection(const SymplecticSpace& space,
                                           const RatMat& covectors);

// Quotient D / D^perp of a coisotropic subspace, with its induced
// nondegenerate form and the map from ambient vectors in D to quotient
// coordinates.
struct SymplecticReduction {
  SymplecticSpace quotient;      // dim = dim D - dim D^perp
  RatMat section;                // rows: chosen lifts of the quotient basis
  RatMat dperp;                  // basis of D^perp

  // Quotient coordinates of an ambient vector v in D.
  RatVec project(const RatVec& v) const;
};

SymplecticReduction reduce(const SymplecticSubspace& d);

SymplecticSubspace lag_project(const SymplecticSubspace& c,
                               const SymplecticSubspace& d);

// Image of C cap D in D / D^perp, as a subspace of reduce(D).
SymplecticSubspace lag_reduce(const SymplecticSubspace& c,
                              const SymplecticSubspace& d,
                              const SymplecticReduction& red);

SymplecticSubspace intersect(const SymplecticSubspace& a,
                             const SymplecticSubspace& b);
SymplecticSubspace sum(const SymplecticSubspace& a,
                       const SymplecticSubspace& b);

}  // namespace hklag
