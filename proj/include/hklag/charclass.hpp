#pragma once

#include <vector>

#include "hklag/poly.hpp"
#include "hklag/rational.hpp"

namespace hklag {

struct TruncationTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadConstantTerm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Characteristic-class series truncated at a fixed weighted degree.
// Variable i of the underlying polynomial is the Chern class c_{i+1} of a
// rank-`rank` bundle and carries weight i+1.
class ClassSeries {
 public:
  ClassSeries(int rank, int trunc);         // the zero series
  ClassSeries(int rank, int trunc, Poly p);  // truncates p

  static ClassSeries one(int rank, int trunc);
  // 1 + c_1 + ... + c_rank
  static ClassSeries total_chern(int rank, int trunc);
  // 1 - c_1 + c_2 - ...: the chern class of the dual bundle
  static ClassSeries dual_chern(int rank, int trunc);

  int rank() const { return rank_; }
  int trunc() const { return trunc_; }
  const Poly& poly() const { return poly_; }

  ClassSeries operator+(const ClassSeries& o) const;
  ClassSeries operator-(const ClassSeries& o) const;
  ClassSeries operator*(const ClassSeries& o) const;
  ClassSeries operator*(const Rational& c) const;
  bool operator==(const ClassSeries& o) const;

  // graded component of weighted degree k
  Poly component(int k) const;
  Rational constant_term() const;

  // substitute generator c_k -> values[k-1] (a polynomial of weighted
  // degree k in another generator set) and re-truncate
  ClassSeries compose(int new_rank,
                      const std::vector<Poly>& values) const;

 private:
  int rank_;
  int trunc_;
  Poly poly_;
};

// Total Chern class of E + E^*; all odd graded components vanish.
ClassSeries chern_of_E_plus_Edual(int rank, int trunc);

// p_k = (-1)^k c_{2k}(E + E^*), as a polynomial in c_1..c_rank.
Poly pontrjagin_class(int rank, int trunc, int k);

enum class GenusKind { AHat, Todd, L };

// Multiplicative sequence of the genus in c_1..c_rank, truncated at N.
ClassSeries genus_series(GenusKind kind, int rank, int N);

// Unique formal square root with constant term 1.
ClassSeries sqrt_series(const ClassSeries& s);

// Todd(E+E*) = Ahat(E+E*) = Ahat(E)^2 through degree N, formally.
bool a_hat_square_identity(int rank, int N);

}  // namespace hklag
