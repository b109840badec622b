#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hklag/rational.hpp"

namespace hklag {

struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotHomogeneous : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroPolynomial : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graded-lex term order on exponent vectors: higher total degree first,
// then lexicographic with x0 > x1 > ... .  Used both for canonical printing
// and as the leading-term order in division and gcd.
struct GrlexGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Sparse multivariate polynomial over Q with a fixed number of variables
// x0..x{nvars-1}.  Not necessarily homogeneous; this is the workhorse for
// elimination, where intermediate values lose homogeneity bookkeeping.
class Poly {
 public:
  using TermMap = std::map<std::vector<int>, Rational, GrlexGreater>;

  explicit Poly(int nvars = 1) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i, int power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(int var) const;
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const TermMap& terms() const { return terms_; }

  void add_term(const std::vector<int>& exps, const Rational& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly& o) const;
  Poly pow(int k) const;

  Poly derivative(int var) const;
  Rational eval(std::span<const Rational> pt) const;
  std::complex<double> eval(std::span<const std::complex<double>> pt) const;

  // Substitute variable `var` by polynomial `value` (over the same nvars).
  Poly substitute(int var, const Poly& value) const;

  bool is_homogeneous(int* degree_out = nullptr) const;

  // Exact division: returns true and sets q with a == b*q, or returns
  // false if b does not divide a.
  static bool try_divexact(const Poly& a, const Poly& b, Poly* q);
  static Poly divexact(const Poly& a, const Poly& b);

  // Integer content of the coefficient list: the positive rational c such
  // that a/c has coprime integer coefficients.  Zero polynomial -> 0.
  Rational content() const;
  Poly primitive_part() const;
  // Primitive part with leading coefficient made positive.
  Poly normalized() const;

  // Polynomial gcd over Q, via primitive PRS, recursing on variables.
  // Result is primitive with positive leading coefficient.
  static Poly gcd(const Poly& a, const Poly& b);

  Poly squarefree_part() const;

  // Coefficient of var^d, viewed as a polynomial in the other variables
  // (the exponent of `var` is zeroed in the result).
  Poly coeff_in(int var, int d) const;

  // Sylvester resultant eliminating `var`, computed by fraction-free
  // Bareiss elimination.  Throws ZeroPolynomial if f or g vanishes.
  static Poly resultant(const Poly& f, const Poly& g, int var);

  // Canonical text: graded-lex term order, explicit '*'.
  std::string str(const std::string& varprefix = "x") const;

 private:
  int nvars_;
  TermMap terms_;
};

Poly operator*(const Rational& c, const Poly& p);

// Homogeneous form with exact rational coefficients.  The zero polynomial
// carries an explicit degree tag so homogeneity checks stay total.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(Poly p);  // throws NotHomogeneous
  static HomogeneousPolynomial zero(int nvars, int degree);
  static HomogeneousPolynomial parse(const std::string& text, int nvars);

  int nvars() const { return poly_.nvars(); }
  int degree() const { return degree_; }
  bool is_zero() const { return poly_.is_zero(); }
  const Poly& poly() const { return poly_; }

  std::vector<HomogeneousPolynomial> gradient() const;
  bool euler_identity_check() const;

  Rational evaluate(std::span<const Rational> pt) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> pt) const;

  std::string str(const std::string& varprefix = "x") const {
    return poly_.str(varprefix);
  }
  bool operator==(const HomogeneousPolynomial& o) const {
    return degree_ == o.degree_ && poly_ == o.poly_;
  }

 private:
  HomogeneousPolynomial(Poly p, int degree_tag)
      : poly_(std::move(p)), degree_(degree_tag) {}
  Poly poly_;
  int degree_;
};

// Parses general (possibly non-homogeneous) polynomial text; used by
// HomogeneousPolynomial::parse, which adds the homogeneity check.
Poly parse_poly(const std::string& text, int nvars);

}  // namespace hklag
