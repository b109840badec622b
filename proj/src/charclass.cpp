#include "hklag/charclass.hpp"

namespace hklag {

namespace {

// weighted degree of a monomial in c_1..c_r: var i carries weight i+1
int weighted_degree(const std::vector<int>& exps) {
  int wd = 0;
  for (size_t i = 0; i < exps.size(); ++i)
    wd += static_cast<int>(i + 1) * exps[i];
  return wd;
}

Poly truncate_poly(const Poly& p, int trunc) {
  Poly out(p.nvars());
  for (const auto& [e, c] : p.terms())
    if (weighted_degree(e) <= trunc) out.add_term(e, c);
  return out;
}

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

// --- univariate formal power series over Q, coefficient vectors of
// --- length N+1; only what the genus computation needs

using Series = std::vector<Rational>;

Series series_mul(const Series& a, const Series& b) {
  size_t n = a.size();
  Series out(n, Rational(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series series_inverse(const Series& a) {
  size_t n = a.size();
  if (a[0] == 0)
    throw BadConstantTerm("series inverse: constant term is zero");
  Series out(n, Rational(0));
  out[0] = Rational(1) / a[0];
  for (size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (size_t i = 1; i <= k; ++i) acc += a[i] * out[k - i];
    out[k] = -acc / a[0];
  }
  return out;
}

// log of a series with constant term 1, via (log a)' = a'/a
Series series_log(const Series& a) {
  size_t n = a.size();
  if (a[0] != 1)
    throw BadConstantTerm("series log: constant term must be 1");
  Series da(n, Rational(0));
  for (size_t k = 0; k + 1 < n; ++k) da[k] = Rational(k + 1) * a[k + 1];
  Series q = series_mul(da, series_inverse(a));
  Series out(n, Rational(0));
  for (size_t k = 1; k < n; ++k) out[k] = q[k - 1] / Rational(k);
  return out;
}

// characteristic power series Q(t) of the genus, through degree N
Series genus_char_series(GenusKind kind, int N) {
  Series s(N + 1, Rational(0));
  switch (kind) {
    case GenusKind::AHat: {
      // Q(t) = (t/2)/sinh(t/2): invert sinh(t/2)/(t/2)
      for (int k = 0; 2 * k <= N; ++k)
        s[2 * k] = Rational(1) / (Rational(Integer(1) << (2 * k)) *
                                  factorial(2 * k + 1));
      return series_inverse(s);
    }
    case GenusKind::Todd: {
      // Q(t) = t/(1 - e^{-t}): invert (1 - e^{-t})/t
      for (int k = 0; k <= N; ++k)
        s[k] = Rational((k % 2 == 0) ? 1 : -1) / factorial(k + 1);
      return series_inverse(s);
    }
    case GenusKind::L: {
      // Q(t) = t/tanh t = cosh t * (sinh t / t)^{-1}
      Series ch(N + 1, Rational(0));
      for (int k = 0; 2 * k <= N; ++k) {
        s[2 * k] = Rational(1) / factorial(2 * k + 1);
        ch[2 * k] = Rational(1) / factorial(2 * k);
      }
      return series_mul(ch, series_inverse(s));
    }
  }
  throw std::invalid_argument("genus_char_series: unknown kind");
}

}  // namespace

ClassSeries::ClassSeries(int rank, int trunc)
    : rank_(rank), trunc_(trunc), poly_(rank) {
  if (rank < 1) throw std::invalid_argument("class series: rank must be >= 1");
  if (trunc < 0)
    throw std::invalid_argument("class series: negative truncation");
}

ClassSeries::ClassSeries(int rank, int trunc, Poly p)
    : ClassSeries(rank, trunc) {
  if (p.nvars() != rank)
    throw DimensionMismatch("class series: generator count mismatch");
  poly_ = truncate_poly(p, trunc);
}

ClassSeries ClassSeries::one(int rank, int trunc) {
  return ClassSeries(rank, trunc, Poly::constant(rank, 1));
}

ClassSeries ClassSeries::total_chern(int rank, int trunc) {
  Poly p = Poly::constant(rank, 1);
  for (int i = 0; i < rank; ++i) p = p + Poly::variable(rank, i);
  return ClassSeries(rank, trunc, p);
}

ClassSeries ClassSeries::dual_chern(int rank, int trunc) {
  Poly p = Poly::constant(rank, 1);
  for (int i = 0; i < rank; ++i) {
    Rational sign = (i % 2 == 0) ? -1 : 1;  // c_{i+1} gets (-1)^{i+1}
    p = p + Poly::variable(rank, i) * sign;
  }
  return ClassSeries(rank, trunc, p);
}

ClassSeries ClassSeries::operator+(const ClassSeries& o) const {
  if (rank_ != o.rank_ || trunc_ != o.trunc_)
    throw DimensionMismatch("class series: incompatible operands");
  return ClassSeries(rank_, trunc_, poly_ + o.poly_);
}

ClassSeries ClassSeries::operator-(const ClassSeries& o) const {
  if (rank_ != o.rank_ || trunc_ != o.trunc_)
    throw DimensionMismatch("class series: incompatible operands");
  return ClassSeries(rank_, trunc_, poly_ - o.poly_);
}

ClassSeries ClassSeries::operator*(const ClassSeries& o) const {
  if (rank_ != o.rank_ || trunc_ != o.trunc_)
    throw DimensionMismatch("class series: incompatible operands");
  return ClassSeries(rank_, trunc_, poly_ * o.poly_);
}

ClassSeries ClassSeries::operator*(const Rational& c) const {
  return ClassSeries(rank_, trunc_, poly_ * c);
}

bool ClassSeries::operator==(const ClassSeries& o) const {
  return rank_ == o.rank_ && trunc_ == o.trunc_ && poly_ == o.poly_;
}

Poly ClassSeries::component(int k) const {
  Poly out(rank_);
  for (const auto& [e, c] : poly_.terms())
    if (weighted_degree(e) == k) out.add_term(e, c);
  return out;
}

Rational ClassSeries::constant_term() const {
  for (const auto& [e, c] : poly_.terms())
    if (weighted_degree(e) == 0) return c;
  return 0;
}

ClassSeries ClassSeries::compose(int new_rank,
                                 const std::vector<Poly>& values) const {
  if (static_cast<int>(values.size()) < rank_)
    throw DimensionMismatch("compose: not enough substitution values");
  for (const auto& v : values)
    if (v.nvars() != new_rank)
      throw DimensionMismatch("compose: value generator count mismatch");
  Poly out(new_rank);
  for (const auto& [e, c] : poly_.terms()) {
    Poly term = Poly::constant(new_rank, c);
    for (int i = 0; i < rank_; ++i)
      if (e[i] > 0) term = truncate_poly(term * values[i].pow(e[i]), trunc_);
    out = out + term;
  }
  return ClassSeries(new_rank, trunc_, out);
}

ClassSeries chern_of_E_plus_Edual(int rank, int trunc) {
  return ClassSeries::total_chern(rank, trunc) *
         ClassSeries::dual_chern(rank, trunc);
}

Poly pontrjagin_class(int rank, int trunc, int k) {
  if (2 * k > trunc)
    throw TruncationTooLarge("pontrjagin class beyond the truncation");
  Rational sign = (k % 2 == 0) ? 1 : -1;
  return chern_of_E_plus_Edual(rank, trunc).component(2 * k) * sign;
}

ClassSeries genus_series(GenusKind kind, int rank, int N) {
  if (N > 12)
    throw TruncationTooLarge("genus series: truncation above 12");
  ClassSeries result(rank, N);
  Series alpha = series_log(genus_char_series(kind, N));

  // power sums of the Chern roots via Newton's identities, with
  // c_j = 0 above the rank
  std::vector<Poly> p(N + 1, Poly(rank));
  std::vector<Poly> c(N + 1, Poly(rank));
  for (int j = 1; j <= N && j <= rank; ++j) c[j] = Poly::variable(rank, j - 1);
  for (int j = 1; j <= N; ++j) {
    Poly acc(rank);
    for (int i = 1; i < j; ++i) {
      Rational sign = (i % 2 == 1) ? 1 : -1;
      acc = acc + c[i] * p[j - i] * sign;
    }
    Rational sign = (j % 2 == 1) ? 1 : -1;
    acc = acc + c[j] * (sign * Rational(j));
    p[j] = truncate_poly(acc, N);
  }

  // genus = exp(sum_j alpha_j p_j)
  Poly x(rank);
  for (int j = 1; j <= N; ++j)
    if (alpha[j] != 0) x = x + p[j] * alpha[j];
  Poly expo = Poly::constant(rank, 1);
  Poly power = Poly::constant(rank, 1);
  for (int m = 1; m <= N; ++m) {
    power = truncate_poly(power * x, N);
    if (power.is_zero()) break;
    expo = expo + power * (Rational(1) / factorial(m));
  }
  return ClassSeries(rank, N, expo);
}

ClassSeries sqrt_series(const ClassSeries& s) {
  if (s.constant_term() != 1)
    throw BadConstantTerm("sqrt series: constant term must be 1");
  int N = s.trunc();
  std::vector<Poly> r(N + 1, Poly(s.rank()));
  r[0] = Poly::constant(s.rank(), 1);
  Poly acc = r[0];
  for (int k = 1; k <= N; ++k) {
    Poly cross(s.rank());
    for (int i = 1; i < k; ++i) cross = cross + r[i] * r[k - i];
    r[k] = (s.component(k) - cross) * Rational(1, 2);
    acc = acc + r[k];
  }
  return ClassSeries(s.rank(), N, acc);
}

bool a_hat_square_identity(int rank, int N) {
  auto ce = chern_of_E_plus_Edual(rank, N);
  std::vector<Poly> values;
  for (int k = 1; k <= 2 * rank; ++k) values.push_back(ce.component(k));

  auto a_sum = genus_series(GenusKind::AHat, 2 * rank, N).compose(rank, values);
  auto todd_sum =
      genus_series(GenusKind::Todd, 2 * rank, N).compose(rank, values);
  auto a_e = genus_series(GenusKind::AHat, rank, N);
  return todd_sum == a_sum && a_sum == a_e * a_e;
}

}  // namespace hklag
