#include "hklag/lagclass.hpp"

namespace hklag {

namespace {

Integer sign_pow(int n) { return (n % 2 == 0) ? 1 : -1; }

void check_symmetric(const IntMat& m, const char* what) {
  size_t k = m.size();
  for (const auto& row : m)
    if (row.size() != k) throw std::invalid_argument(std::string(what) +
                                                     ": not square");
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j)
      if (m[i][j] != m[j][i])
        throw std::invalid_argument(std::string(what) + ": not symmetric");
}

}  // namespace

LagrangianClassTable::LagrangianClassTable(int n_,
                                          std::vector<std::string> labels_,
                                          IntMat s_, IntVec a_, IntVec b_,
                                          IntMat s_dual_)
    : n(n_),
      labels(std::move(labels_)),
      s(std::move(s_)),
      a(std::move(a_)),
      b(std::move(b_)),
      s_dual(std::move(s_dual_)) {
  if (n < 1) throw std::invalid_argument("table: n must be positive");
  size_t k = labels.size();
  if (s.size() != k || a.size() != k || b.size() != k || s_dual.size() != k)
    throw std::invalid_argument("table: field sizes disagree");
  check_symmetric(s, "s");
  check_symmetric(s_dual, "s_dual");
  // the Plucker-type relation is a theorem; reject tables that break it
  Rational denom = Rational(sign_pow(n + 1) * Integer(n + 1));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      Rational lhs = Rational(s[i][j]) + Rational(a[i] * a[j]) / denom;
      Rational rhs =
          Rational(s_dual[i][j]) + Rational(b[i] * b[j]) / denom;
      if (lhs != rhs)
        throw PlueckerViolation("table: plucker-type relation fails at (" +
                                labels[i] + ", " + labels[j] + ")");
    }
}

int LagrangianClassTable::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw MissingClass("no class named " + label);
}

Integer LagrangianClassTable::p_dot_p() const {
  return sign_pow(n) * Integer(n + 1);
}

GramLattice::GramLattice(int rank_, IntMat gram_)
    : rank(rank_), gram(std::move(gram_)) {
  if (static_cast<int>(gram.size()) != rank)
    throw std::invalid_argument("gram lattice: rank mismatch");
  check_symmetric(gram, "gram");
}

Integer euler_from_class(int n, const Integer& self_intersection) {
  return sign_pow(n) * self_intersection;
}

Integer ext_euler(int n, const Integer& c1_dot_c2) {
  return sign_pow(n) * c1_dot_c2;
}

Integer clean_intersection_euler(int dim_d, const Integer& euler_d) {
  return sign_pow(dim_d) * euler_d;
}

PlueckerSides pluecker_type_check(const LagrangianClassTable& t, int i,
                                  int j) {
  if (i < 0 || j < 0 || i >= t.size() || j >= t.size())
    throw MissingClass("class index out of range");
  Rational denom = Rational(sign_pow(t.n + 1) * Integer(t.n + 1));
  Rational lhs = Rational(t.s[i][j]) + Rational(t.a[i] * t.a[j]) / denom;
  Rational rhs =
      Rational(t.s_dual[i][j]) + Rational(t.b[i] * t.b[j]) / denom;
  return PlueckerSides{lhs, rhs};
}

TransformedClass normalized_transform(const LagrangianClassTable& t, int i) {
  if (i < 0 || i >= t.size()) throw MissingClass("class index out of range");
  Rational coef = (Rational(t.a[i]) +
                   Rational(sign_pow(t.n + 1)) * Rational(t.b[i])) /
                  Rational(t.n + 1);
  Rational r = coef;
  r.canonicalize();
  bool integral = (r.get_den() == 1);
  return TransformedClass{i, r, integral};
}

Rational transformed_pairing(const LagrangianClassTable& t, int i, int j) {
  Rational ci = normalized_transform(t, i).coef;
  Rational cj = normalized_transform(t, j).coef;
  // (C_i^ + ci P*) . (C_j^ + cj P*)
  return Rational(t.s_dual[i][j]) + ci * Rational(t.b[j]) +
         cj * Rational(t.b[i]) + ci * cj * Rational(t.p_dot_p());
}

Rational transformed_pairing_with_p(const LagrangianClassTable& t, int i) {
  Rational ci = normalized_transform(t, i).coef;
  // L(P) = (-1)^n P*
  return Rational(sign_pow(t.n)) *
         (Rational(t.b[i]) + ci * Rational(t.p_dot_p()));
}

bool transform_preserves_product(const LagrangianClassTable& t) {
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      if (transformed_pairing(t, i, j) != Rational(t.s[i][j])) return false;
  return true;
}

Integer gram_pair(const GramLattice& l, const IntVec& u, const IntVec& v) {
  if (static_cast<int>(u.size()) != l.rank ||
      static_cast<int>(v.size()) != l.rank)
    throw std::invalid_argument("gram_pair: vector length mismatch");
  Integer acc = 0;
  for (int i = 0; i < l.rank; ++i)
    for (int j = 0; j < l.rank; ++j) acc += u[i] * l.gram[i][j] * v[j];
  return acc;
}

namespace {

IntVec reflect(const GramLattice& l, const IntVec& p, const IntVec& c,
               int sign) {
  if (gram_pair(l, p, p) != -2)
    throw NotMinusTwo("reflection center must have self-intersection -2");
  Integer cp = gram_pair(l, c, p);
  IntVec out = c;
  for (int i = 0; i < l.rank; ++i) out[i] += sign * cp * p[i];
  return out;
}

}  // namespace

IntVec k3_reflection(const GramLattice& l, const IntVec& p, const IntVec& c) {
  return reflect(l, p, c, -1);  // C - (C.P) P, the display verbatim
}

IntVec k3_reflection_variant(const GramLattice& l, const IntVec& p,
                             const IntVec& c) {
  return reflect(l, p, c, +1);  // C + (C.P) P, the honest isometry
}

MukaiCheckResult mukai_pluecker_check(const MukaiCenterData& d) {
  if (d.g == 0)
    throw DegenerateProjection("mukai check: C^proj self-intersection 0");
  Rational g(d.g);
  Rational lhs = Rational(d.s12) - Rational(d.a1 * d.a2) / g;
  Rational rhs = Rational(d.s12_dual) - Rational(d.b1 * d.b2) / g;
  // general transform L(C) = C^ + lambda C^{proj,dual} with
  // lambda = ((-1)^k C.C^proj - C^.C^{proj,dual}) / (C^proj.C^proj)
  Rational ek(sign_pow(d.k));
  Rational l1 = (ek * Rational(d.a1) - Rational(d.b1)) / g;
  Rational l2 = (ek * Rational(d.a2) - Rational(d.b2)) / g;
  Rational prod = Rational(d.s12_dual) + l1 * Rational(d.b2) +
                  l2 * Rational(d.b1) + l1 * l2 * g;
  return MukaiCheckResult{lhs, rhs, prod == Rational(d.s12)};
}

FujikiFit bb_fujiki_fit(const GramLattice& q_gram,
                        const std::vector<FujikiSample>& samples, int n,
                        int k) {
  if (samples.empty())
    throw std::invalid_argument("bb_fujiki_fit: no samples");
  int power = n - k;
  Rational num = 0, den = 0;
  std::vector<Rational> q_pow;
  for (const auto& s : samples) {
    Integer q = gram_pair(q_gram, s.phi, s.phi);
    Rational qp = 1;
    for (int e = 0; e < power; ++e) qp *= Rational(q);
    q_pow.push_back(qp);
    num += Rational(s.integral) * qp;
    den += qp * qp;
  }
  if (den == 0) throw AllNull("bb_fujiki_fit: q vanishes on every sample");
  Rational c = num / den;
  Rational max_defect = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    Rational d = Rational(samples[i].integral) - c * q_pow[i];
    if (d < 0) d = -d;
    if (d > max_defect) max_defect = d;
  }
  return FujikiFit{c, max_defect};
}

}  // namespace hklag
