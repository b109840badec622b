#include "hklag/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace hklag {

bool GrlexGreater::operator()(const std::vector<int>& a,
                              const std::vector<int>& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return a > b;  // lexicographic, x0 strongest
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(std::vector<int>(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i, int power) {
  Poly p(nvars);
  std::vector<int> e(nvars, 0);
  e[i] = power;
  p.add_term(e, 1);
  return p;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  // first term under grlex has maximal degree
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return terms_.empty() ? -1 : d;
}

void Poly::add_term(const std::vector<int>& exps, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  std::vector<int> e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, a] : terms_) r.terms_.emplace(e, a * c);
  return r;
}

Poly operator*(const Rational& c, const Poly& p) { return p * c; }

bool Poly::operator==(const Poly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

Poly Poly::pow(int k) const {
  Poly r = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Rational Poly::eval(std::span<const Rational> pt) const {
  if (static_cast<int>(pt.size()) != nvars_)
    throw DimensionMismatch("evaluation point has wrong length");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= pt[i];
    acc += t;
  }
  return acc;
}

std::complex<double> Poly::eval(
    std::span<const std::complex<double>> pt) const {
  if (static_cast<int>(pt.size()) != nvars_)
    throw DimensionMismatch("evaluation point has wrong length");
  std::complex<double> acc = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = to_double(c);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= pt[i];
    acc += t;
  }
  return acc;
}

Poly Poly::substitute(int var, const Poly& value) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    std::vector<int> rest = e;
    rest[var] = 0;
    Poly t(nvars_);
    t.add_term(rest, c);
    if (e[var] > 0) t = t * value.pow(e[var]);
    r = r + t;
  }
  return r;
}

bool Poly::is_homogeneous(int* degree_out) const {
  if (terms_.empty()) {
    if (degree_out) *degree_out = -1;
    return true;
  }
  int d = total_degree();
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  if (degree_out) *degree_out = d;
  return true;
}

namespace {

bool divides(const std::vector<int>& num, const std::vector<int>& den) {
  for (size_t i = 0; i < num.size(); ++i)
    if (num[i] < den[i]) return false;
  return true;
}

}  // namespace

bool Poly::try_divexact(const Poly& a, const Poly& b, Poly* q) {
  if (b.is_zero()) throw ZeroPolynomial("division by zero polynomial");
  Poly quot(a.nvars());
  Poly rem = a;
  const auto& blead = *b.terms().begin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().begin();
    if (!divides(rlead.first, blead.first)) return false;
    std::vector<int> e(rem.nvars());
    for (int i = 0; i < rem.nvars(); ++i)
      e[i] = rlead.first[i] - blead.first[i];
    Rational c = rlead.second / blead.second;
    Poly t(rem.nvars());
    t.add_term(e, c);
    quot = quot + t;
    rem = rem - t * b;
  }
  if (q) *q = quot;
  return true;
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
  Poly q(a.nvars());
  if (!try_divexact(a, b, &q))
    throw std::logic_error("divexact: not divisible");
  return q;
}

Rational Poly::content() const {
  if (terms_.empty()) return 0;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  Rational r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

Poly Poly::primitive_part() const {
  if (terms_.empty()) return *this;
  return *this * (1 / content());
}

Poly Poly::normalized() const {
  if (terms_.empty()) return *this;
  Poly p = primitive_part();
  if (p.terms_.begin()->second < 0) p = -p;
  return p;
}

Poly Poly::coeff_in(int var, int d) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != d) continue;
    std::vector<int> rest = e;
    rest[var] = 0;
    r.add_term(rest, c);
  }
  return r;
}

namespace {

// Pseudo-remainder of a by b in variable `var` (coefficients are
// polynomials in the remaining variables).
Poly prem(Poly a, const Poly& b, int var) {
  int db = b.degree_in(var);
  Poly lb = b.coeff_in(var, db);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    Poly la = a.coeff_in(var, da);
    Poly shift = Poly::variable(a.nvars(), var, da - db);
    a = a * lb - la * shift * b;
    // control growth: primitive part in the full coefficient ring
    a = a.primitive_part();
  }
  return a;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  // pick the highest variable actually present
  int var = -1;
  for (int i = a.nvars() - 1; i >= 0; --i)
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      var = i;
      break;
    }
  if (var < 0) return constant(a.nvars(), 1);  // both constants

  // contents w.r.t. var live in the subring without var
  auto content_wrt = [var](const Poly& p) {
    Poly c(p.nvars());
    for (int d = 0; d <= p.degree_in(var); ++d) {
      Poly cd = p.coeff_in(var, d);
      if (!cd.is_zero()) c = gcd(c, cd);
      if (!c.is_zero() && c.total_degree() == 0) break;
    }
    return c;
  };
  Poly ca = content_wrt(a), cb = content_wrt(b);
  Poly pa = divexact(a, ca), pb = divexact(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Poly r = prem(pa, pb, var);
    pa = pb;
    pb = r;
  }
  // primitive part of the last nonzero remainder w.r.t. var
  pa = divexact(pa, content_wrt(pa));
  Poly result = gcd(ca, cb) * pa;
  return result.normalized();
}

Poly Poly::squarefree_part() const {
  if (is_zero() || total_degree() == 0) return normalized();
  Poly g = *this;
  for (int v = 0; v < nvars_; ++v) {
    if (degree_in(v) <= 0) continue;
    g = gcd(g, derivative(v));
    if (g.total_degree() == 0) break;
  }
  return divexact(*this, g).normalized();
}

Poly Poly::resultant(const Poly& f, const Poly& g, int var) {
  if (f.is_zero() || g.is_zero())
    throw ZeroPolynomial("resultant of zero polynomial");
  int m = f.degree_in(var), n = g.degree_in(var);
  if (m == 0 && n == 0)
    throw ZeroPolynomial("resultant: neither input involves the variable");
  if (m == 0) return f.pow(n);
  if (n == 0) return g.pow(m);
  int N = m + n;
  std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N, Poly(f.nvars())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = f.coeff_in(var, m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = g.coeff_in(var, n - j);

  // Bareiss fraction-free elimination with row pivoting.
  Poly prev = Poly::constant(f.nvars(), 1);
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int p = -1;
      for (int i = k + 1; i < N; ++i)
        if (!M[i][k].is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return Poly(f.nvars());  // singular: resultant is 0
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j)
        M[i][j] = divexact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
    prev = M[k][k];
  }
  Poly det = M[N - 1][N - 1];
  return sign < 0 ? -det : det;
}

std::string Poly::str(const std::string& varprefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_vars =
        std::accumulate(e.begin(), e.end(), 0) > 0;
    bool coeff_printed = false;
    if (a != 1 || !has_vars) {
      os << a.get_str();
      coeff_printed = true;
    }
    bool any = false;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (coeff_printed || any) os << "*";
      os << varprefix << i;
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int nvars;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError("parse error at position " + std::to_string(pos) + ": " +
                      what);
  }

  Integer parse_integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected integer");
    return Integer(s.substr(start, pos - start));
  }

  Poly parse_atom() {
    skip_ws();
    if (eat('(')) {
      Poly p = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    char c = peek();
    if (c == 'x') {
      ++pos;
      Integer idx = parse_integer();
      long i = idx.get_si();
      if (i < 0 || i >= nvars)
        fail("variable index out of range: x" + idx.get_str());
      return Poly::variable(nvars, static_cast<int>(i));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = parse_integer();
      if (eat('/')) {
        Integer den = parse_integer();
        if (den == 0) fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return Poly::constant(nvars, q);
      }
      return Poly::constant(nvars, Rational(num));
    }
    fail("unexpected character");
  }

  Poly parse_power() {
    Poly base = parse_atom();
    if (eat('^')) {
      Integer e = parse_integer();
      if (e < 0 || e > 64) fail("bad exponent");
      return base.pow(static_cast<int>(e.get_si()));
    }
    return base;
  }

  Poly parse_term() {
    Poly p = parse_power();
    while (eat('*')) p = p * parse_power();
    return p;
  }

  Poly parse_expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly p = parse_term();
    if (neg) p = -p;
    for (;;) {
      if (eat('+'))
        p = p + parse_term();
      else if (eat('-'))
        p = p - parse_term();
      else
        break;
    }
    return p;
  }
};

}  // namespace

Poly parse_poly(const std::string& text, int nvars) {
  Parser p{text, 0, nvars};
  Poly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

// ---------------------------------------------------------------------------
// HomogeneousPolynomial

HomogeneousPolynomial::HomogeneousPolynomial(Poly p) : poly_(std::move(p)) {
  int d;
  if (!poly_.is_homogeneous(&d))
    throw NotHomogeneous("terms of mixed degree");
  degree_ = poly_.is_zero() ? 0 : d;
}

HomogeneousPolynomial HomogeneousPolynomial::zero(int nvars, int degree) {
  return HomogeneousPolynomial(Poly(nvars), degree);
}

HomogeneousPolynomial HomogeneousPolynomial::parse(const std::string& text,
                                                   int nvars) {
  return HomogeneousPolynomial(parse_poly(text, nvars));
}

std::vector<HomogeneousPolynomial> HomogeneousPolynomial::gradient() const {
  if (is_zero()) throw ZeroPolynomial("gradient of zero polynomial");
  std::vector<HomogeneousPolynomial> g;
  g.reserve(nvars());
  for (int i = 0; i < nvars(); ++i) {
    Poly d = poly_.derivative(i);
    g.push_back(HomogeneousPolynomial(std::move(d), degree_ - 1));
  }
  return g;
}

bool HomogeneousPolynomial::euler_identity_check() const {
  if (is_zero()) throw ZeroPolynomial("euler identity on zero polynomial");
  Poly acc(nvars());
  for (int i = 0; i < nvars(); ++i)
    acc = acc + Poly::variable(nvars(), i) * poly_.derivative(i);
  return acc == poly_ * Rational(degree_);
}

Rational HomogeneousPolynomial::evaluate(std::span<const Rational> pt) const {
  return poly_.eval(pt);
}

std::complex<double> HomogeneousPolynomial::evaluate(
    std::span<const std::complex<double>> pt) const {
  return poly_.eval(pt);
}

}  // namespace hklag
