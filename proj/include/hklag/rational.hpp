#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hklag {

// Exact rational scalar. Always stored reduced with positive denominator
// (gmp canonical form).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace hklag
