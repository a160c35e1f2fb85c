#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace pwf {

// Exact arbitrary-precision rational, canonical form (reduced, positive
// denominator) maintained by the GMP backend.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

// Accepts "a", "-a", "a/b".
inline Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (...) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace pwf
