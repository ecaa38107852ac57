#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace mkpi {

// mpq_class keeps numerator/denominator coprime with positive denominator
// after every arithmetic operation; constructors need an explicit canonicalize.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "p" or "p/q" (optional sign); throws std::invalid_argument.
Rational parse_rational(const std::string& s);

}  // namespace mkpi
