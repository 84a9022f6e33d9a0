// catfin: exact rational scalars.  Thin helpers over GMP's canonical
// mpq_class (numerator/denominator coprime, denominator positive).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace catfin {

using Rational = mpq_class;
using Integer = mpz_class;

// "7", "-3/4" -> rational; throws EngineError(SyntaxError) on malformed text
// (including zero denominators).
Rational parse_rational(const std::string& text);

// Canonical text: "n" or "n/d" with d > 1; round-trips through
// parse_rational.
std::string rational_to_string(const Rational& q);

std::string integer_to_string(const Integer& z);

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Value of z modulo m (0 <= result < m), for word-sized m.
std::uint64_t mod_ui(const Integer& z, std::uint64_t m);

// Multiplicative inverse of z mod m; throws NonInvertibleDenominator when
// gcd(z, m) > 1.  Used to embed denominators into Z/p^2.
std::uint64_t invert_mod(const Integer& z, std::uint64_t m);

}  // namespace catfin
