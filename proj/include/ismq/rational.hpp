#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ismq {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "a", "-a", "a/b". Decimal literals and exponents are rejected so
// that every value read from disk is exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Rational pow(const Rational& base, unsigned long exponent);

long double to_long_double(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace ismq
