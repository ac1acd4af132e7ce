#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace negamoran {

/// Exact arbitrary-precision rational. Every value the library computes from
/// digit words is one of these; doubles appear only in the dimension solvers.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "3", "-2/5" or "1/2". Throws std::invalid_argument on malformed or
/// zero-denominator input.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal rendering rounded half-away-from-zero to `significant` digits.
/// Plain notation for moderate magnitudes, otherwise d.ddd...e-XX.
std::string to_decimal(const Rational& value, int significant = 30);

Rational pow(const Rational& base, unsigned exponent);

double to_double(const Rational& value);

/// Natural log of a strictly positive rational, accurate for values far
/// outside the double range.
double log_of(const Rational& value);

}  // namespace negamoran
