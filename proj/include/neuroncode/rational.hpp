#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace neuroncode {

// Exact rational scalar. Every quantity that feeds a sign decision is a
// Rational; floating point appears only in human-readable output.
using Rational = mpq_class;
using Integer = mpz_class;

// sign(0) = +1 throughout.
inline int sign_of(const Rational& value) { return sgn(value) < 0 ? -1 : 1; }

Rational make_rational(long long numerator, long long denominator = 1);

// Accepts "p/q", integer and plain decimal literals ("-3", "0.25", "1.");
// scientific notation and anything else is rejected with parse_error.
Rational parse_rational(std::string_view text);

// "p" when integral, "p/q" otherwise; exact.
std::string to_fraction_string(const Rational& value);

bool is_integral(const Rational& value);

// requires an integral value that fits in long long
long long to_long(const Rational& value);

double to_double(const Rational& value);

}  // namespace neuroncode
