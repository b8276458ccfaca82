#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace thetadiv {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Parses "3", "-2/7", "0.25" (finite decimals only) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Parses a comma-separated list of rationals.
RationalVector parse_rational_vector(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const RationalVector& values);

/// Representative of value modulo 1 in [0, 1).
Rational fractional_part(const Rational& value);

/// floor(value) as an exact integer.
Integer floor_of(const Rational& value);

RationalVector zero_vector(int length);

/// Exact r^k for integer k >= 0.
Rational power(const Rational& base, unsigned exponent);
Integer power(const Integer& base, unsigned exponent);

}  // namespace thetadiv
