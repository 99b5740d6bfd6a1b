#pragma once
// Exact integer/rational arithmetic used wherever a strict comparison or an
// oracle value must not depend on floating-point rounding.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string_view>

namespace quota {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses a finite decimal literal ("7", "3.25", "1.5e-3") into the exact
// rational it denotes. The whole string must be consumed; throws
// std::invalid_argument otherwise.
Rational parse_decimal(std::string_view text);

// Exact rational value of a finite double (every finite double is a dyadic
// rational). Throws std::invalid_argument for NaN/Inf.
Rational rational_from_double(double x);

// Nearest-double conversion, safe for values far outside the range where
// numerator/denominator individually fit in a double.
double to_double(const Rational& r);

// Natural log of a positive rational, valid far beyond double range;
// -infinity for zero. Throws std::domain_error for negative input.
double log_to_double(const Rational& r);

// C(n, k), exact; 0 when k < 0 or k > n.
BigInt binomial(long long n, long long k);

// log C(n, k); -infinity when the coefficient is 0.
double log_binomial(long long n, long long k);

// base^exp for exp >= 0, with 0^0 = 1.
Rational pow_rational(const Rational& base, long long exp);

}  // namespace quota
