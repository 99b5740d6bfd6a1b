#include "quota/exact.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quota {

namespace {

BigInt pow10_big(long long e) {
  BigInt r = 1;
  BigInt base = 10;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

[[noreturn]] void bad_decimal(std::string_view text, const char* why) {
  throw std::invalid_argument("bad decimal '" + std::string(text) + "': " + why);
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (n == 0) bad_decimal(text, "empty");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = (text[i] == '-');
    ++i;
  }
  BigInt mantissa = 0;
  long long frac_digits = 0;
  bool any_digit = false;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa = mantissa * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++frac_digits;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit) bad_decimal(text, "no digits");
  long long exp10 = 0;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      exp_neg = (text[i] == '-');
      ++i;
    }
    bool any_exp_digit = false;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exp10 = exp10 * 10 + (text[i] - '0');
      if (exp10 > 100000) bad_decimal(text, "exponent out of range");
      any_exp_digit = true;
      ++i;
    }
    if (!any_exp_digit) bad_decimal(text, "missing exponent digits");
    if (exp_neg) exp10 = -exp10;
  }
  if (i != n) bad_decimal(text, "trailing characters");

  Rational value(mantissa);
  const long long net = exp10 - frac_digits;
  if (net > 0) {
    value *= Rational(pow10_big(net));
  } else if (net < 0) {
    value /= Rational(pow10_big(-net));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
  if (x == 0.0) return Rational(0);
  int exp2 = 0;
  const double mant = std::frexp(x, &exp2);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));  // exact: 53-bit mantissa
  exp2 -= 53;
  Rational value(scaled);
  if (exp2 > 0) {
    value *= Rational(BigInt(1) << exp2);
  } else if (exp2 < 0) {
    value /= Rational(BigInt(1) << -exp2);
  }
  return value;
}

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  // Bring num/den into [2^62, 2^64) before converting, so the conversion is a
  // single well-rounded 64-bit step followed by an exact ldexp.
  const auto nb = static_cast<long long>(boost::multiprecision::msb(num));
  const auto db = static_cast<long long>(boost::multiprecision::msb(den));
  const long long shift = 62 - (nb - db);
  BigInt scaled = (shift >= 0) ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
  double d = scaled.convert_to<double>();
  long long e = -shift;
  while (e > 1000) {  // stay inside ldexp's int range
    d = std::ldexp(d, 1000);
    e -= 1000;
  }
  while (e < -1000) {
    d = std::ldexp(d, -1000);
    e += 1000;
  }
  d = std::ldexp(d, static_cast<int>(e));
  return negative ? -d : d;
}

double log_to_double(const Rational& r) {
  if (r == 0) return -std::numeric_limits<double>::infinity();
  if (r < 0) throw std::domain_error("log_to_double: negative input");
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  // ln(n) = ln(top 64 bits) + (discarded bits) * ln 2.
  auto log_big = [](const BigInt& n) {
    const auto bits = static_cast<long long>(boost::multiprecision::msb(n));
    const long long drop = std::max<long long>(0, bits - 62);
    const double top = BigInt(n >> drop).convert_to<double>();
    return std::log(top) + static_cast<double>(drop) * std::numbers::ln2;
  };
  return log_big(num) - log_big(den);
}

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;  // exact at every step
  }
  return result;
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

Rational pow_rational(const Rational& base, long long exp) {
  if (exp < 0) throw std::invalid_argument("pow_rational: negative exponent");
  Rational result = 1;
  Rational b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

}  // namespace quota
