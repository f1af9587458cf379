#pragma once

#include <gmpxx.h>

#include <string>

namespace spreadpc {

using Integer = mpz_class;
using Rational = mpq_class;

// Working precision (bits) for the final rational -> real conversions.
inline constexpr mp_bitcnt_t kWorkingPrecision = 256;

// Euler's number at kWorkingPrecision bits.
const mpf_class& euler_e();

// Nearest double to q, computed through a high-precision float.
double to_double(const Rational& q);

// q * e^power rounded to double; power may be negative.
double times_e_power(const Rational& q, int power);

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

Rational parse_rational(const std::string& text);

// num/den in canonical form (mpq_class(num, den) is not reduced).
Rational ratio(long num, long den);

// Decimal rendering with `digits` significant digits (printf %.*g).
std::string format_decimal(double value, int digits = 15);

// value rounded to `digits` significant digits.
double round_significant(double value, int digits);

Integer binomial(unsigned long n, unsigned long k);

Rational pow(const Rational& base, unsigned long exponent);

}  // namespace spreadpc
