#include "spreadpc/rational.hpp"

#include <cstdio>
#include <cstdlib>

#include "spreadpc/errors.hpp"

namespace spreadpc {

const mpf_class& euler_e() {
  static const mpf_class e = [] {
    mpf_class sum(1, kWorkingPrecision);
    mpf_class term(1, kWorkingPrecision);
    for (unsigned long k = 1; k < 80; ++k) {
      term /= k;
      sum += term;
    }
    return sum;
  }();
  return e;
}

double to_double(const Rational& q) {
  mpf_class f(q, kWorkingPrecision);
  return f.get_d();
}

double times_e_power(const Rational& q, int power) {
  mpf_class f(q, kWorkingPrecision);
  const mpf_class& e = euler_e();
  for (int i = 0; i < power; ++i) f *= e;
  for (int i = 0; i > power; --i) f /= e;
  return f.get_d();
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw IoError("malformed rational '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string format_decimal(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

double round_significant(double value, int digits) {
  return std::strtod(format_decimal(value, digits).c_str(), nullptr);
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational ratio(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

}  // namespace spreadpc
