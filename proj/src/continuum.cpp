#include "spreadpc/continuum.hpp"

#include <cmath>
#include <string>

#include "spreadpc/errors.hpp"

namespace spreadpc {

namespace {

void require_series_dim(int d) {
  if (d <= 4) {
    throw InvalidArgument("random-walk constants need d >= 5 (got d = " + std::to_string(d) + ")");
  }
}

void require_order(int n_max, int minimum) {
  if (n_max < minimum) {
    throw InvalidArgument("n_max must be >= " + std::to_string(minimum));
  }
}

TailEstimate series_tail(const std::vector<double>& terms, int last_index) {
  const std::span<const double> last(terms.data() + terms.size() - 4, 4);
  return power_law_tail(last, last_index);
}

}  // namespace

Rational irwin_hall_center(int n) {
  if (n < 1) throw InvalidArgument("irwin_hall_center needs n >= 1");
  // f_n(n/2) = 1/(n-1)! sum_k (-1)^k C(n,k) (n/2 - k)^{n-1}
  //          = sum_k (-1)^k C(n,k) (n - 2k)^{n-1} / (2^{n-1} (n-1)!).
  Integer sum = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n - 2 * k),
                  static_cast<unsigned long>(n - 1));
    const Integer term = binomial(n, k) * power;
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  Integer den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(n - 1));
  den <<= static_cast<mp_bitcnt_t>(n - 1);
  Rational r(sum, den);
  r.canonicalize();
  return r;
}

Rational axis_uniform_center(int n) { return irwin_hall_center(n) / 2; }

Rational ustar_origin_exact(int n, int d) {
  if (n < 1) throw InvalidArgument("ustar_origin needs n >= 1");
  if (d < 1) throw InvalidArgument("ustar_origin needs d >= 1");
  return pow(axis_uniform_center(n), static_cast<unsigned long>(d));
}

double ustar_origin(int n, int d) { return to_double(ustar_origin_exact(n, d)); }

SeriesConstant c_lt(int d, int n_max) {
  require_series_dim(d);
  require_order(n_max, 5);
  SeriesConstant out;
  out.e_power = -1;
  out.n_max = n_max;
  out.rational_part = 0;
  std::vector<double> terms;
  for (int n = 2; n <= n_max; ++n) {
    const Rational term = ratio(n + 1, 2) * ustar_origin_exact(n, d);
    out.rational_part += term;
    terms.push_back(times_e_power(term, -1));
  }
  out.value = times_e_power(out.rational_part, -1);
  const auto tail = series_tail(terms, n_max);
  if (!tail.valid) throw NumericalError("C_LT tail estimate is not valid");
  out.truncation_error = tail.value;
  out.tail_exponent = tail.exponent;
  return out;
}

SeriesConstant animal_correction(int d, int n_max) {
  require_series_dim(d);
  require_order(n_max, 6);
  SeriesConstant out;
  out.e_power = -2;
  out.n_max = n_max;
  out.rational_part = 0;
  std::vector<double> terms;
  for (int n = 3; n <= n_max; ++n) {
    const Rational term = ustar_origin_exact(n, d) / 2;
    out.rational_part += term;
    terms.push_back(times_e_power(term, -2));
  }
  out.value = times_e_power(out.rational_part, -2);
  const auto tail = series_tail(terms, n_max);
  if (!tail.valid) throw NumericalError("animal correction tail estimate is not valid");
  out.truncation_error = tail.value;
  out.tail_exponent = tail.exponent;
  return out;
}

AnimalConstant c_la(int d, int n_max) {
  AnimalConstant out;
  out.trees = c_lt(d, n_max);
  out.correction = animal_correction(d, n_max);
  out.value = out.trees.value - out.correction.value;
  out.truncation_error = out.trees.truncation_error + out.correction.truncation_error;
  return out;
}

PcPrediction predict_pc(Model model, int d, int L, int n_max) {
  if (L < 1) throw InvalidArgument("L must be >= 1");
  PcPrediction out;
  out.model = model;
  out.d = d;
  out.L = L;
  out.constant = model == Model::trees ? c_lt(d, n_max).value : c_la(d, n_max).value;
  out.value = times_e_power(Rational(1), -1) + out.constant * std::pow(double(L), -d);
  out.remainder_order = d + 1;
  if (d <= 8) {
    out.warning = "d = " + std::to_string(d) +
                  " is outside the proven regime d > 8; the expansion is computed but unproven";
  }
  return out;
}

ConstantsReport constants_report(int d, int n_max, int L_first, int L_last) {
  require_series_dim(d);
  if (L_first < 1 || L_last < L_first) throw InvalidArgument("invalid L range");
  ConstantsReport report;
  report.d = d;
  report.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) report.u_table.push_back(ustar_origin_exact(n, d));
  report.la = c_la(d, n_max);
  report.lt = report.la.trees;
  report.truncation_error = report.la.truncation_error;
  const double inv_e = times_e_power(Rational(1), -1);
  for (Model model : {Model::trees, Model::animals}) {
    const double constant = model == Model::trees ? report.lt.value : report.la.value;
    for (int L = L_first; L <= L_last; ++L) {
      PcPrediction p;
      p.model = model;
      p.d = d;
      p.L = L;
      p.constant = constant;
      p.value = inv_e + constant * std::pow(double(L), -d);
      p.remainder_order = d + 1;
      report.pc_predictions.push_back(p);
    }
  }
  if (d <= 8) {
    report.warnings.push_back("d = " + std::to_string(d) +
                              " is outside the proven regime d > 8; predictions are unproven");
  }
  return report;
}

}  // namespace spreadpc
