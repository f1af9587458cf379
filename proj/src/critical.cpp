#include "spreadpc/critical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spreadpc/errors.hpp"

namespace spreadpc {

namespace {

void require_lattice_dim(const ConvolutionTable& table, int minimum, const char* what) {
  if (table.d < minimum) {
    throw InvalidArgument(std::string(what) + " needs d >= " + std::to_string(minimum) +
                          " (got d = " + std::to_string(table.d) + ")");
  }
}

LeadingValue make_leading(Rational coefficient, int e_power, double error) {
  LeadingValue v;
  v.coefficient = std::move(coefficient);
  v.e_power = e_power;
  v.value = times_e_power(v.coefficient, e_power);
  v.error = error;
  return v;
}

mpf_class evaluate_extended(const PowerSeries& s, const mpf_class& p) {
  mpf_class acc(0, kWorkingPrecision);
  for (auto it = s.coefficients.rbegin(); it != s.coefficients.rend(); ++it) {
    acc *= p;
    acc += mpf_class(*it, kWorkingPrecision);
  }
  return acc;
}

// Newton steps on p g(p) = 1 in extended precision, starting from the double
// root.
mpf_class refine_root(const PowerSeries& g, double start) {
  mpf_class p(start, kWorkingPrecision);
  for (int i = 0; i < 8; ++i) {
    mpf_class value(0, kWorkingPrecision);
    mpf_class slope(0, kWorkingPrecision);
    for (auto it = g.coefficients.rbegin(); it != g.coefficients.rend(); ++it) {
      slope *= p;
      slope += value;
      value *= p;
      value += mpf_class(*it, kWorkingPrecision);
    }
    mpf_class step(p * value - 1, kWorkingPrecision);
    step /= value + p * slope;
    p -= step;
  }
  return p;
}

}  // namespace

P1Solution solve_p1(const PowerSeries& g, double tol, double max_bracket) {
  if (!(tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (g.coefficients.empty()) throw InvalidArgument("empty one-point series");
  auto f = [&](double p) { return p * g.evaluate(p) - 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > max_bracket) {
      throw NumericalError("p g(p) stays below 1 up to p = " + std::to_string(max_bracket) +
                           "; the truncated series is too short");
    }
  }
  P1Solution sol;
  sol.truncation_order = g.truncation_order;
  sol.bracket = {lo, hi};
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 500; ++it) {
    const double fx = f(x);
    sol.iterations = it + 1;
    if (std::abs(fx) <= tol) {
      sol.p1 = x;
      sol.residual = std::abs(fx);
      return sol;
    }
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = g.evaluate(x) + x * g.derivative(x);
    double next = x - fx / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  const double fx = f(x);
  if (std::abs(fx) <= tol) {
    sol.p1 = x;
    sol.residual = std::abs(fx);
    return sol;
  }
  throw NumericalError("p1 solver could not reach tolerance " + std::to_string(tol));
}

InverseEExpansion predict_p1_lattice(Model model, const ConvolutionTable& table) {
  require_lattice_dim(table, 5, "predict_p1_lattice");
  InverseEExpansion out;
  out.inv_e = 1;
  for (int n = 2; n <= table.n_max; ++n) out.inv_e += ratio(n + 1, 2) * table.values[n];
  out.inv_e2 = 0;
  out.error = times_e_power(Rational(1), -1) * weighted_tail(table, 0.5, 0.5).value;
  if (model == Model::animals) {
    const auto s3 = s_geq(table, 3);
    out.inv_e2 = -s3.exact / 2;
    out.error += times_e_power(Rational(1), -2) * s3.error / 2;
  }
  out.value = times_e_power(out.inv_e, -1) + times_e_power(out.inv_e2, -2);
  return out;
}

Rational g0_closed(const Integer& lambda_size) {
  if (lambda_size < 1) throw InvalidArgument("|Lambda| must be >= 1");
  if (!lambda_size.fits_ulong_p()) throw InvalidArgument("|Lambda| too large for an exact power");
  const unsigned long k = lambda_size.get_ui();
  Rational r;
  mpz_ui_pow_ui(r.get_num_mpz_t(), k + 1, k);
  mpz_ui_pow_ui(r.get_den_mpz_t(), k, k);
  r.canonicalize();
  return r;
}

LeadingValue g_leading(const ConvolutionTable& table) {
  require_lattice_dim(table, 3, "g_leading");
  const auto s2 = s_geq(table, 2);
  Rational c = Rational(1) - table.values[2] / 2 - s2.exact;
  return make_leading(std::move(c), 1, times_e_power(Rational(1), 1) * s2.error);
}

LeadingValue h_leading(const ConvolutionTable& table) {
  require_lattice_dim(table, 3, "h_leading");
  Rational c = 0;
  for (int n = 3; n <= table.n_max; ++n) c += ratio(n - 1, 2) * table.values[n];
  const auto tail = weighted_tail(table, 0.5, -0.5);
  return make_leading(std::move(c), 1, times_e_power(Rational(1), 1) * tail.value);
}

LeadingValue i_leading(const ConvolutionTable& table) {
  require_lattice_dim(table, 3, "i_leading");
  const auto s3 = s_geq(table, 3);
  return make_leading(s3.exact / 2, 0, s3.error / 2);
}

DecompositionReport gh_decompose(Model model, const PowerSeries& g,
                                 const std::vector<PowerSeries>& neighbor_tau,
                                 const Integer& lambda_size, const P1Solution& p1,
                                 const ConvolutionTable* table) {
  if (neighbor_tau.size() != lambda_size) {
    throw InvalidArgument("gh_decompose needs tau(y) for every y in Lambda");
  }
  if (p1.truncation_order != g.truncation_order) {
    throw InvalidArgument("p1 was solved on a different truncation than g");
  }
  for (const auto& tau : neighbor_tau) {
    if (tau.truncation_order != g.truncation_order) {
      throw InvalidArgument("tau series truncation " + std::to_string(tau.truncation_order) +
                            " differs from g truncation " + std::to_string(g.truncation_order));
    }
  }
  DecompositionReport report;
  report.model = model;
  report.p1 = p1.p1;
  report.truncation_order = g.truncation_order;
  // G and g nearly cancel when H is small, so both are formed in extended
  // precision at the extended-precision root and only the results are rounded.
  const mpf_class p = refine_root(g, p1.p1);
  const mpf_class g_value = evaluate_extended(g, p);
  const mpf_class lambda(mpq_class(lambda_size), kWorkingPrecision);
  mpf_class product(1, kWorkingPrecision);
  for (const auto& tau : neighbor_tau) {
    mpf_class factor(1, kWorkingPrecision);
    factor -= evaluate_extended(tau, p) / g_value;
    factor /= lambda;
    factor += 1;
    product *= factor;
  }
  const mpf_class h_value(product - g_value, kWorkingPrecision);
  report.g = g_value.get_d();
  report.G = product.get_d();
  report.H_effective = h_value.get_d();

  report.leading.g0_closed = g0_closed(lambda_size);
  report.leading.g0 = to_double(report.leading.g0_closed);
  if (table != nullptr && table->d >= 3 && table->tail.valid) {
    report.leading.g_leading = g_leading(*table);
    report.leading.i_leading = i_leading(*table);
    if (table->d >= 5) report.leading.h_leading = h_leading(*table);
  }
  return report;
}

std::vector<PowerSeries> neighbor_series(const TwoPointField& field, const StepKernel& kernel) {
  std::vector<PowerSeries> out;
  for (const auto& y : kernel.offsets()) out.push_back(field.at(y));
  return out;
}

RatioEstimate pc_ratio_estimate(const PowerSeries& chi) {
  RatioEstimate out;
  const int top = static_cast<int>(chi.coefficients.size()) - 1;
  for (int k = 0; k < top; ++k) {
    if (chi[k] == 0 || chi[k + 1] == 0) {
      out.skipped.push_back(k);
      continue;
    }
    out.index.push_back(k);
    out.ratio.push_back(to_double(chi[k] / chi[k + 1]));
  }
  for (std::size_t i = 1; i < out.index.size(); ++i) {
    const int k = out.index[i];
    if (out.index[i - 1] != k - 1 || k < 1) continue;
    out.richardson_index.push_back(k);
    out.richardson.push_back(k * out.ratio[i] - (k - 1) * out.ratio[i - 1]);
  }
  return out;
}

double triangle_lb(const Integer& lambda_size, double p) {
  if (!(p > 0.0)) throw InvalidArgument("triangle_lb needs p > 0");
  const double lambda = to_double(Rational(lambda_size));
  const double q = p / lambda;
  return lambda * (lambda - 1.0) * q * q * q;
}

Rational triangle_lb_exact(const Integer& lambda_size, const Rational& p) {
  if (p <= 0) throw InvalidArgument("triangle_lb needs p > 0");
  Rational q = p / Rational(lambda_size);
  return Rational(lambda_size) * Rational(lambda_size - 1) * q * q * q;
}

HathBound hath_ub(const TwoPointField& field, int L, double p, int radius) {
  if (!(p > 0.0)) throw InvalidArgument("hath_ub needs p > 0");
  const int reach = (field.max_vertices - 1) * L;
  HathBound out;
  out.window_radius = radius < 0 ? reach : radius;
  out.window_complete = out.window_radius >= reach;
  for (const auto& [x, tau] : field.series) {
    int sup = 0;
    for (int v : x) sup = std::max(sup, std::abs(v));
    if (sup == 0 || sup > out.window_radius) continue;
    const double t = tau.evaluate(p);
    out.value += t * t;
    ++out.points;
  }
  return out;
}

}  // namespace spreadpc
