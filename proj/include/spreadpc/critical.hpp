#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadpc/census.hpp"
#include "spreadpc/kernels.hpp"
#include "spreadpc/model.hpp"
#include "spreadpc/series.hpp"

namespace spreadpc {

inline constexpr double kDefaultSolverTolerance = 1e-12;

struct P1Solution {
  double p1 = 0.0;
  double residual = 0.0;  // |p1 g(p1) - 1|
  int truncation_order = 0;
  std::pair<double, double> bracket;
  int iterations = 0;
};

// Solves p g(p) = 1 for the one-point series g by bracketed Newton with a
// bisection fallback. The bracket starts at [0, 1] and doubles to the right
// until p g(p) >= 1, up to max_bracket.
P1Solution solve_p1(const PowerSeries& g, double tol = kDefaultSolverTolerance,
                    double max_bracket = 1 << 20);

// A quantity of the form a/e + b/e^2 with exact rationals a and b.
struct InverseEExpansion {
  Rational inv_e;
  Rational inv_e2;
  double value = 0.0;
  double error = 0.0;  // propagated truncation estimate
};

// Lattice leading-order prediction of p1:
//   trees:   1/e + sum_{n=2}^{N} (n+1)/(2e) D^{*n}(o)
//   animals: the trees value - S_{>=3}(o) / (2e^2)
InverseEExpansion predict_p1_lattice(Model model, const ConvolutionTable& table);

// (1 + 1/k)^k.
Rational g0_closed(const Integer& lambda_size);

// A quantity of the form c e^{e_power} with exact rational c.
struct LeadingValue {
  Rational coefficient;
  int e_power = 0;
  double value = 0.0;
  double error = 0.0;
};

// e (1 - D^{*2}(o)/2 - S_{>=2}(o)).
LeadingValue g_leading(const ConvolutionTable& table);
// e sum_{n>=3} (n-1)/2 D^{*n}(o).
LeadingValue h_leading(const ConvolutionTable& table);
// S_{>=3}(o) / 2.
LeadingValue i_leading(const ConvolutionTable& table);

struct LeadingPredictions {
  Rational g0_closed;
  double g0 = 0.0;
  std::optional<LeadingValue> g_leading;
  std::optional<LeadingValue> h_leading;
  std::optional<LeadingValue> i_leading;
};

struct DecompositionReport {
  Model model = Model::trees;
  double p1 = 0.0;
  int truncation_order = 0;
  double G = 0.0;
  // Trees: H = G - g. Animals: the combined remainder G - g (= H - I).
  double H_effective = 0.0;
  double g = 0.0;
  LeadingPredictions leading;
};

// G = prod_{y in Lambda} (1 + (1 - tau(y)/g)/|Lambda|) evaluated at p1, which
// equals 1 + sum over nonempty Y of |Lambda|^{-|Y|} prod_{y in Y}(1 - tau(y)/g)
// (expand the product; each subset Y of Lambda appears once).
// `neighbor_tau` holds tau_p(y) for every y in Lambda; all series must share
// the truncation order of g. `table` (d >= 3 only) fills the leading
// predictions.
DecompositionReport gh_decompose(Model model, const PowerSeries& g,
                                 const std::vector<PowerSeries>& neighbor_tau,
                                 const Integer& lambda_size, const P1Solution& p1,
                                 const ConvolutionTable* table = nullptr);

// Convenience: tau for every y in Lambda taken from a two-point field.
std::vector<PowerSeries> neighbor_series(const TwoPointField& field, const StepKernel& kernel);

struct RatioEstimate {
  std::vector<int> index;        // k for the ratio a_k / a_{k+1}
  std::vector<double> ratio;
  std::vector<int> richardson_index;
  std::vector<double> richardson;  // k r_k - (k-1) r_{k-1}
  std::vector<int> skipped;        // k with a_k = 0 or a_{k+1} = 0
};

RatioEstimate pc_ratio_estimate(const PowerSeries& chi);

// Three distinct-edge triangle lower bound |Lambda|(|Lambda|-1)(p/|Lambda|)^3.
double triangle_lb(const Integer& lambda_size, double p);
Rational triangle_lb_exact(const Integer& lambda_size, const Rational& p);

struct HathBound {
  double value = 0.0;
  int window_radius = 0;   // sup-norm radius of the summed window
  std::size_t points = 0;  // x != o summed
  bool window_complete = false;  // window covers every reachable x
};

// sum_{x != o, |x|_inf <= radius} tau_p(x)^2; radius < 0 means the whole
// reachable support (max_vertices - 1) L.
HathBound hath_ub(const TwoPointField& field, int L, double p, int radius = -1);

struct DiagnosticsReport {
  double p = 0.0;
  double triangle_lb = 0.0;
  HathBound hath_ub;
};

}  // namespace spreadpc
