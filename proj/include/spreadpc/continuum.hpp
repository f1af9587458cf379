#pragma once

#include <string>
#include <vector>

#include "spreadpc/model.hpp"
#include "spreadpc/rational.hpp"
#include "spreadpc/tail.hpp"

namespace spreadpc {

// Density of the sum of n independent uniforms on [0,1] at its centre n/2.
Rational irwin_hall_center(int n);

// n-fold convolution at 0 of the uniform density on [-1,1]:
// irwin_hall_center(n) / 2.
Rational axis_uniform_center(int n);

// U^{*n}(o) for the uniform density on the unit sup-norm ball of R^d.
Rational ustar_origin_exact(int n, int d);
double ustar_origin(int n, int d);

// A series constant kept as (exact rational) * e^{e_power}.
struct SeriesConstant {
  Rational rational_part;
  int e_power = 0;
  double value = 0.0;
  double truncation_error = 0.0;
  double tail_exponent = 0.0;
  int n_max = 0;
};

// C_LT = sum_{n>=2} (n+1)/(2e) U^{*n}(o), truncated at n_max.
SeriesConstant c_lt(int d, int n_max);

// Sum_{n>=3} U^{*n}(o) / (2 e^2), the lattice-animal correction.
SeriesConstant animal_correction(int d, int n_max);

struct AnimalConstant {
  double value = 0.0;            // C_LT - correction
  double truncation_error = 0.0;  // sum of both tail estimates
  SeriesConstant trees;
  SeriesConstant correction;
};

AnimalConstant c_la(int d, int n_max);

struct PcPrediction {
  Model model = Model::trees;
  int d = 0;
  int L = 0;
  double value = 0.0;        // 1/e + C L^{-d}
  double constant = 0.0;     // C
  int remainder_order = 0;   // unquantified O(L^{-remainder_order}) remainder
  std::string warning;       // set when d <= 8
};

inline constexpr int kDefaultSeriesOrder = 200;

PcPrediction predict_pc(Model model, int d, int L, int n_max = kDefaultSeriesOrder);

struct ConstantsReport {
  int d = 0;
  int n_max = 0;
  std::vector<Rational> u_table;  // U^{*n}(o), n = 1..n_max (index n-1)
  SeriesConstant lt;
  AnimalConstant la;
  double truncation_error = 0.0;
  std::vector<PcPrediction> pc_predictions;
  std::vector<std::string> warnings;
};

ConstantsReport constants_report(int d, int n_max, int L_first, int L_last);

}  // namespace spreadpc
