#pragma once

#include <string>
#include <vector>

#include "spreadpc/rational.hpp"

namespace spreadpc {

enum class SeriesMeaning { one_point, two_point, susceptibility };

std::string meaning_tag(SeriesMeaning meaning);

// Truncated power series in the fugacity p with exact coefficients.
// Coefficients of p^k are exact for k <= truncation_order; nothing beyond
// the truncation order is stored.
struct PowerSeries {
  std::vector<Rational> coefficients;
  int truncation_order = 0;
  SeriesMeaning meaning = SeriesMeaning::one_point;

  const Rational& operator[](int k) const { return coefficients.at(k); }
  double coefficient(int k) const;

  double evaluate(double p) const;
  double derivative(double p) const;
};

}  // namespace spreadpc
