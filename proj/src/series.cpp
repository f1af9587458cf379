#include "spreadpc/series.hpp"

namespace spreadpc {

std::string meaning_tag(SeriesMeaning meaning) {
  switch (meaning) {
    case SeriesMeaning::one_point:
      return "one_point";
    case SeriesMeaning::two_point:
      return "two_point";
    case SeriesMeaning::susceptibility:
      return "susceptibility";
  }
  return "unknown";
}

double PowerSeries::coefficient(int k) const { return to_double(coefficients.at(k)); }

double PowerSeries::evaluate(double p) const {
  long double acc = 0.0L;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * p + static_cast<long double>(to_double(*it));
  }
  return static_cast<double>(acc);
}

double PowerSeries::derivative(double p) const {
  long double acc = 0.0L;
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 1; --k) {
    acc = acc * p + static_cast<long double>(k) * to_double(coefficients[k]);
  }
  return static_cast<double>(acc);
}

}  // namespace spreadpc
