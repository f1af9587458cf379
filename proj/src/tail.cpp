#include "spreadpc/tail.hpp"

#include <cmath>

#include "spreadpc/errors.hpp"

namespace spreadpc {

TailEstimate power_law_tail(std::span<const double> last_terms, int last_index) {
  if (last_terms.size() != 4) {
    throw InvalidArgument("power_law_tail needs exactly four terms");
  }
  const int first_index = last_index - 3;
  if (first_index < 1) return {};
  for (double t : last_terms) {
    if (!(t > 0.0) || !std::isfinite(t)) return {};
  }
  const double first = last_terms.front();
  const double last = last_terms.back();
  const double n = last_index;
  const double s = std::log(first / last) / std::log(n / first_index);
  if (!(s > 1.0) || !std::isfinite(s)) return {0.0, s, false};
  const double tail = last * std::pow(n, s) * std::pow(n + 0.5, 1.0 - s) / (s - 1.0);
  return {tail, s, true};
}

}  // namespace spreadpc
