#pragma once

#include <span>

namespace spreadpc {

// Heuristic estimate of sum_{n > last_index} a_n from the final four terms
// a_{last_index-3..last_index} of a positive series with power-law decay.
//
// The decay exponent s is read off the log-ratio of the first and last of
// the four terms, a_n ~ a_N (n/N)^{-s}, and the tail is the midpoint
// integral a_N N^s (N + 1/2)^{1-s} / (s - 1). The estimate is only marked
// valid when every term is positive and s > 1.
struct TailEstimate {
  double value = 0.0;
  double exponent = 0.0;
  bool valid = false;
};

TailEstimate power_law_tail(std::span<const double> last_terms, int last_index);

}  // namespace spreadpc
