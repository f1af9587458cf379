#pragma once

#include <span>
#include <string>
#include <vector>

#include "spreadpc/rational.hpp"
#include "spreadpc/tail.hpp"

namespace spreadpc {

enum class Norm { sup, euclidean };

using Point = std::vector<int>;

// "linf" / "l2" on the command line and in census files.
std::string norm_tag(Norm norm);
Norm parse_norm(const std::string& tag);

// Largest dimension for which the Euclidean kernel is built without opting
// into approximate mode.
inline constexpr int kEuclideanDenseMaxDim = 4;

// Uniform step distribution on Lambda = {x in Z^d : 0 < |x| <= L}.
class StepKernel {
 public:
  StepKernel(int d, int L, Norm norm, Integer lambda_size);

  int dim() const { return d_; }
  int range() const { return L_; }
  Norm norm() const { return norm_; }
  const Integer& lambda_size() const { return lambda_size_; }

  // Number of points of the full box {-L..L}^d (sup norm only).
  Integer box_size() const;

  // 1-D weight of the factorized sup-norm representation: 1/(2L+1) on
  // {-L..L}.
  Rational axis_weight() const;

  bool contains(std::span<const int> x) const;  // x in Lambda
  Rational weight(std::span<const int> x) const;  // D(x)

  // Explicit list of Lambda; throws ResourceError above `max_points`.
  std::vector<Point> offsets(std::size_t max_points = 1u << 22) const;

 private:
  int d_;
  int L_;
  Norm norm_;
  Integer lambda_size_;
};

StepKernel build_kernel(int d, int L, Norm norm = Norm::sup, bool approximate = false);

// D^{*n}(o) exactly; D^{*0} = delta_o.
Rational dstar_origin(const StepKernel& kernel, int n);

// Exact D^{*n}(o) for n = 0..n_max plus a heuristic tail estimate.
struct ConvolutionTable {
  int d = 0;
  int L = 0;
  Norm norm = Norm::sup;
  Integer lambda_size;
  int n_max = 0;
  std::vector<Rational> values;
  TailEstimate tail;  // sum_{n > n_max} D^{*n}(o); valid only for d >= 3

  double value(int n) const;
};

ConvolutionTable conv_table(const StepKernel& kernel, int n_max);

// S_{>=t}(o) = sum_{n>=t} D^{*n}(o), truncated at the table's n_max.
struct TailSum {
  int t = 0;
  Rational exact;     // prefix sum over t..n_max
  double value = 0.0;
  double error = 0.0;  // table tail estimate
};

TailSum s_geq(const ConvolutionTable& table, int t);

// Tail estimate for sum_{n > n_max} w(n) D^{*n}(o) with polynomial weight
// w(n) = a n + b. Throws when the weighted tail is not summable.
TailEstimate weighted_tail(const ConvolutionTable& table, double slope, double offset);

// Characteristic function D^(k) = sum_x D(x) cos(k.x).
double dhat(const StepKernel& kernel, std::span<const double> k);

// |L^d D^{*n}(o) - U^{*n}(o)| for the sup-norm kernel.
double scaling_gap(int d, int L, int n);
Rational scaling_gap_exact(int d, int L, int n);

}  // namespace spreadpc
