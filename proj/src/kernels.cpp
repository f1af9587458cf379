#include "spreadpc/kernels.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "spreadpc/continuum.hpp"
#include "spreadpc/errors.hpp"

namespace spreadpc {

namespace {

Integer ipow(long base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exponent);
  return r;
}

// Visits every x in {-r..r}^d with sum x_i^2 <= r^2.
void for_each_in_ball(int d, int r, const std::function<void(const Point&)>& fn) {
  Point x(d, 0);
  const long r2 = static_cast<long>(r) * r;
  std::function<void(int, long)> rec = [&](int axis, long used) {
    if (axis == d) {
      fn(x);
      return;
    }
    for (int v = -r; v <= r; ++v) {
      const long next = used + static_cast<long>(v) * v;
      if (next > r2) continue;
      x[axis] = v;
      rec(axis + 1, next);
    }
    x[axis] = 0;
  };
  rec(0, 0);
}

Integer count_euclidean_ball(int d, int L) {
  // Dynamic programming over axes on the squared radius.
  const long r2 = static_cast<long>(L) * L;
  std::vector<Integer> ways(r2 + 1);
  ways[0] = 1;
  for (int axis = 0; axis < d; ++axis) {
    std::vector<Integer> next(r2 + 1);
    for (long s = 0; s <= r2; ++s) {
      if (ways[s] == 0) continue;
      for (int v = -L; v <= L; ++v) {
        const long t = s + static_cast<long>(v) * v;
        if (t <= r2) next[t] += ways[s];
      }
    }
    ways = std::move(next);
  }
  Integer total = 0;
  for (const auto& w : ways) total += w;
  return total - 1;
}

// Number of k-step walks on {-L..L} returning to 0, for k = 0..k_max.
std::vector<Integer> axis_return_counts(int L, int k_max) {
  std::vector<Integer> counts(k_max + 1);
  std::vector<Integer> dist{1};  // dist[j] = #walks ending at j - k L
  counts[0] = 1;
  for (int k = 1; k <= k_max; ++k) {
    const std::size_t old_size = dist.size();
    std::vector<Integer> prefix(old_size + 1);
    for (std::size_t j = 0; j < old_size; ++j) prefix[j + 1] = prefix[j] + dist[j];
    std::vector<Integer> next(old_size + 2 * L);
    for (std::size_t j = 0; j < next.size(); ++j) {
      // next[j] = sum of dist[i] for i in [j - 2L, j].
      const long hi = std::min<long>(static_cast<long>(j), static_cast<long>(old_size) - 1);
      const long lo = std::max<long>(static_cast<long>(j) - 2 * L, 0);
      if (hi >= lo) next[j] = prefix[hi + 1] - prefix[lo];
    }
    dist = std::move(next);
    counts[k] = dist[static_cast<std::size_t>(k) * L];
  }
  return counts;
}

// Closed-walk numerators N_n = |Lambda|^n D^{*n}(o) for the sup-norm kernel
// via D = (M B - delta_o)/|Lambda| and B^{*k}(o) = c_k^d / M^k.
std::vector<Integer> sup_closed_walks(const StepKernel& kernel, int n_max) {
  const auto c = axis_return_counts(kernel.range(), n_max);
  std::vector<Integer> cd(n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    mpz_pow_ui(cd[k].get_mpz_t(), c[k].get_mpz_t(), kernel.dim());
  }
  std::vector<Integer> walks(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    Integer sum = 0;
    for (int k = 0; k <= n; ++k) {
      const Integer term = binomial(n, k) * cd[k];
      if ((n - k) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    walks[n] = sum;
  }
  return walks;
}

// Closed-walk numerators by dense convolution, N_n = sum_x W_a(x) W_b(x)
// with a = ceil(n/2), b = floor(n/2).
std::vector<Integer> dense_closed_walks(const StepKernel& kernel, int n_max) {
  const int d = kernel.dim();
  const int half = (n_max + 1) / 2;
  const long radius = static_cast<long>(half) * kernel.range();
  const long side = 2 * radius + 1;
  double cells = 1.0;
  for (int i = 0; i < d; ++i) cells *= static_cast<double>(side);
  if (cells * (half + 1) > 4.0e7) {
    throw ResourceError("dense convolution needs " + std::to_string(cells) +
                        " cells per step; reduce n_max, L or d");
  }
  const auto offsets = kernel.offsets();
  const std::size_t n_cells = static_cast<std::size_t>(cells);
  std::vector<long> strides(d, 1);
  for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * side;
  std::vector<long> offset_codes;
  offset_codes.reserve(offsets.size());
  for (const auto& o : offsets) {
    long code = 0;
    for (int i = 0; i < d; ++i) code += o[i] * strides[i];
    offset_codes.push_back(code);
  }
  long origin = 0;
  for (int i = 0; i < d; ++i) origin += radius * strides[i];

  std::vector<std::vector<Integer>> walks;
  walks.emplace_back(n_cells);
  walks[0][origin] = 1;
  std::vector<long> coord(d);
  for (int j = 1; j <= half; ++j) {
    const auto& prev = walks.back();
    std::vector<Integer> next(n_cells);
    const long reach = static_cast<long>(j - 1) * kernel.range();
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      if (prev[cell] == 0) continue;
      // Cells of W_{j-1} lie within distance (j-1)L of the origin, so every
      // target stays inside the frame.
      long rest = static_cast<long>(cell);
      bool inside = true;
      for (int i = 0; i < d; ++i) {
        coord[i] = rest / strides[i] - radius;
        rest %= strides[i];
        if (coord[i] < -reach || coord[i] > reach) inside = false;
      }
      if (!inside) continue;
      for (long code : offset_codes) next[cell + code] += prev[cell];
    }
    walks.push_back(std::move(next));
  }
  std::vector<Integer> result(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const auto& a = walks[(n + 1) / 2];
    const auto& b = walks[n / 2];
    Integer sum = 0;
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      if (a[cell] != 0 && b[cell] != 0) sum += a[cell] * b[cell];
    }
    result[n] = sum;
  }
  return result;
}

std::vector<Integer> closed_walks(const StepKernel& kernel, int n_max) {
  if (kernel.norm() == Norm::sup) return sup_closed_walks(kernel, n_max);
  if (kernel.dim() > kEuclideanDenseMaxDim) {
    throw InvalidArgument("euclidean D^{*n}(o) is only available for d <= " +
                          std::to_string(kEuclideanDenseMaxDim));
  }
  return dense_closed_walks(kernel, n_max);
}

}  // namespace

StepKernel::StepKernel(int d, int L, Norm norm, Integer lambda_size)
    : d_(d), L_(L), norm_(norm), lambda_size_(std::move(lambda_size)) {}

Integer StepKernel::box_size() const { return ipow(2L * L_ + 1, d_); }

Rational StepKernel::axis_weight() const { return Rational(1, 2 * L_ + 1); }

bool StepKernel::contains(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != d_) {
    throw InvalidArgument("point dimension does not match kernel dimension");
  }
  bool origin = true;
  long sq = 0;
  int sup = 0;
  for (int v : x) {
    if (v != 0) origin = false;
    sup = std::max(sup, std::abs(v));
    sq += static_cast<long>(v) * v;
  }
  if (origin) return false;
  if (norm_ == Norm::sup) return sup <= L_;
  return sq <= static_cast<long>(L_) * L_;
}

Rational StepKernel::weight(std::span<const int> x) const {
  if (!contains(x)) return Rational(0);
  Rational w(Integer(1), lambda_size_);
  w.canonicalize();
  return w;
}

std::vector<Point> StepKernel::offsets(std::size_t max_points) const {
  if (lambda_size_ > static_cast<unsigned long>(max_points)) {
    throw ResourceError("Lambda has " + lambda_size_.get_str() +
                        " points; too many to list explicitly");
  }
  std::vector<Point> out;
  out.reserve(lambda_size_.get_ui());
  if (norm_ == Norm::euclidean) {
    for_each_in_ball(d_, L_, [&](const Point& x) {
      if (contains(x)) out.push_back(x);
    });
    return out;
  }
  Point x(d_, -L_);
  while (true) {
    if (contains(x)) out.push_back(x);
    int axis = d_ - 1;
    while (axis >= 0 && x[axis] == L_) {
      x[axis] = -L_;
      --axis;
    }
    if (axis < 0) break;
    ++x[axis];
  }
  return out;
}

StepKernel build_kernel(int d, int L, Norm norm, bool approximate) {
  if (d < 1) throw InvalidArgument("d must be >= 1 (got " + std::to_string(d) + ")");
  if (L < 1) throw InvalidArgument("L must be >= 1 (got " + std::to_string(L) + ")");
  if (norm == Norm::sup) {
    return StepKernel(d, L, norm, ipow(2L * L + 1, d) - 1);
  }
  if (d > kEuclideanDenseMaxDim && !approximate) {
    throw InvalidArgument("euclidean norm with d > " + std::to_string(kEuclideanDenseMaxDim) +
                          " requires approximate mode");
  }
  return StepKernel(d, L, norm, count_euclidean_ball(d, L));
}

Rational dstar_origin(const StepKernel& kernel, int n) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  const auto walks = closed_walks(kernel, n);
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), kernel.lambda_size().get_mpz_t(), n);
  Rational r(walks[n], den);
  r.canonicalize();
  return r;
}

double ConvolutionTable::value(int n) const { return to_double(values.at(n)); }

ConvolutionTable conv_table(const StepKernel& kernel, int n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  ConvolutionTable table;
  table.d = kernel.dim();
  table.L = kernel.range();
  table.norm = kernel.norm();
  table.lambda_size = kernel.lambda_size();
  table.n_max = n_max;
  const auto walks = closed_walks(kernel, n_max);
  Integer den = 1;
  table.values.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    Rational v(walks[n], den);
    v.canonicalize();
    table.values.push_back(std::move(v));
    den *= kernel.lambda_size();
  }
  if (table.d >= 3 && n_max >= 4) {
    double last[4];
    for (int i = 0; i < 4; ++i) last[i] = table.value(n_max - 3 + i);
    table.tail = power_law_tail(last, n_max);
  }
  return table;
}

TailSum s_geq(const ConvolutionTable& table, int t) {
  if (table.d <= 2) {
    throw InvalidArgument("S_{>=t}(o) diverges for d <= 2");
  }
  if (t < 0) throw InvalidArgument("t must be >= 0");
  if (!table.tail.valid) {
    throw NumericalError("convolution table tail estimate is not valid; increase n_max");
  }
  TailSum out;
  out.t = t;
  out.exact = 0;
  for (int n = t; n <= table.n_max; ++n) out.exact += table.values[n];
  out.value = to_double(out.exact);
  out.error = table.tail.value;
  return out;
}

TailEstimate weighted_tail(const ConvolutionTable& table, double slope, double offset) {
  if (table.d <= 2 || (slope != 0.0 && table.d <= 4)) {
    throw InvalidArgument("weighted return-probability sum diverges for d = " +
                          std::to_string(table.d));
  }
  if (table.n_max < 4) throw InvalidArgument("table too short for a tail estimate");
  double last[4];
  for (int i = 0; i < 4; ++i) {
    const int n = table.n_max - 3 + i;
    last[i] = (slope * n + offset) * table.value(n);
  }
  auto tail = power_law_tail(last, table.n_max);
  if (!tail.valid) {
    throw NumericalError("weighted tail estimate is not valid; increase n_max");
  }
  return tail;
}

double dhat(const StepKernel& kernel, std::span<const double> k) {
  if (static_cast<int>(k.size()) != kernel.dim()) {
    throw InvalidArgument("wave vector dimension does not match kernel dimension");
  }
  const double lambda = to_double(Rational(kernel.lambda_size()));
  if (kernel.norm() == Norm::sup) {
    // sum over the box factorizes; subtract the origin term.
    double product = 1.0;
    for (double kj : k) {
      double axis = 1.0;
      for (int m = 1; m <= kernel.range(); ++m) axis += 2.0 * std::cos(kj * m);
      product *= axis;
    }
    return (product - 1.0) / lambda;
  }
  double sum = 0.0;
  for (const auto& x : kernel.offsets()) {
    double phase = 0.0;
    for (int i = 0; i < kernel.dim(); ++i) phase += k[i] * x[i];
    sum += std::cos(phase);
  }
  return sum / lambda;
}

Rational scaling_gap_exact(int d, int L, int n) {
  if (n < 2) throw InvalidArgument("scaling_gap needs n >= 2");
  const auto kernel = build_kernel(d, L, Norm::sup);
  Rational scaled = dstar_origin(kernel, n) * Rational(ipow(L, d));
  Rational gap = scaled - ustar_origin_exact(n, d);
  return abs(gap);
}

double scaling_gap(int d, int L, int n) { return to_double(scaling_gap_exact(d, L, n)); }

}  // namespace spreadpc
