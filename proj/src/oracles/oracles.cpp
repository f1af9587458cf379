#include "spreadpc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "spreadpc/errors.hpp"

namespace spreadpc::oracle {

namespace {

bool in_lambda(const std::vector<int>& x, int L, Norm norm) {
  long sq = 0;
  int sup = 0;
  for (int v : x) {
    sq += static_cast<long>(v) * v;
    sup = std::max(sup, std::abs(v));
  }
  if (sq == 0) return false;
  return norm == Norm::sup ? sup <= L : sq <= static_cast<long>(L) * L;
}

// All x in {-r..r}^d in lexicographic order.
std::vector<std::vector<int>> box_points(int d, int r) {
  std::vector<std::vector<int>> pts;
  std::vector<int> x(d, -r);
  while (true) {
    pts.push_back(x);
    int a = d - 1;
    while (a >= 0 && x[a] == r) x[a--] = -r;
    if (a < 0) break;
    ++x[a];
  }
  return pts;
}

}  // namespace

std::vector<Rational> dense_dstar_origin(int d, int L, int n_max) {
  const int radius = n_max * L;
  const int side = 2 * radius + 1;
  std::size_t cells = 1;
  for (int i = 0; i < d; ++i) cells *= side;
  if (cells > 2'000'000) throw ResourceError("dense oracle too large");
  std::vector<std::vector<int>> steps;
  for (const auto& x : box_points(d, L)) {
    if (in_lambda(x, L, Norm::sup)) steps.push_back(x);
  }
  const Rational weight(1, static_cast<long>(steps.size()));
  auto index = [&](const std::vector<int>& x) {
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * side + (x[i] + radius);
    return idx;
  };
  const auto all = box_points(d, radius);
  std::vector<Rational> current(cells, Rational(0));
  const std::vector<int> origin(d, 0);
  current[index(origin)] = 1;
  std::vector<Rational> result{current[index(origin)]};
  std::vector<int> y(d);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Rational> next(cells, Rational(0));
    for (const auto& x : all) {
      const Rational& mass = current[index(x)];
      if (mass == 0) continue;
      for (const auto& s : steps) {
        for (int i = 0; i < d; ++i) y[i] = x[i] + s[i];
        next[index(y)] += mass * weight;
      }
    }
    current = std::move(next);
    result.push_back(current[index(origin)]);
  }
  return result;
}

std::vector<double> grid_uniform_center(int n_max, int base_m, int levels) {
  std::vector<std::vector<double>> estimates;
  for (int level = 0, m = base_m; level < levels; ++level, m *= 2) {
    // Density samples f(j/m) for j in [-n_max m, n_max m]; the delta at 0 is
    // represented by unit mass, so after one step f holds kernel weights.
    const long half = static_cast<long>(n_max) * m;
    const long size = 2 * half + 1;
    std::vector<double> f(size, 0.0), prefix(size + 1), next(size);
    f[half] = 1.0;
    std::vector<double> centre;
    for (int n = 1; n <= n_max; ++n) {
      prefix[0] = 0.0;
      for (long i = 0; i < size; ++i) prefix[i + 1] = prefix[i] + f[i];
      const double inner = 1.0 / (2.0 * m);
      for (long i = 0; i < size; ++i) {
        const long lo = std::max(i - m, 0L);
        const long hi = std::min(i + m, size - 1);
        double s = (prefix[hi + 1] - prefix[lo]) * inner;
        // Trapezoid end weights at the two box edges.
        if (i - m >= 0) s -= 0.5 * inner * f[i - m];
        if (i + m < size) s -= 0.5 * inner * f[i + m];
        next[i] = s;
      }
      std::swap(f, next);
      centre.push_back(f[half] * m);
    }
    estimates.push_back(std::move(centre));
  }
  // Richardson extrapolation removing h, h^2, h^3, ... in turn.
  for (int order = 1; estimates.size() > 1; ++order) {
    const double factor = std::ldexp(1.0, order);
    std::vector<std::vector<double>> refined;
    for (std::size_t i = 0; i + 1 < estimates.size(); ++i) {
      std::vector<double> r(n_max);
      for (int n = 0; n < n_max; ++n) {
        r[n] = (factor * estimates[i + 1][n] - estimates[i][n]) / (factor - 1.0);
      }
      refined.push_back(std::move(r));
    }
    estimates = std::move(refined);
  }
  return estimates.front();
}

std::map<std::pair<int, int>, unsigned long> brute_force_census(Model model, int d, int L,
                                                                int max_vertices) {
  using Vertex = std::vector<int>;
  using Edge = std::pair<Vertex, Vertex>;
  using EdgeSet = std::vector<Edge>;  // sorted
  std::vector<Vertex> steps;
  for (const auto& x : box_points(d, L)) {
    if (in_lambda(x, L, Norm::sup)) steps.push_back(x);
  }
  auto vertices_of = [&](const EdgeSet& es) {
    std::set<Vertex> vs{Vertex(d, 0)};
    for (const auto& [a, b] : es) {
      vs.insert(a);
      vs.insert(b);
    }
    return vs;
  };
  std::map<std::pair<int, int>, unsigned long> counts;
  std::set<EdgeSet> level{EdgeSet{}};
  int edges = 0;
  while (!level.empty()) {
    std::set<EdgeSet> next;
    for (const auto& es : level) {
      const auto vs = vertices_of(es);
      ++counts[{static_cast<int>(vs.size()), edges}];
      for (const auto& v : vs) {
        for (const auto& s : steps) {
          Vertex w(d);
          for (int i = 0; i < d; ++i) w[i] = v[i] + s[i];
          const bool new_vertex = vs.count(w) == 0;
          if (new_vertex && static_cast<int>(vs.size()) >= max_vertices) continue;
          if (!new_vertex && model == Model::trees) continue;
          Edge e = v < w ? Edge{v, w} : Edge{w, v};
          if (std::binary_search(es.begin(), es.end(), e)) continue;
          EdgeSet grown = es;
          grown.insert(std::lower_bound(grown.begin(), grown.end(), e), e);
          next.insert(std::move(grown));
        }
      }
    }
    level = std::move(next);
    ++edges;
  }
  return counts;
}

double direct_dhat(int d, int L, Norm norm, std::span<const double> k) {
  double sum = 0.0;
  long count = 0;
  for (const auto& x : box_points(d, L)) {
    if (!in_lambda(x, L, norm)) continue;
    double phase = 0.0;
    for (int i = 0; i < d; ++i) phase += k[i] * x[i];
    sum += std::cos(phase);
    ++count;
  }
  return sum / static_cast<double>(count);
}

}  // namespace spreadpc::oracle
