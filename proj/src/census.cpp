#include "spreadpc/census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "spreadpc/errors.hpp"

namespace spreadpc {

namespace {

using Code = std::int64_t;
using Wide = __int128;

constexpr int kMaxSubsetVertices = 20;

// Vertex labels inside the box {-R..R}^d, R = (max_vertices - 1) L, which
// holds every vertex of a connected polymer through o.
class BoxCoder {
 public:
  BoxCoder(int d, int radius) : d_(d), radius_(radius), strides_(d, 1) {
    const Code side = 2 * static_cast<Code>(radius) + 1;
    for (int i = d - 2; i >= 0; --i) {
      if (strides_[i + 1] > (Code{1} << 56) / side) {
        throw ResourceError("enumeration box too large to index");
      }
      strides_[i] = strides_[i + 1] * side;
    }
    volume_ = strides_[0] * side;
  }

  Code encode(std::span<const int> x) const {
    Code code = 0;
    for (int i = 0; i < d_; ++i) code += static_cast<Code>(x[i] + radius_) * strides_[i];
    return code;
  }

  Code offset(std::span<const int> delta) const {
    Code code = 0;
    for (int i = 0; i < d_; ++i) code += static_cast<Code>(delta[i]) * strides_[i];
    return code;
  }

  Point decode(Code code) const {
    Point x(d_);
    for (int i = 0; i < d_; ++i) {
      x[i] = static_cast<int>(code / strides_[i]) - radius_;
      code %= strides_[i];
    }
    return x;
  }

  bool inside(std::span<const int> x) const {
    return std::all_of(x.begin(), x.end(), [&](int v) { return std::abs(v) <= radius_; });
  }

  Code volume() const { return volume_; }

 private:
  int d_;
  int radius_;
  std::vector<Code> strides_;
  Code volume_ = 1;
};

// Set of box codes; dense bitmap when the box is small.
class CodeSet {
 public:
  explicit CodeSet(Code volume) {
    if (volume <= (Code{1} << 26)) dense_.assign(static_cast<std::size_t>(volume), 0);
  }
  bool contains(Code c) const { return dense_.empty() ? sparse_.count(c) > 0 : dense_[c] != 0; }
  void insert(Code c) {
    if (dense_.empty()) {
      sparse_.insert(c);
    } else {
      dense_[c] = 1;
    }
  }
  void erase(Code c) {
    if (dense_.empty()) {
      sparse_.erase(c);
    } else {
      dense_[c] = 0;
    }
  }

 private:
  std::vector<std::uint8_t> dense_;
  std::unordered_set<Code> sparse_;
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("polymer count overflowed 64 bits");
  return r;
}

std::uint64_t narrow(Wide v) {
  if (v < 0 || v > static_cast<Wide>(UINT64_MAX)) {
    throw ResourceError("polymer count out of 64-bit range");
  }
  return static_cast<std::uint64_t>(v);
}

// Number of spanning trees of a graph given by adjacency bitmasks (Kirchhoff
// matrix-tree theorem, fraction-free Bareiss elimination).
std::uint64_t spanning_trees(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 1) return 1;
  const int m = n - 1;
  std::vector<Wide> a(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      a[i * m + j] = i == j ? std::popcount(adj[i]) : -static_cast<Wide>((adj[i] >> j) & 1u);
    }
  }
  Wide prev = 1;
  int sign = 1;
  for (int k = 0; k < m - 1; ++k) {
    if (a[k * m + k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < m; ++r) {
        if (a[r * m + k] != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int j = 0; j < m; ++j) std::swap(a[k * m + j], a[swap * m + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) {
        a[i * m + j] = (a[i * m + j] * a[k * m + k] - a[i * m + k] * a[k * m + j]) / prev;
      }
    }
    prev = a[k * m + k];
  }
  return narrow(sign * a[(m - 1) * m + (m - 1)]);
}

// Connected spanning subgraphs of the graph, counted by number of edges:
// conn(S) = all(S) - sum over proper T containing min(S) of conn(T) all(S\T).
std::vector<std::uint64_t> connected_spanning_subgraphs(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n > kMaxSubsetVertices) throw ResourceError("animal vertex set too large for subset DP");
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> edges(full + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int twice = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      twice += std::popcount(adj[std::countr_zero(rest)] & s);
    }
    edges[s] = twice / 2;
  }
  const int m = edges[full];
  if (m > 100) throw ResourceError("animal vertex set has too many edges for subset DP");
  std::vector<std::vector<Wide>> choose(m + 1);
  for (int i = 0; i <= m; ++i) {
    choose[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) choose[i][j] = choose[i - 1][j - 1] + choose[i - 1][j];
  }
  std::vector<std::vector<Wide>> conn(full + 1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);
    const int es = edges[s];
    std::vector<Wide> c(choose[es].begin(), choose[es].end());
    const std::uint32_t others = s ^ low;
    // Proper subsets T of s that contain `low`.
    for (std::uint32_t sub = (others - 1) & others;; sub = (sub - 1) & others) {
      const std::uint32_t t = sub | low;
      const auto& ct = conn[t];
      const int rest = edges[s ^ t];
      for (std::size_t j = 0; j < ct.size(); ++j) {
        if (ct[j] == 0) continue;
        for (int r = 0; r <= rest; ++r) c[j + r] -= ct[j] * choose[rest][r];
      }
      if (sub == 0) break;
    }
    if (s == low) c = {1};
    conn[s] = std::move(c);
    if (s == full) break;
  }
  std::vector<std::uint64_t> out;
  out.reserve(conn[full].size());
  for (Wide v : conn[full]) out.push_back(narrow(v));
  return out;
}

// Enumerates every connected vertex set containing the origin with at most
// max_vertices vertices exactly once (Redelmeier's untried-set recursion on
// the spread-out graph) and hands each one to a visitor.
class ConnectedSetEnumerator {
 public:
  using Visitor = std::function<void(const std::vector<Code>&)>;

  ConnectedSetEnumerator(const StepKernel& kernel, int max_vertices, std::uint64_t budget)
      : dim_(kernel.dim()),
        coder_(kernel.dim(), (max_vertices - 1) * kernel.range()),
        reached_(coder_.volume()),
        max_vertices_(max_vertices),
        budget_(budget) {
    for (const auto& off : kernel.offsets()) offsets_.push_back(coder_.offset(off));
  }

  const BoxCoder& coder() const { return coder_; }

  void charge(std::uint64_t work) {
    work_ += work;
    if (work_ > budget_) {
      throw ResourceError("enumeration exceeded the budget of " + std::to_string(budget_) +
                          " nodes (max_vertices = " + std::to_string(max_vertices_) + ")");
    }
  }

  void run(const Visitor& visit) {
    visit_ = &visit;
    const Code root = coder_.encode(Point(dim_, 0));
    reached_.insert(root);
    recurse({root});
    reached_.erase(root);
  }

 private:
  void recurse(std::vector<Code> untried) {
    while (!untried.empty()) {
      const Code v = untried.back();
      untried.pop_back();
      cells_.push_back(v);
      charge(1);
      (*visit_)(cells_);
      if (static_cast<int>(cells_.size()) < max_vertices_) {
        std::vector<Code> next = untried;
        const std::size_t mark = newly_.size();
        for (Code off : offsets_) {
          const Code w = v + off;
          if (!reached_.contains(w)) {
            reached_.insert(w);
            next.push_back(w);
            newly_.push_back(w);
          }
        }
        recurse(std::move(next));
        for (std::size_t i = mark; i < newly_.size(); ++i) reached_.erase(newly_[i]);
        newly_.resize(mark);
      }
      cells_.pop_back();
    }
  }

  int dim_;
  BoxCoder coder_;
  CodeSet reached_;
  std::vector<Code> offsets_;
  std::vector<Code> cells_;
  std::vector<Code> newly_;
  int max_vertices_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  const Visitor* visit_ = nullptr;
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
    return h;
  }
};

// Polymer counts (indexed by edge number) for a connected vertex set.
class PolymerCounter {
 public:
  PolymerCounter(Model model, const StepKernel& kernel, ConnectedSetEnumerator& enumerator)
      : model_(model), kernel_(kernel), enumerator_(enumerator) {}

  // Returns counts c[k] = number of polymers with vertex set `cells` and k
  // edges, for k in [offset, offset + size).
  const std::vector<std::uint64_t>& count(const std::vector<Code>& cells, int& first_edge) {
    const int n = static_cast<int>(cells.size());
    first_edge = n - 1;
    points_.clear();
    for (Code c : cells) points_.push_back(enumerator_.coder().decode(c));
    if (n == 1) {
      result_ = {1};
      return result_;
    }
    std::vector<std::uint32_t> adj(n, 0);
    Point diff(kernel_.dim());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int a = 0; a < kernel_.dim(); ++a) diff[a] = points_[i][a] - points_[j][a];
        if (kernel_.contains(diff)) {
          adj[i] |= 1u << j;
          adj[j] |= 1u << i;
        }
      }
    }
    if (model_ == Model::trees) {
      result_ = {spanning_trees(adj)};
      return result_;
    }
    // Animals: the count depends only on the shape up to translation.
    std::vector<Point> shape = points_;
    std::sort(shape.begin(), shape.end());
    std::vector<int> key;
    key.reserve(static_cast<std::size_t>(n) * kernel_.dim());
    for (const auto& p : shape) {
      for (int a = 0; a < kernel_.dim(); ++a) key.push_back(p[a] - shape.front()[a]);
    }
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      std::uint64_t work = 1;
      for (int i = 0; i < n; ++i) work *= 3;
      enumerator_.charge(work);
      auto all = connected_spanning_subgraphs(adj);
      all.erase(all.begin(), all.begin() + std::min<std::size_t>(n - 1, all.size()));
      it = memo_.emplace(std::move(key), std::move(all)).first;
    }
    return it->second;
  }

 private:
  Model model_;
  const StepKernel& kernel_;
  ConnectedSetEnumerator& enumerator_;
  std::vector<Point> points_;
  std::vector<std::uint64_t> result_;
  std::unordered_map<std::vector<int>, std::vector<std::uint64_t>, VectorHash> memo_;
};

void require_max_vertices(int max_vertices) {
  if (max_vertices < 1) throw InvalidArgument("max_vertices must be >= 1");
  if (max_vertices > 64) throw InvalidArgument("max_vertices must be <= 64");
}

bool is_origin(const Point& x) {
  return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

Rational inverse_power(const Integer& base, int k) {
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(Integer(1), den);
}

// Coefficient list sum_k counts_k / |Lambda|^k up to `order`.
PowerSeries series_from_edge_counts(const std::vector<Integer>& by_edges, const Integer& lambda,
                                    int order, SeriesMeaning meaning) {
  PowerSeries s;
  s.truncation_order = order;
  s.meaning = meaning;
  s.coefficients.resize(order + 1);
  for (int k = 0; k <= order; ++k) {
    Rational c = k < static_cast<int>(by_edges.size()) ? Rational(by_edges[k]) : Rational(0);
    c *= inverse_power(lambda, k);
    c.canonicalize();
    s.coefficients[k] = c;
  }
  return s;
}

}  // namespace

Integer PolymerCensus::count(int n_vertices, int n_edges) const {
  auto it = counts.find({n_vertices, n_edges});
  return it == counts.end() ? Integer(0) : it->second;
}

Integer PolymerCensus::vertex_total(int n_vertices) const {
  Integer total = 0;
  for (auto it = counts.lower_bound({n_vertices, 0}); it != counts.end() && it->first.first == n_vertices;
       ++it) {
    total += it->second;
  }
  return total;
}

bool PolymerCensus::rooted_at_origin() const {
  return required.size() == 1 && is_origin(required.front());
}

StepKernel PolymerCensus::kernel() const { return build_kernel(d, L, norm, true); }

PolymerCensus enumerate(Model model, const StepKernel& kernel, std::vector<Point> required,
                        int max_vertices, const EnumerationOptions& options) {
  require_max_vertices(max_vertices);
  if (required.empty()) throw InvalidArgument("required point set must be nonempty");
  for (const auto& x : required) {
    if (static_cast<int>(x.size()) != kernel.dim()) {
      throw InvalidArgument("required point dimension does not match d");
    }
  }
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());

  PolymerCensus census;
  census.model = model;
  census.d = kernel.dim();
  census.L = kernel.range();
  census.norm = kernel.norm();
  census.required = required;
  census.max_vertices = max_vertices;

  // Root at the smallest required point; translate the rest relative to it.
  const Point root = required.front();
  ConnectedSetEnumerator enumerator(kernel, max_vertices, options.budget);
  std::vector<Code> targets;
  bool reachable = true;
  for (const auto& x : required) {
    Point rel(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) rel[i] = x[i] - root[i];
    if (!enumerator.coder().inside(rel)) {
      reachable = false;
      break;
    }
    targets.push_back(enumerator.coder().encode(rel));
  }
  if (!reachable) return census;

  std::map<std::pair<int, int>, std::uint64_t> raw;
  PolymerCounter counter(model, kernel, enumerator);
  enumerator.run([&](const std::vector<Code>& cells) {
    for (Code t : targets) {
      if (std::find(cells.begin(), cells.end(), t) == cells.end()) return;
    }
    int first = 0;
    const auto& c = counter.count(cells, first);
    const int n = static_cast<int>(cells.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      auto& slot = raw[{n, first + static_cast<int>(k)}];
      slot = checked_add(slot, c[k]);
    }
  });
  for (const auto& [key, value] : raw) {
    census.counts.emplace(key, Integer(static_cast<unsigned long>(value)));
  }
  return census;
}

PowerSeries one_point_series(const PolymerCensus& census) {
  if (!census.rooted_at_origin()) {
    throw InvalidArgument("one_point_series needs a census with required = {o}");
  }
  const int order = census.max_vertices - 1;
  std::vector<Integer> by_edges(order + 1);
  for (const auto& [key, count] : census.counts) {
    if (key.second <= order) by_edges[key.second] += count;
  }
  return series_from_edge_counts(by_edges, census.kernel().lambda_size(), order,
                                 SeriesMeaning::one_point);
}

PowerSeries chi_series(const PolymerCensus& census) {
  if (!census.rooted_at_origin()) {
    throw InvalidArgument("chi_series needs a census with required = {o}");
  }
  const int order = census.max_vertices - 1;
  std::vector<Integer> by_edges(order + 1);
  for (const auto& [key, count] : census.counts) {
    if (key.second <= order) by_edges[key.second] += count * key.first;
  }
  return series_from_edge_counts(by_edges, census.kernel().lambda_size(), order,
                                 SeriesMeaning::susceptibility);
}

PowerSeries two_point_series(Model model, const StepKernel& kernel, const Point& x,
                             int max_vertices, const EnumerationOptions& options) {
  const Point origin(kernel.dim(), 0);
  if (static_cast<int>(x.size()) != kernel.dim()) {
    throw InvalidArgument("point dimension does not match d");
  }
  if (is_origin(x)) return one_point_series(enumerate(model, kernel, {origin}, max_vertices, options));
  const auto census = enumerate(model, kernel, {origin, x}, max_vertices, options);
  const int order = max_vertices - 1;
  std::vector<Integer> by_edges(order + 1);
  for (const auto& [key, count] : census.counts) {
    if (key.second <= order) by_edges[key.second] += count;
  }
  return series_from_edge_counts(by_edges, kernel.lambda_size(), order, SeriesMeaning::two_point);
}

PowerSeries TwoPointField::at(const Point& x) const {
  auto it = series.find(x);
  if (it != series.end()) return it->second;
  PowerSeries zero;
  zero.truncation_order = max_vertices - 1;
  zero.meaning = SeriesMeaning::two_point;
  zero.coefficients.assign(max_vertices, Rational(0));
  return zero;
}

TwoPointField two_point_field(Model model, const StepKernel& kernel, int max_vertices,
                              const EnumerationOptions& options) {
  require_max_vertices(max_vertices);
  const int order = max_vertices - 1;
  ConnectedSetEnumerator enumerator(kernel, max_vertices, options.budget);
  PolymerCounter counter(model, kernel, enumerator);
  std::unordered_map<Code, std::vector<std::uint64_t>> raw;
  enumerator.run([&](const std::vector<Code>& cells) {
    int first = 0;
    const auto& c = counter.count(cells, first);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int edges = first + static_cast<int>(k);
      if (c[k] == 0 || edges > order) continue;
      for (Code cell : cells) {
        auto& row = raw[cell];
        if (row.empty()) row.assign(order + 1, 0);
        row[edges] = checked_add(row[edges], c[k]);
      }
    }
  });
  TwoPointField field;
  field.model = model;
  field.max_vertices = max_vertices;
  for (const auto& [code, row] : raw) {
    std::vector<Integer> by_edges;
    by_edges.reserve(row.size());
    for (std::uint64_t v : row) by_edges.emplace_back(static_cast<unsigned long>(v));
    const Point x = enumerator.coder().decode(code);
    auto s = series_from_edge_counts(by_edges, kernel.lambda_size(), order,
                                     is_origin(x) ? SeriesMeaning::one_point : SeriesMeaning::two_point);
    field.series.emplace(x, std::move(s));
  }
  return field;
}

TnTable tn_table(const PolymerCensus& census) {
  if (census.model != Model::trees || !census.rooted_at_origin()) {
    throw InvalidArgument("tn_table needs a lattice-tree census with required = {o}");
  }
  TnTable table;
  for (int n = 1; n <= census.max_vertices; ++n) {
    Rational t(census.count(n, n - 1), Integer(n));
    t.canonicalize();
    table.t.push_back(t);
  }
  return table;
}

std::vector<double> growth_pc_estimate(const TnTable& tn, const Integer& lambda_size) {
  std::vector<double> out;
  Integer lambda_power = 1;
  for (int n = 1; n <= tn.size(); ++n) {
    if (tn.at(n) <= 0) throw InvalidArgument("t_n must be positive for the growth estimate");
    Rational scaled = tn.at(n) * Rational(Integer(n) * n, lambda_power);
    scaled.canonicalize();
    mpf_class f(scaled, kWorkingPrecision);
    // log of a possibly huge rational: split mantissa and exponent.
    long exponent = 0;
    const double mantissa = mpf_get_d_2exp(&exponent, f.get_mpf_t());
    const double log_value = std::log(mantissa) + exponent * std::log(2.0);
    out.push_back(std::exp(-log_value / n));
    lambda_power *= lambda_size;
  }
  return out;
}

}  // namespace spreadpc
