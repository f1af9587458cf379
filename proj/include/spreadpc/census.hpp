#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "spreadpc/kernels.hpp"
#include "spreadpc/model.hpp"
#include "spreadpc/rational.hpp"
#include "spreadpc/series.hpp"

namespace spreadpc {

struct EnumerationOptions {
  // Maximum number of enumeration nodes (connected vertex sets visited, plus
  // subset-DP work for animals) before a ResourceError is raised.
  std::uint64_t budget = 200'000'000;
};

// Exact counts of lattice trees or animals containing every required point,
// keyed by (number of vertices, number of edges).
struct PolymerCensus {
  Model model = Model::trees;
  int d = 1;
  int L = 1;
  Norm norm = Norm::sup;
  std::vector<Point> required;
  int max_vertices = 1;
  std::map<std::pair<int, int>, Integer> counts;

  Integer count(int n_vertices, int n_edges) const;
  Integer vertex_total(int n_vertices) const;  // summed over edge counts
  bool rooted_at_origin() const;               // required == {o}
  StepKernel kernel() const;

  friend bool operator==(const PolymerCensus&, const PolymerCensus&) = default;
};

PolymerCensus enumerate(Model model, const StepKernel& kernel, std::vector<Point> required,
                        int max_vertices, const EnumerationOptions& options = {});

// g_p truncated at order max_vertices - 1; needs required = {o}.
PowerSeries one_point_series(const PolymerCensus& census);

// chi_p = sum_T |V_T| W_p(T); needs required = {o}.
PowerSeries chi_series(const PolymerCensus& census);

// tau_p(x); x = o is g_p.
PowerSeries two_point_series(Model model, const StepKernel& kernel, const Point& x,
                             int max_vertices, const EnumerationOptions& options = {});

// tau_p(x) for every x reached by a polymer of at most max_vertices vertices
// containing o, from a single enumeration pass. Points are keyed in
// lexicographic order.
struct TwoPointField {
  Model model = Model::trees;
  int max_vertices = 1;
  std::map<Point, PowerSeries> series;

  // tau_p(x); zero series when x is unreachable.
  PowerSeries at(const Point& x) const;
};

TwoPointField two_point_field(Model model, const StepKernel& kernel, int max_vertices,
                              const EnumerationOptions& options = {});

// t_n = (number of n-vertex trees containing o) / n, n = 1..max_vertices.
struct TnTable {
  std::vector<Rational> t;  // t[n - 1]

  const Rational& at(int n) const { return t.at(n - 1); }
  int size() const { return static_cast<int>(t.size()); }
};

TnTable tn_table(const PolymerCensus& census);

// (n^2 t_n / |Lambda|^{n-1})^{-1/n} for n = 1..size.
std::vector<double> growth_pc_estimate(const TnTable& tn, const Integer& lambda_size);

}  // namespace spreadpc
