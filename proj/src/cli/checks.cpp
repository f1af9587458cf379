#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "spreadpc/census.hpp"
#include "spreadpc/census_io.hpp"
#include "spreadpc/cli.hpp"
#include "spreadpc/continuum.hpp"
#include "spreadpc/critical.hpp"
#include "spreadpc/kernels.hpp"
#include "spreadpc/oracles.hpp"

namespace spreadpc::cli {

namespace {

struct Outcome {
  bool passed = true;
  std::string failure;  // first failed expectation
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && passed) failure = what;
    passed = passed && ok;
  }
};

using CheckFn = std::function<void(Outcome&)>;

void d2_identity(Outcome& o) {
  for (int d : {1, 2, 3, 9}) {
    for (int L : {1, 2, 4}) {
      const StepKernel k = build_kernel(d, L);
      o.expect(dstar_origin(k, 2) == Rational(1, k.lambda_size()),
               "D^{*2}(o) != 1/|Lambda| at d=" + std::to_string(d) + " L=" + std::to_string(L));
    }
  }
  o.detail << "12 (d, L) pairs";
}

void dense_oracle(Outcome& o) {
  for (int d = 1; d <= 3; ++d) {
    for (int L = 1; L <= 2; ++L) {
      const auto dense = oracle::dense_dstar_origin(d, L, 6);
      const StepKernel k = build_kernel(d, L);
      for (int n = 0; n <= 6; ++n) {
        o.expect(dstar_origin(k, n) == dense[n], "mismatch at d=" + std::to_string(d) + " L=" +
                                                      std::to_string(L) + " n=" + std::to_string(n));
      }
    }
  }
  o.detail << "d<=3, L<=2, n<=6 exact";
}

void kernel_invariants(Outcome& o) {
  for (int d : {1, 2, 3}) {
    for (int L : {1, 2}) {
      const StepKernel k = build_kernel(d, L);
      Rational total = 0;
      for (const auto& x : k.offsets()) total += k.weight(x);
      o.expect(total == 1, "sum D != 1");
      o.expect(k.weight(Point(d, 0)) == 0, "D(o) != 0");
    }
  }
  const ConvolutionTable t = conv_table(build_kernel(5, 1), 40);
  for (int s = 2; s <= 10; ++s) {
    o.expect(s_geq(t, s).exact - s_geq(t, s + 1).exact == t.values[s], "telescoping fails");
  }
  // Heat-kernel shape: n^{d/2} D^{*n}(o) over even n >= 4 stays between its
  // n = 4 value and the local limit (2 pi sigma^2)^{-d/2}.
  for (int d = 3; d <= 9; ++d) {
    for (int L = 1; L <= 2; ++L) {
      const StepKernel k = build_kernel(d, L);
      const ConvolutionTable h = conv_table(k, 40);
      const double sigma2 = to_double(Rational(k.box_size() / (2 * L + 1) * L * (L + 1) * (2 * L + 1) / 3) /
                                      Rational(k.lambda_size()));
      const double limit = std::pow(2 * std::numbers::pi * sigma2, -d / 2.0);
      const double c4 = h.value(4) * std::pow(4.0, d / 2.0);
      for (int n = 6; n <= 40; n += 2) {
        const double scaled = h.value(n) * std::pow(double(n), d / 2.0);
        o.expect(scaled >= c4 && scaled <= limit, "heat-kernel shape fails at d=" + std::to_string(d) +
                                                      " L=" + std::to_string(L) + " n=" + std::to_string(n));
      }
    }
  }
  o.detail << "normalization, telescoping, heat-kernel shape";
}

void dhat_consistency(Outcome& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const std::pair<int, int> shapes[] = {{1, 3}, {2, 2}, {3, 1}, {3, 2}, {4, 1}};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [d, L] = shapes[i % 5];
    std::vector<double> k(d);
    for (auto& x : k) x = angle(rng);
    const Norm norm = i % 2 ? Norm::sup : Norm::euclidean;
    const double a = dhat(build_kernel(d, L, norm), k);
    const double b = oracle::direct_dhat(d, L, norm, k);
    worst = std::max(worst, std::abs(a - b));
  }
  o.expect(worst <= 1e-12, "max deviation too large");
  o.detail << "100 random k, max deviation " << worst;
}

void irwin_hall_grid(Outcome& o) {
  const auto grid = oracle::grid_uniform_center(50);
  double worst = 0.0;
  for (int n = 1; n <= 50; ++n) {
    worst = std::max(worst, std::abs(to_double(axis_uniform_center(n)) - grid[n - 1]));
  }
  o.expect(worst <= 1e-10, "Irwin-Hall vs grid deviation too large");
  for (int n = 1; n <= 12; ++n) {
    o.expect(ustar_origin_exact(n, 9) == pow(ustar_origin_exact(n, 1), 9), "product structure fails");
  }
  o.detail << "n<=50, max deviation " << worst;
}

void c_lt_truncation(Outcome& o) {
  const SeriesConstant a = c_lt(9, 100);
  const SeriesConstant b = c_lt(9, 200);
  const double gap = std::abs(b.value - a.value);
  o.expect(b.value >= a.value, "partial sums decrease");
  o.expect(gap <= a.truncation_error, "gap exceeds the reported truncation error");
  const AnimalConstant la = c_la(9, 200);
  o.expect(la.value < b.value, "C_LA >= C_LT");
  o.detail << "C_LT(100..200) gap " << gap << " <= error " << a.truncation_error;
}

void scaling_gap_rate(Outcome& o) {
  for (int n : {2, 3, 4}) {
    const double g4 = scaling_gap(9, 4, n);
    const double g8 = scaling_gap(9, 8, n);
    const double g16 = scaling_gap(9, 16, n);
    o.expect(g8 < g4 && g16 < g8, "gap does not decrease in L");
    for (double r : {g8 / g4, g16 / g8}) {
      o.expect(r >= 0.3 && r <= 0.7, "gap ratio out of [0.3, 0.7] at n=" + std::to_string(n));
    }
  }
  o.detail << "d=9, n in {2,3,4}, L in {4,8,16}";
}

void animal_correction_check(Outcome& o) {
  const ConvolutionTable t = conv_table(build_kernel(9, 1), 40);
  const auto lt = predict_p1_lattice(Model::trees, t);
  const auto la = predict_p1_lattice(Model::animals, t);
  o.expect(la.inv_e == lt.inv_e && la.inv_e2 - lt.inv_e2 == -s_geq(t, 3).exact / 2, "lattice identity fails");
  const AnimalConstant c = c_la(9, 200);
  const double diff = std::abs((c.trees.value - c.value) - c.correction.value);
  o.expect(diff <= c.truncation_error, "continuum correction outside the truncation error");
  o.detail << "lattice exact; continuum deviation " << diff;
}

void leading_order_algebra(Outcome& o) {
  for (auto [d, L] : {std::pair{9, 1}, std::pair{9, 2}, std::pair{5, 1}}) {
    const ConvolutionTable t = conv_table(build_kernel(d, L), 40);
    Rational rhs = 1;
    for (int n = 2; n <= 40; ++n) rhs -= ratio(n + 1, 2) * t.values[n];
    const LeadingValue g = g_leading(t);
    const LeadingValue h = h_leading(t);
    o.expect(g.e_power == 1 && h.e_power == 1 && g.coefficient - h.coefficient == rhs,
             "identity fails at d=" + std::to_string(d) + " L=" + std::to_string(L));
  }
  o.detail << "exact at N=40";
}

void g0_asymptotics(Outcome& o) {
  const double limits[] = {1e-3, 1e-4, 1e-5};
  int i = 0;
  for (unsigned long lambda : {1000ul, 10000ul, 100000ul}) {
    const Rational g0 = g0_closed(Integer(lambda));
    const double scaled = double(lambda) * (1.0 - times_e_power(g0, -1));
    o.expect(std::abs(scaled - 0.5) <= limits[i], "|Lambda|(1 - G0/e) too far from 1/2");
    if (i == 2) o.detail << "|Lambda|=1e5 gives " << scaled;
    ++i;
  }
}

void one_dimension(Outcome& o) {
  const StepKernel k = build_kernel(1, 1);
  const PolymerCensus census = enumerate(Model::trees, k, {Point{0}}, 31);
  for (int n = 1; n <= 31; ++n) o.expect(census.vertex_total(n) == n, "tree count != n");
  const TnTable tn = tn_table(census);
  for (int n = 1; n <= tn.size(); ++n) o.expect(tn.at(n) == 1, "t_n != 1");
  const PowerSeries chi = chi_series(census);
  for (int j = 0; j <= chi.truncation_order; ++j) {
    o.expect(chi[j] == Rational((j + 1) * (j + 1), 1) / pow(Rational(2), j), "chi coefficient mismatch");
  }
  const P1Solution p1 = solve_p1(one_point_series(census));
  const double target = 4.0 - 2.0 * std::sqrt(3.0);
  o.expect(std::abs(p1.p1 - target) <= 1e-6, "p1 far from 4 - 2 sqrt 3");
  o.expect(p1.residual <= kDefaultSolverTolerance, "residual above tolerance");
  const RatioEstimate r = pc_ratio_estimate(chi);
  o.expect(!r.richardson.empty() && std::abs(r.richardson.back() - 2.0) <= 0.05 * 2.0, "ratio tail off");
  for (std::size_t i = 1; i < r.ratio.size(); ++i) o.expect(r.ratio[i] >= r.ratio[i - 1], "ratio not monotone");
  o.detail << "p1 error " << std::abs(p1.p1 - target);
}

void chi_identity(Outcome& o) {
  const StepKernel k = build_kernel(1, 2);
  const int N = 6;
  const PolymerCensus census = enumerate(Model::trees, k, {Point{0}}, N);
  const PowerSeries chi = chi_series(census);
  std::vector<Rational> sum(N, 0);
  for (int x = -(N - 1) * 2; x <= (N - 1) * 2; ++x) {
    const PowerSeries tau = two_point_series(Model::trees, k, Point{x}, N);
    for (int j = 0; j < N; ++j) sum[j] += tau[j];
  }
  for (int j = 0; j < N; ++j) o.expect(sum[j] == chi[j], "sum_x tau != chi");
  o.detail << "d=1, L=2, N=6";
}

void census_oracle(Outcome& o) {
  for (Model m : {Model::trees, Model::animals}) {
    for (auto [d, L] : {std::pair{2, 1}, std::pair{1, 2}}) {
      const auto brute = oracle::brute_force_census(m, d, L, 5);
      const PolymerCensus c = enumerate(m, build_kernel(d, L), {Point(d, 0)}, 5);
      o.expect(c.counts.size() == brute.size(), "record count mismatch");
      for (const auto& [key, v] : brute) o.expect(c.count(key.first, key.second) == v, "count mismatch");
    }
  }
  o.detail << "trees and animals, max_vertices 5";
}

void census_properties(Outcome& o) {
  const StepKernel k = build_kernel(2, 1);
  const PolymerCensus trees = enumerate(Model::trees, k, {Point{0, 0}}, 6);
  const PolymerCensus animals = enumerate(Model::animals, k, {Point{0, 0}}, 6);
  for (int n = 1; n <= 6; ++n) o.expect(animals.vertex_total(n) >= trees.vertex_total(n), "animals < trees");
  for (const auto* c : {&trees, &animals}) {
    const PowerSeries g = one_point_series(*c);
    o.expect(g[0] == 1 && g[1] == 1, "coefficient pins fail");
    for (const auto& q : g.coefficients) o.expect(q >= 0, "negative coefficient");
  }
  const std::string text = census_to_string(animals);
  std::istringstream in(text);
  const PolymerCensus back = read_census(in);
  o.expect(back == animals && census_to_string(back) == text, "census round trip fails");
  o.detail << "d=2, L=1, max_vertices 6";
}

void supermultiplicativity(Outcome& o) {
  int pairs = 0;
  for (auto [d, L, N] : {std::tuple{1, 1, 16}, std::tuple{1, 2, 9}, std::tuple{2, 1, 7}, std::tuple{3, 1, 5}}) {
    const TnTable tn = tn_table(enumerate(Model::trees, build_kernel(d, L), {Point(d, 0)}, N));
    for (int n = 1; n <= N; ++n) {
      for (int m = 1; n + m <= N; ++m, ++pairs) {
        o.expect(tn.at(n + m) >= tn.at(n) * tn.at(m), "t_{n+m} < t_n t_m");
      }
    }
  }
  o.detail << pairs << " (n, m) pairs";
}

void solver_monotone(Outcome& o) {
  const StepKernel k = build_kernel(2, 1);
  const PolymerCensus c = enumerate(Model::trees, k, {Point{0, 0}}, 7);
  double previous = 1e300;
  const PowerSeries full = one_point_series(c);
  for (int order = 1; order <= full.truncation_order; ++order) {
    PowerSeries g = full;
    g.coefficients.resize(order + 1);
    g.truncation_order = order;
    const P1Solution s = solve_p1(g);
    o.expect(s.residual <= kDefaultSolverTolerance, "residual above tolerance");
    o.expect(s.p1 <= previous, "p1 increases with truncation order");
    previous = s.p1;
  }
  o.detail << "d=2, L=1, orders 1..6";
}

void decomposition_closure(Outcome& o) {
  for (auto [d, N] : {std::pair{1, 31}, std::pair{2, 7}}) {
    const StepKernel k = build_kernel(d, 1);
    const PolymerCensus c = enumerate(Model::trees, k, {Point(d, 0)}, N);
    const PowerSeries g = one_point_series(c);
    const P1Solution p1 = solve_p1(g);
    const TwoPointField field = two_point_field(Model::trees, k, N);
    const DecompositionReport r = gh_decompose(Model::trees, g, neighbor_series(field, k), k.lambda_size(), p1);
    const double gp = g.evaluate(p1.p1);
    o.expect(std::abs(r.G - r.H_effective - gp) <= 1e-12 * gp, "G - H != g(p1)");
    o.expect(r.H_effective >= 0, "H_effective negative");
    if (d == 2) o.detail << "d=2 truncation 6: H_effective " << r.H_effective;
  }
}

struct NamedCheck {
  const char* name;
  CheckFn fn;
};

}  // namespace

std::vector<CheckResult> run_checks(std::ostream* progress) {
  const NamedCheck checks[] = {
      {"d2_identity", d2_identity},
      {"dense_oracle", dense_oracle},
      {"kernel_invariants", kernel_invariants},
      {"dhat_consistency", dhat_consistency},
      {"irwin_hall_grid", irwin_hall_grid},
      {"c_lt_truncation", c_lt_truncation},
      {"scaling_gap_rate", scaling_gap_rate},
      {"animal_correction", animal_correction_check},
      {"leading_order_algebra", leading_order_algebra},
      {"g0_asymptotics", g0_asymptotics},
      {"one_dimension", one_dimension},
      {"chi_identity", chi_identity},
      {"census_oracle", census_oracle},
      {"census_properties", census_properties},
      {"supermultiplicativity", supermultiplicativity},
      {"solver_monotone", solver_monotone},
      {"decomposition_closure", decomposition_closure},
  };
  std::vector<CheckResult> results;
  for (const auto& c : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    CheckResult r;
    r.name = c.name;
    r.passed = o.passed;
    r.detail = o.failure.empty() ? o.detail.str() : o.failure;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) *progress << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace spreadpc::cli
