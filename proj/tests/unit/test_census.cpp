#include <doctest.h>

#include <sstream>

#include "spreadpc/census.hpp"
#include "spreadpc/census_io.hpp"
#include "spreadpc/errors.hpp"
#include "spreadpc/oracles.hpp"

using namespace spreadpc;

namespace {

PolymerCensus rooted(Model model, int d, int L, int max_vertices) {
  return enumerate(model, build_kernel(d, L), {Point(d, 0)}, max_vertices);
}

}  // namespace

TEST_CASE("interval counts in one dimension") {
  const PolymerCensus c = rooted(Model::trees, 1, 1, 12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(c.vertex_total(n) == n);
    CHECK(c.count(n, n - 1) == n);
  }
  CHECK(c.vertex_total(13) == 0);
  const PolymerCensus a = rooted(Model::animals, 1, 1, 12);
  CHECK(a.counts == c.counts);
}

TEST_CASE("small censuses") {
  CHECK(rooted(Model::trees, 2, 1, 2).vertex_total(2) == 8);
  const PolymerCensus trees = rooted(Model::trees, 2, 1, 3);
  const PolymerCensus animals = rooted(Model::animals, 2, 1, 3);
  CHECK(animals.count(3, 3) > 0);
  CHECK(animals.vertex_total(3) > trees.vertex_total(3));
  CHECK(trees.count(3, 3) == 0);
}

TEST_CASE("brute-force oracle") {
  for (Model m : {Model::trees, Model::animals}) {
    for (int d : {1, 2}) {
      const int L = d == 1 ? 2 : 1;
      const auto brute = oracle::brute_force_census(m, d, L, 5);
      const PolymerCensus c = rooted(m, d, L, 5);
      REQUIRE(c.counts.size() == brute.size());
      for (const auto& [key, v] : brute) {
        CAPTURE(key.first);
        CAPTURE(key.second);
        CHECK(c.count(key.first, key.second) == v);
      }
    }
  }
}

TEST_CASE("animals dominate trees") {
  const PolymerCensus trees = rooted(Model::trees, 3, 1, 4);
  const PolymerCensus animals = rooted(Model::animals, 3, 1, 4);
  for (int n = 1; n <= 4; ++n) CHECK(animals.vertex_total(n) >= trees.vertex_total(n));
}

TEST_CASE("required point sets") {
  const StepKernel k = build_kernel(1, 1);
  const PolymerCensus c = enumerate(Model::trees, k, {Point{0}, Point{3}}, 6);
  // Intervals of n vertices containing 0 and 3: n - 3 of them for n >= 4.
  CHECK(c.vertex_total(3) == 0);
  CHECK(c.vertex_total(4) == 1);
  CHECK(c.vertex_total(6) == 3);
  CHECK_FALSE(c.rooted_at_origin());
  CHECK_THROWS_AS(one_point_series(c), InvalidArgument);
}

TEST_CASE("one-point series") {
  const PowerSeries g = one_point_series(rooted(Model::trees, 1, 1, 4));
  CHECK(g.truncation_order == 3);
  CHECK(g[0] == 1);
  CHECK(g[1] == 1);
  CHECK(g[2] == Rational(3, 4));
  CHECK(g[3] == Rational(1, 2));
  for (int d = 1; d <= 3; ++d) {
    for (Model m : {Model::trees, Model::animals}) {
      const PowerSeries s = one_point_series(rooted(m, d, 1, 3));
      CHECK(s[0] == 1);
      CHECK(s[1] == 1);
      for (const auto& q : s.coefficients) CHECK(q >= 0);
    }
  }
}

TEST_CASE("two-point series") {
  const StepKernel k = build_kernel(1, 1);
  const PowerSeries tau = two_point_series(Model::trees, k, Point{1}, 8);
  CHECK(tau[0] == 0);
  for (int n = 2; n <= 8; ++n) CHECK(tau[n - 1] == Rational(n - 1) / pow(Rational(2), n - 1));
  const PowerSeries far = two_point_series(Model::trees, k, Point{9}, 8);
  for (const auto& q : far.coefficients) CHECK(q == 0);
  CHECK(two_point_series(Model::trees, k, Point{0}, 8).coefficients ==
        one_point_series(rooted(Model::trees, 1, 1, 8)).coefficients);

  const StepKernel k2 = build_kernel(2, 1);
  for (Model m : {Model::trees, Model::animals}) {
    const auto a = two_point_series(m, k2, Point{2, 1}, 5);
    const auto b = two_point_series(m, k2, Point{-2, -1}, 5);
    CHECK(a.coefficients == b.coefficients);
    const TwoPointField field = two_point_field(m, k2, 5);
    CHECK(field.at(Point{2, 1}).coefficients == a.coefficients);
  }
}

TEST_CASE("susceptibility") {
  const PowerSeries chi = chi_series(rooted(Model::trees, 1, 1, 12));
  for (int j = 0; j <= chi.truncation_order; ++j) {
    CHECK(chi[j] == Rational((j + 1) * (j + 1)) / pow(Rational(2), j));
  }
  CHECK(chi_series(rooted(Model::animals, 1, 1, 12)).coefficients == chi.coefficients);

  // chi = sum_x tau(x) over the reachable support.
  const StepKernel k = build_kernel(2, 1);
  for (Model m : {Model::trees, Model::animals}) {
    const TwoPointField field = two_point_field(m, k, 4);
    const PowerSeries c = chi_series(rooted(m, 2, 1, 4));
    std::vector<Rational> sum(c.coefficients.size(), 0);
    for (const auto& [x, s] : field.series) {
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += s[static_cast<int>(j)];
    }
    CHECK(sum == c.coefficients);
  }
}

TEST_CASE("t_n and growth estimates") {
  const TnTable one = tn_table(rooted(Model::trees, 1, 1, 20));
  for (int n = 1; n <= 20; ++n) CHECK(one.at(n) == 1);
  const auto g1 = growth_pc_estimate(one, 2);
  for (double v : g1) CHECK(v > 0.0);
  CHECK(std::abs(g1.back() - 2.0) < std::abs(g1[4] - 2.0));

  const TnTable two = tn_table(rooted(Model::trees, 2, 1, 7));
  CHECK(two.at(1) == 1);
  for (int n = 1; n <= 7; ++n) {
    for (int m = 1; n + m <= 7; ++m) CHECK(two.at(n + m) >= two.at(n) * two.at(m));
  }
  const auto g2 = growth_pc_estimate(two, 8);
  for (std::size_t i = 2; i < g2.size(); ++i) CHECK(g2[i] < g2[i - 1]);
  CHECK(g2.back() < 1.0);
}

TEST_CASE("budget") {
  EnumerationOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(enumerate(Model::trees, build_kernel(2, 1), {Point{0, 0}}, 8, tight), ResourceError);
  CHECK_THROWS_AS(enumerate(Model::trees, build_kernel(2, 1), {Point{0, 0}}, 0), InvalidArgument);
}

TEST_CASE("census file round trip") {
  const PolymerCensus c = rooted(Model::animals, 2, 1, 5);
  const std::string text = census_to_string(c);
  std::istringstream in(text);
  const PolymerCensus back = read_census(in);
  CHECK(back == c);
  CHECK(census_to_string(back) == text);

  const PolymerCensus pair = enumerate(Model::trees, build_kernel(2, 1), {Point{0, 0}, Point{1, -1}}, 4);
  std::istringstream in2(census_to_string(pair));
  CHECK(read_census(in2) == pair);
}

TEST_CASE("malformed census files") {
  const char* bad[] = {
      "",
      "# spreadpc census\nformat 2\n",
      "# spreadpc census\nformat 1\nmodel xx\nd 1\nL 1\nnorm linf\nrequired 0\nmax_vertices 2\nrecords 0\n",
      "# spreadpc census\nformat 1\nmodel lt\nd 1\nL 1\nnorm linf\nrequired 0\nmax_vertices 2\nrecords 2\n1 0 1\n",
      "# spreadpc census\nformat 1\nmodel lt\nd 1\nL 1\nnorm linf\nrequired 0\nmax_vertices 2\nrecords 1\n1 0 x\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_census(in), IoError);
  }
  CHECK_THROWS_AS(read_census_file("/nonexistent/census.txt"), IoError);
}
