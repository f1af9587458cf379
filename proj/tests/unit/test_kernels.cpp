#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "spreadpc/continuum.hpp"
#include "spreadpc/errors.hpp"
#include "spreadpc/kernels.hpp"
#include "spreadpc/oracles.hpp"

using namespace spreadpc;

namespace {

// D^{*n}(o) by summing over every ordered sequence of n steps.
Rational brute_force_return(int d, int L, int n, Norm norm = Norm::sup) {
  const StepKernel k = build_kernel(d, L, norm);
  const auto steps = k.offsets();
  std::vector<std::size_t> idx(n, 0);
  unsigned long hits = 0;
  unsigned long total = 0;
  while (true) {
    std::vector<int> sum(d, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) sum[j] += steps[idx[i]][j];
    }
    ++total;
    if (sum == std::vector<int>(d, 0)) ++hits;
    int pos = 0;
    while (pos < n && ++idx[pos] == steps.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  Rational q(hits, total);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("kernel sizes and weights") {
  const StepKernel k1 = build_kernel(1, 1);
  CHECK(k1.lambda_size() == 2);
  CHECK(k1.weight(Point{1}) == Rational(1, 2));
  CHECK(k1.weight(Point{-1}) == Rational(1, 2));
  CHECK(k1.weight(Point{0}) == 0);
  CHECK(k1.weight(Point{2}) == 0);
  CHECK(build_kernel(2, 1).lambda_size() == 8);
  CHECK(build_kernel(9, 1).lambda_size() == 19682);
  CHECK(build_kernel(3, 2).lambda_size() == 124);
}

TEST_CASE("euclidean ball sizes") {
  CHECK(build_kernel(2, 1, Norm::euclidean).lambda_size() == 4);
  CHECK(build_kernel(2, 2, Norm::euclidean).lambda_size() == 12);
  CHECK(build_kernel(3, 1, Norm::euclidean).lambda_size() == 6);
  CHECK(build_kernel(3, 2, Norm::euclidean).lambda_size() == 32);
  CHECK_THROWS_AS(build_kernel(5, 1, Norm::euclidean), InvalidArgument);
  CHECK(build_kernel(5, 1, Norm::euclidean, true).lambda_size() == 10);
}

TEST_CASE("normalization") {
  for (Norm norm : {Norm::sup, Norm::euclidean}) {
    for (int d = 1; d <= 3; ++d) {
      const StepKernel k = build_kernel(d, 2, norm);
      Rational total = 0;
      for (const auto& x : k.offsets()) total += k.weight(x);
      CHECK(total == 1);
      CHECK(k.offsets().size() == k.lambda_size().get_ui());
    }
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(build_kernel(0, 1), InvalidArgument);
  CHECK_THROWS_WITH_AS(build_kernel(2, 0), doctest::Contains("L must be >= 1"), InvalidArgument);
  CHECK_THROWS_AS(dstar_origin(build_kernel(1, 1), -1), InvalidArgument);
  CHECK_THROWS_AS(conv_table(build_kernel(1, 1), 1), InvalidArgument);
}

TEST_CASE("return probabilities") {
  CHECK(dstar_origin(build_kernel(1, 1), 0) == 1);
  CHECK(dstar_origin(build_kernel(1, 1), 3) == 0);
  CHECK(dstar_origin(build_kernel(1, 2), 3) == Rational(3, 32));
  CHECK(brute_force_return(1, 2, 3) == Rational(3, 32));
  CHECK(dstar_origin(build_kernel(2, 1), 2) == Rational(1, 8));
  CHECK(dstar_origin(build_kernel(2, 1), 4) == brute_force_return(2, 1, 4));
  CHECK(dstar_origin(build_kernel(3, 1), 3) == brute_force_return(3, 1, 3));
  CHECK(dstar_origin(build_kernel(2, 2, Norm::euclidean), 3) == brute_force_return(2, 2, 3, Norm::euclidean));
  CHECK(dstar_origin(build_kernel(3, 1, Norm::euclidean), 4) == brute_force_return(3, 1, 4, Norm::euclidean));
}

TEST_CASE("dense-convolution oracle") {
  for (int d = 1; d <= 3; ++d) {
    for (int L = 1; L <= 2; ++L) {
      const auto dense = oracle::dense_dstar_origin(d, L, 6);
      const ConvolutionTable t = conv_table(build_kernel(d, L), 6);
      for (int n = 0; n <= 6; ++n) CHECK(t.values[n] == dense[n]);
    }
  }
}

TEST_CASE("convolution tables") {
  const ConvolutionTable t = conv_table(build_kernel(1, 1), 4);
  const std::vector<Rational> expected = {1, 0, Rational(1, 2), 0, Rational(3, 8)};
  CHECK(t.values == expected);
  CHECK(conv_table(build_kernel(3, 1), 2).values[2] == Rational(1, 26));
  CHECK(conv_table(build_kernel(9, 1), 2).values[2] == Rational(1, 19682));
  CHECK_FALSE(conv_table(build_kernel(2, 1), 20).tail.valid);
}

TEST_CASE("tail sums") {
  const ConvolutionTable t = conv_table(build_kernel(3, 1), 40);
  REQUIRE(t.tail.valid);
  const TailSum empty = s_geq(t, 41);
  CHECK(empty.exact == 0);
  CHECK(empty.value == 0.0);
  CHECK(empty.error == t.tail.value);
  CHECK(s_geq(t, 2).exact - s_geq(t, 3).exact == Rational(1, 26));
  CHECK_THROWS_AS(s_geq(conv_table(build_kernel(2, 1), 40), 2), InvalidArgument);

  const ConvolutionTable t9 = conv_table(build_kernel(9, 2), 60);
  const TailSum s = s_geq(t9, 2);
  CHECK(s.value > 0.0);
  CHECK(s.value < 1.0);
  CHECK(s.exact > t9.values[2]);
}

TEST_CASE("tail estimate tracks a known power law") {
  // sum_{n > 40} n^{-3} = 6.0977...e-4 (Hurwitz zeta)
  std::vector<double> terms;
  for (int n = 37; n <= 40; ++n) terms.push_back(std::pow(n, -3.0));
  const TailEstimate est = power_law_tail(terms, 40);
  REQUIRE(est.valid);
  CHECK(est.exponent == doctest::Approx(3.0).epsilon(1e-9));
  double exact = 0.0;
  for (int n = 41; n < 2000000; ++n) exact += std::pow(n, -3.0);
  CHECK(est.value == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("heat-kernel shape") {
  // n^{d/2} D^{*n}(o) rises from its n = 4 value toward (2 pi sigma^2)^{-d/2}.
  const ConvolutionTable t = conv_table(build_kernel(5, 1), 40);
  const double sigma2 = 81.0 * 2.0 / 242.0;
  const double limit = std::pow(2 * std::numbers::pi * sigma2, -2.5);
  double previous = t.value(4) * std::pow(4.0, 2.5);
  for (int n = 6; n <= 40; n += 2) {
    const double scaled = t.value(n) * std::pow(double(n), 2.5);
    CHECK(scaled >= previous);
    CHECK(scaled <= limit);
    previous = scaled;
  }
  CHECK(previous == doctest::Approx(limit).epsilon(0.05));
}

TEST_CASE("characteristic function") {
  const std::vector<double> zero(3, 0.0);
  CHECK(dhat(build_kernel(3, 2), zero) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> pi{std::numbers::pi};
  CHECK(dhat(build_kernel(1, 1), pi) == doctest::Approx(-1.0).epsilon(1e-15));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 3;
    const int L = 1 + i % 2;
    std::vector<double> k(d);
    for (auto& x : k) x = angle(rng);
    for (Norm norm : {Norm::sup, Norm::euclidean}) {
      const double value = dhat(build_kernel(d, L, norm), k);
      CHECK(std::abs(value - oracle::direct_dhat(d, L, norm, k)) <= 1e-12);
      CHECK(1.0 - value >= -1e-12);
    }
  }
}

TEST_CASE("scaling gap") {
  for (int L = 1; L <= 16; ++L) {
    const double lhs = scaling_gap(9, L, 2);
    const double closed = std::abs(std::pow(double(L), 9) / (std::pow(2.0 * L + 1, 9) - 1) - std::pow(2.0, -9));
    CHECK(lhs == doctest::Approx(closed).epsilon(1e-12));
    if (L > 1) CHECK(lhs < scaling_gap(9, L - 1, 2));
  }
  CHECK(scaling_gap(9, 128, 2) < 1e-4);
  for (int L : {4, 8, 16}) {
    const double ratio = scaling_gap(9, 2 * L, 3) / scaling_gap(9, L, 3);
    CHECK(ratio >= 0.3);
    CHECK(ratio <= 0.7);
  }
  CHECK(scaling_gap_exact(2, 3, 2) ==
        abs(Rational(9, 1) * dstar_origin(build_kernel(2, 3), 2) - ustar_origin_exact(2, 2)));
}
