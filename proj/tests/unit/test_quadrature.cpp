#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include <purefield/errors.hpp>
#include <purefield/quadrature.hpp>

using namespace purefield;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 12, 24}) {
    const auto& gl = gauss_legendre(n);
    ASSERT_EQ(gl.nodes.size(), static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, NodesAscending) {
  const auto& gl = gauss_legendre(9);
  for (std::size_t i = 1; i < gl.nodes.size(); ++i) EXPECT_LT(gl.nodes[i - 1], gl.nodes[i]);
  EXPECT_NEAR(integrate_gl([](double x) { return std::exp(x); }, 0.0, 1.0, 12), std::exp(1.0) - 1.0, 1e-15);
}

TEST(Adaptive, SmoothAndEndpointSingular) {
  auto r = integrate_adaptive([](double x) { return std::cos(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::sin(1.0), 1e-14);
  r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-12);
  EXPECT_LT(std::abs(r.value - 2.0 / 3.0), r.error + 1e-15);
  r = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, -1.0, 1e-11);
}

TEST(Adaptive, InfiniteUpperLimit) {
  const double inf = std::numeric_limits<double>::infinity();
  auto r = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, inf);
  EXPECT_NEAR(r.value, std::numbers::pi / 2.0, 1e-12);
  r = integrate_adaptive([](double x) { return 1.0 / (x * x); }, 0.5, inf);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

TEST(Adaptive, ErrorEstimateBoundsActualError) {
  AdaptiveOptions loose{1e-6, 1e-6, 2000, true};
  for (double k : {1.0, 5.0, 20.0}) {
    const auto r = integrate_adaptive([k](double x) { return std::exp(-k * x) * std::sin(k * x); }, 0.0, 3.0, loose);
    const double exact = (1.0 - std::exp(-3.0 * k) * (std::sin(3.0 * k) + std::cos(3.0 * k))) / (2.0 * k);
    EXPECT_LE(std::abs(r.value - exact), r.error + 1e-15) << k;
  }
}

TEST(Adaptive, PanelBudgetExhaustionThrows) {
  AdaptiveOptions tight{1e-15, 1e-15, 3, true};
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  EXPECT_THROW(integrate_adaptive(f, 0.0, 1.0, tight), NonConvergent);
  tight.throw_on_failure = false;
  EXPECT_NO_THROW(integrate_adaptive(f, 0.0, 1.0, tight));
}

TEST(Adaptive, Deterministic) {
  auto f = [](double x) { return std::exp(std::sin(7.0 * x)); };
  const auto a = integrate_adaptive(f, -1.0, 2.0);
  const auto b = integrate_adaptive(f, -1.0, 2.0);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error, b.error);
}

TEST(SphereRule, IntegratesLowOrderMoments) {
  const SphereRule s(8, 16);
  double area = 0, z2 = 0, x4 = 0, xy = 0;
  for (const auto& n : s.nodes()) {
    const double st = std::sqrt(1.0 - n.cos_theta * n.cos_theta);
    const double x = st * std::cos(n.phi), y = st * std::sin(n.phi);
    area += n.weight;
    z2 += n.weight * n.cos_theta * n.cos_theta;
    x4 += n.weight * x * x * x * x;
    xy += n.weight * x * y;
  }
  const double pi = std::numbers::pi;
  EXPECT_NEAR(area, 4.0 * pi, 1e-13);
  EXPECT_NEAR(z2, 4.0 * pi / 3.0, 1e-13);
  EXPECT_NEAR(x4, 4.0 * pi / 5.0, 1e-13);
  EXPECT_NEAR(xy, 0.0, 1e-13);
}

TEST(PairwiseSum, MatchesCompensatedReference) {
  std::vector<double> v;
  for (int i = 1; i <= 10000; ++i) v.push_back(1.0 / i);
  long double ref = 0;
  for (double x : v) ref += x;
  EXPECT_NEAR(pairwise_sum(v), static_cast<double>(ref), 1e-13);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}
