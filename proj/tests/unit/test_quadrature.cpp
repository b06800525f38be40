#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stable_spectra/quadrature.hpp"

namespace quad = stable_spectra::quad;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 16, 20}) {
    const auto& rule = quad::gauss_legendre(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    const int deg = 2 * n - 1;
    auto f = [deg](double x) { return std::pow(x, deg) + std::pow(x, deg - 1); };
    const double exact = (deg - 1) % 2 == 0 ? 2.0 / deg : 0.0;
    EXPECT_NEAR(quad::integrate_gl(f, -1.0, 1.0, rule), exact, 1e-13) << "n = " << n;
  }
}

TEST(GaussLegendre, CompositeSine) {
  auto f = [](double x) { return std::sin(x); };
  EXPECT_NEAR(quad::integrate_composite(f, 0.0, std::numbers::pi, 4), 2.0, 1e-14);
}

TEST(Wynn, AcceleratesAlternatingHarmonicSeries) {
  std::vector<double> sums;
  double s = 0.0;
  for (int k = 1; k <= 20; ++k) {
    s += (k % 2 ? 1.0 : -1.0) / k;
    sums.push_back(s);
  }
  // Raw partial sum is off by ~0.025; the accelerated value by far less.
  EXPECT_GT(std::abs(sums.back() - std::numbers::ln2), 1e-2);
  EXPECT_NEAR(quad::wynn_epsilon(sums).value, std::numbers::ln2, 1e-12);
}

TEST(Graded, InverseSquareRootSingularity) {
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  quad::GradedOptions opt;
  opt.grade_left = true;
  opt.left_leading = quad::LeadingTerm{1.0, -0.5};
  EXPECT_NEAR(quad::integrate_graded(f, 0.0, 1.0, opt), 2.0, 1e-13);
}

TEST(Graded, BothEndpointsKinked) {
  auto f = [](double x) { return std::sqrt(x * (1.0 - x)); };
  quad::GradedOptions opt;
  opt.grade_left = opt.grade_right = true;
  EXPECT_NEAR(quad::integrate_graded(f, 0.0, 1.0, opt), std::numbers::pi / 8.0, 1e-13);
}

TEST(OscillatoryTail, SineIntegralTail) {
  // int_pi^inf sin t / t dt = pi/2 - Si(pi)
  auto f = [](double t) { return std::sin(t) / t; };
  const auto r = quad::integrate_oscillatory_tail(f, std::numbers::pi, std::numbers::pi);
  EXPECT_NEAR(r.value, -0.281140725187570, 1e-10);
  EXPECT_GT(r.panels, 0);
}
