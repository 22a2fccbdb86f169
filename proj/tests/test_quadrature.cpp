#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "octachord/quadrature.hpp"

namespace octachord {
namespace {

TEST(GaussLegendre, KnownFivePointRule) {
  const auto r = gauss_legendre(5);
  EXPECT_NEAR(r.nodes[0], -0.9061798459386640, 1e-15);
  EXPECT_NEAR(r.nodes[1], -0.5384693101056831, 1e-15);
  EXPECT_EQ(r.nodes[2], 0.0);
  EXPECT_NEAR(r.weights[0], 0.2369268850561891, 1e-15);
  EXPECT_NEAR(r.weights[2], 0.5688888888888889, 1e-15);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 8, 32, 64}) {
    const auto r = gauss_legendre(n);
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-14);
    const int k = 2 * n - 2;  // even degree, integral 2/(k+1)
    double s = 0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    EXPECT_NEAR(s, 2.0 / (k + 1), 1e-14) << n;
    for (int i = 1; i < n; ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  }
  EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(GradedPanel, SquareRootEndpointConvergesFast) {
  // int_0^1 x^{3/2} dx and sqrt(1-x) dx: branch points at either end
  const auto r = gauss_legendre(32);
  EXPECT_NEAR(integrate_panel([](double x) { return std::pow(x, 1.5); }, 0.0, 1.0, r), 0.4, 1e-14);
  EXPECT_NEAR(integrate_panel([](double x) { return std::sqrt(1.0 - x); }, 0.0, 1.0, r), 2.0 / 3.0, 1e-12);
}

TEST(Piecewise, SplitsAtBreakpointsAndSubdivides) {
  const auto r = gauss_legendre(16);
  auto step = [](double x) { return x < 0.3 ? 1.0 : 2.0; };
  EXPECT_NEAR(integrate_piecewise(step, 0.0, 1.0, {0.3}, r), 0.3 + 1.4, 1e-14);
  EXPECT_NEAR(integrate_piecewise(step, 0.5, 1.0, {0.3}, r), 1.0, 1e-14);
  EXPECT_EQ(integrate_piecewise(step, 1.0, 1.0, {0.3}, r), 0.0);
  auto osc = [](double x) { return std::cos(200.0 * x); };
  const double exact = std::sin(200.0) / 200.0;
  EXPECT_NEAR(integrate_piecewise(osc, 0.0, 1.0, {}, r, [](double a, double b) { return int(40 * (b - a)) + 1; }),
              exact, 1e-13);
}

TEST(QuadratureConfig, Validation) {
  EXPECT_NO_THROW(validate(default_quadrature()));
  auto c = default_quadrature();
  c.nodes_per_panel = 4;
  EXPECT_THROW(validate(c), DomainError);
  c = default_quadrature();
  c.panel_breakpoints.erase(c.panel_breakpoints.begin() + 3);  // drop sqrt(5/6)
  EXPECT_THROW(validate(c), DomainError);
  c = default_quadrature();
  std::swap(c.panel_breakpoints[1], c.panel_breakpoints[2]);
  EXPECT_THROW(validate(c), DomainError);
  const auto bps = default_quadrature().panel_breakpoints;
  EXPECT_EQ(bps.size(), 7u);
}

}  // namespace
}  // namespace octachord
