#pragma once

// Composite Gauss-Legendre quadrature over panels aligned with the breakpoints
// of a piecewise-analytic integrand.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "octachord/geometry.hpp"

namespace octachord {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Newton iteration on P_n from the Tricomi initial guesses.
inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

struct QuadratureConfig {
  std::vector<double> panel_breakpoints;  // sorted, unit edge
  int nodes_per_panel = 32;
  double tolerance = 1e-10;
};

// Breakpoints of gamma'' on [0, sqrt2]: the range boundaries plus the branch
// points of Lambda_C and Lambda_D.
inline std::vector<double> unit_breakpoints() {
  return {0.0,
          unit::kParallelDistance,
          unit::kFacetHeight,
          unit::kLambdaCBranch,
          1.0,
          unit::kLambdaDBranch,
          unit::kDiameter};
}

inline QuadratureConfig default_quadrature() { return {unit_breakpoints(), 32, 1e-10}; }

inline void validate(const QuadratureConfig& cfg) {
  if (cfg.nodes_per_panel < 8) throw DomainError("QuadratureConfig: nodes_per_panel must be >= 8");
  if (!std::is_sorted(cfg.panel_breakpoints.begin(), cfg.panel_breakpoints.end())) {
    throw DomainError("QuadratureConfig: breakpoints must be sorted");
  }
  for (double b : unit_breakpoints()) {
    const bool found = std::any_of(cfg.panel_breakpoints.begin(), cfg.panel_breakpoints.end(),
                                   [b](double x) { return std::abs(x - b) < 1e-15; });
    if (!found) throw DomainError("QuadratureConfig: missing required breakpoint " + std::to_string(b));
  }
}

// One panel [a, b] through x = a + (b-a)(3t^2 - 2t^3), t in [0,1]. The map
// has zero derivative at both ends, which turns (x-a)^{k/2} endpoint
// behaviour into a polynomial in t and restores spectral convergence for
// integrands with square-root branch points at panel edges. The integrand is
// never evaluated at the panel ends themselves.
template <class F>
double integrate_panel(F&& f, double a, double b, const GaussRule& rule) {
  if (b <= a) return 0.0;
  const double len = b - a;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = 0.5 * (rule.nodes[i] + 1.0);
    const double x = a + len * t * t * (3.0 - 2.0 * t);
    const double jac = 6.0 * t * (1.0 - t) * len;
    sum += 0.5 * rule.weights[i] * jac * f(x);
  }
  return sum;
}

// Integrates f over [lo, hi] splitting at every breakpoint strictly inside.
// `subdivide(a, b)` returns how many equal sub-panels a panel gets (1 unless
// the integrand oscillates).
template <class F, class Sub>
double integrate_piecewise(F&& f, double lo, double hi, const std::vector<double>& breakpoints, const GaussRule& rule,
                           Sub&& subdivide) {
  if (hi <= lo) return 0.0;
  std::vector<double> cuts{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const int m = std::max(1, subdivide(cuts[k], cuts[k + 1]));
    const double w = (cuts[k + 1] - cuts[k]) / m;
    for (int j = 0; j < m; ++j) {
      const double a = cuts[k] + j * w;
      const double b = (j + 1 == m) ? cuts[k + 1] : a + w;
      sum += integrate_panel(f, a, b, rule);
    }
  }
  return sum;
}

template <class F>
double integrate_piecewise(F&& f, double lo, double hi, const std::vector<double>& breakpoints, const GaussRule& rule) {
  return integrate_piecewise(std::forward<F>(f), lo, hi, breakpoints, rule, [](double, double) { return 1; });
}

}  // namespace octachord
