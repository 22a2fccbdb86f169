#pragma once

#include <string>
#include <vector>

#include "octachord/geometry.hpp"
#include "octachord/pair_densities.hpp"

namespace octachord {

struct ContinuityCheck {
  std::string name;
  double at = 0;
  double left = 0;
  double right = 0;
  double deviation = 0;
  double tolerance = 0;

  bool pass() const { return deviation <= tolerance; }
};

inline constexpr double kContinuityOffset = 1e-7;
inline constexpr double kDensityContinuityTolerance = 1e-6;
inline constexpr double kLambdaContinuityTolerance = 1e-9;

template <class F>
ContinuityCheck two_sided(std::string name, F&& f, double at, double offset, double tol) {
  ContinuityCheck c{std::move(name), at, f(at - offset), f(at + offset), 0, tol};
  c.deviation = std::abs(c.left - c.right);
  return c;
}

// Compares one-sided limits, each linearly extrapolated from offsets d and 2d.
// Needed where the function has a finite slope at the branch point: the raw
// two-sided difference is then ~2d*slope regardless of continuity.
template <class F>
ContinuityCheck extrapolated_limits(std::string name, F&& f, double at, double offset, double tol) {
  ContinuityCheck c;
  c.name = std::move(name);
  c.at = at;
  c.left = 2.0 * f(at - offset) - f(at - 2.0 * offset);
  c.right = 2.0 * f(at + offset) - f(at + 2.0 * offset);
  c.deviation = std::abs(c.left - c.right);
  c.tolerance = tol;
  return c;
}

// gamma''_E and gamma''_V at h, sqrt3/2 and 1; gamma''_P at sqrt3/2 and 1
// (it jumps at h); Lambda_C and Lambda_D at their branch points.
inline std::vector<ContinuityCheck> continuity_checks() {
  std::vector<ContinuityCheck> out;
  const double d = kContinuityOffset;
  const double tol = kDensityContinuityTolerance;
  struct Point {
    const char* label;
    double at;
  };
  const Point all[] = {{"h", unit::kParallelDistance}, {"sqrt3/2", unit::kFacetHeight}, {"1", 1.0}};
  for (const auto& p : all) {
    out.push_back(two_sided(std::string("g2_edge@") + p.label, gamma2_edge, p.at, d, tol));
    out.push_back(two_sided(std::string("g2_vertex@") + p.label, gamma2_vertex, p.at, d, tol));
    if (p.at != unit::kParallelDistance) {
      out.push_back(two_sided(std::string("g2_parallel@") + p.label, gamma2_parallel, p.at, d, tol));
    }
  }
  out.push_back(extrapolated_limits("lambda_c@sqrt(5/6)", lambda_c, unit::kLambdaCBranch, d,
                                    kLambdaContinuityTolerance));
  out.push_back(extrapolated_limits("lambda_d@sqrt10/3", lambda_d, unit::kLambdaDBranch, d,
                                    kLambdaContinuityTolerance));
  return out;
}

}  // namespace octachord
