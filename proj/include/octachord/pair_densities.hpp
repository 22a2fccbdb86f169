#pragma once

// Second derivative of the correlation function contributed by one ordered
// pair of unit-edge octahedron facets, for the three pair classes. Each class
// is piecewise analytic over the four distance ranges a..d; every branch is a
// separate function so tests can address it directly.
//
// Arcsines go through arcsin_sc with their cosine in closed form (factored
// from 1 - x^2), since most of the arguments reach +-1 at a range boundary.

#include <cmath>
#include <numbers>

#include "octachord/geometry.hpp"

namespace octachord {

namespace branch {

namespace detail {
inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double sqrt3 = std::numbers::sqrt3;
inline const double sqrt6 = std::sqrt(6.0);
}  // namespace detail

// --- shared edge --------------------------------------------------------------

inline double edge_a(double r) {
  using namespace detail;
  const double alpha = unit::kAlpha;
  return (2.0 * sqrt2 - pi + alpha) / (8.0 * pi) - (18.0 + (7.0 * sqrt3 - 9.0) * pi) * r / (96.0 * sqrt2 * pi);
}

inline double edge_b(double r) {
  using namespace detail;
  const double alpha = unit::kAlpha;
  return 1.0 / (12.0 * sqrt6 * r * r * r) - 1.0 / (2.0 * sqrt6 * r) +
         (4.0 + sqrt2 * (pi + alpha)) / (8.0 * sqrt2 * pi) -
         (18.0 - (9.0 - 13.0 * sqrt3) * pi) * r / (96.0 * sqrt2 * pi);
}

inline double edge_c(double r) {
  using namespace detail;
  const double alpha = unit::kAlpha;
  const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r6 = r4 * r2, r7 = r6 * r, r8 = r4 * r4;
  const double q23 = r23(r);
  const double q34 = r34(r);
  const double poly = 27.0 - 90.0 * r2 + 96.0 * r4 - 34.0 * r6 + 2.0 * r8;
  const double poly_cos = 10.0 * r6 - 54.0 * r4 + 72.0 * r2 - 27.0;

  const double bracket = -4.0 * sqrt3 * pi - 36.0 * (4.0 + sqrt2 * alpha) * r3 +
                         3.0 * (18.0 - 9.0 * pi + 10.0 * sqrt3 * pi) * r4 + 6.0 * (25.0 * r2 - 6.0) * q34 +
                         8.0 * sqrt3 *
                             arcsin_sc(9.0 * r2 - 7.0, 3.0 * sqrt3 * (1.0 - r2) * q34, 2.0 * q23 * q23 * q23,
                                       "edge_c/t1") +
                         96.0 * sqrt3 * r2 * arcsin_sc(1.0, sqrt3 * q34, 2.0 * q23, "edge_c/t2") -
                         72.0 * sqrt2 * r3 * arcsin_sc(r, sqrt2 * q34, sqrt3 * q23, "edge_c/t3") -
                         18.0 * sqrt3 * r4 *
                             arcsin_sc(sqrt3 * poly, q34 * std::abs(poly_cos), 2.0 * r7 * q23, "edge_c/t4");
  return -bracket / (288.0 * sqrt2 * pi * r3);
}

inline double edge_d(double r) {
  using namespace detail;
  const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
  const double q11 = r11(r);
  const double q23 = r23(r);

  const double bracket = -16.0 * sqrt2 + 8.0 * sqrt2 * (3.0 + sqrt3 * pi) * r2 - 12.0 * pi * r3 +
                         3.0 * sqrt2 * (4.0 * sqrt3 - 3.0) * pi * r4 - 4.0 * sqrt2 * (5.0 * r2 - 2.0) * q11 -
                         24.0 * r3 *
                             arcsin_sc(4.0 + 4.0 * r2 - 7.0 * r4, 4.0 * sqrt2 * r * q11 * (2.0 - r2),
                                       q23 * q23 * q23 * q23, "edge_d/t1") +
                         36.0 * sqrt2 * r4 * arcsin_sc(q11, 1.0, r, "edge_d/t2") -
                         8.0 * sqrt6 * r2 * (2.0 + 3.0 * r2) *
                             arcsin_sc(1.0 + 3.0 * q11, sqrt3 * (1.0 - q11), 2.0 * q23, "edge_d/t3");
  return -bracket / (192.0 * pi * r3);
}

// --- shared vertex ------------------------------------------------------------

inline double vertex_a(double r) {
  using namespace detail;
  return (9.0 + sqrt3) * r / (96.0 * sqrt2);
}

inline double vertex_b(double r) {
  using namespace detail;
  return -1.0 / (4.0 * sqrt6 * r * r * r) + 1.0 / (sqrt6 * r) + (9.0 - 29.0 * sqrt3) * r / (96.0 * sqrt2);
}

inline double vertex_c(double r) {
  using namespace detail;
  const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
  const double q23 = r23(r);
  const double q34 = r34(r);
  const double s_cube =
      arcsin_sc(7.0 - 9.0 * r2, 3.0 * sqrt3 * (1.0 - r2) * q34, 2.0 * q23 * q23 * q23, "vertex_c/t1");

  const double inner = 18.0 * arcsin_sc(sqrt3, q34, 2.0 * r, "vertex_c/t2") +
                       8.0 * arcsin_sc(2.0 * r2 - 3.0, sqrt3 * q34, 2.0 * r2, "vertex_c/t3") +
                       arcsin_sc(9.0 - 12.0 * r2 + 2.0 * r4, sqrt3 * (3.0 - 2.0 * r2) * q34, 2.0 * r4, "vertex_c/t4") -
                       30.0 * s_cube -
                       24.0 * arcsin_sc(6.0 * r2 - 5.0, sqrt3 * q34, 2.0 * q23 * q23, "vertex_c/t5");

  const double bracket = -8.0 * sqrt3 * pi + 4.0 * r2 * (10.0 * sqrt3 * pi + 3.0 * q34 - 4.0 * sqrt3 * lambda_c(r)) -
                         9.0 * (7.0 * sqrt3 - 2.0) * pi * r4 + 16.0 * sqrt3 * (4.0 * r2 - 1.0) * s_cube +
                         2.0 * sqrt3 * r4 * inner;
  return bracket / (192.0 * sqrt2 * pi * r3);
}

inline double vertex_d(double r) {
  using namespace detail;
  const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
  const double q11 = r11(r);
  const double q23 = r23(r);
  const double sp = sqrt3 * pi;

  const double poly = -16.0 + 8.0 * (12.0 + sp) * r2 - 16.0 * (5.0 + sp) * r4 - 2.0 * (18.0 + 5.0 * sp) * r6 +
                      9.0 * (3.0 + 2.0 * sp) * r8;
  const double poly_r11 = 8.0 + 12.0 * r2 - 2.0 * (31.0 + 6.0 * sp) * r4 + 3.0 * (9.0 + 4.0 * sp) * r6;
  const double arcs = -2.0 * sqrt3 * arcsin_sc(4.0 - 3.0 * r2, 2.0 * sqrt3 * q11, q23 * q23, "vertex_d/t1") +
                      3.0 * r2 *
                          (3.0 * arcsin_sc(q11 - 1.0, q11 + 1.0, sqrt2 * r, "vertex_d/t2") +
                           2.0 * sqrt3 * arcsin_sc(1.0, sqrt3 * q11, q23, "vertex_d/t3")) -
                      2.0 * sqrt3 * q23 * q23 * lambda_d(r);

  const double bracket =
      3.0 * poly - 6.0 * poly_r11 * q11 + 2.0 * r2 * (-4.0 + 9.0 * r4 + r2 * (4.0 - 12.0 * q11)) * arcs;
  const double denom_root = 3.0 * r2 - 2.0 * q11;
  return -bracket / (48.0 * sqrt2 * pi * r3 * denom_root * denom_root);
}

// --- parallel -----------------------------------------------------------------

inline double parallel_a(double) { return 0.0; }

inline double parallel_b(double r) {
  using namespace detail;
  return sqrt3 * (1.0 - r * r) / (2.0 * sqrt2 * r * r * r);
}

inline double parallel_c(double r) {
  using namespace detail;
  const double r3 = r * r * r;
  const double bracket =
      sqrt3 * pi - 3.0 * r34(r) -
      2.0 * sqrt3 * (2.0 * r * r - 1.0) * arcsin_sc(1.0, sqrt3 * r34(r), 2.0 * r23(r), "parallel_c/t1");
  return bracket / (4.0 * sqrt2 * pi * r3);
}

inline double parallel_d(double r) {
  using namespace detail;
  const double r2 = r * r, r3 = r2 * r;
  const double q11 = r11(r);
  const double q23 = r23(r);
  const double bracket = 6.0 * sqrt3 * pi + (27.0 - 11.0 * sqrt3 * pi) * r2 - 54.0 * q11 +
                         6.0 * sqrt3 * (5.0 * r2 - 6.0) * arcsin_sc(1.0, sqrt3 * q11, q23, "parallel_d/t1") +
                         12.0 * sqrt3 * r2 *
                             arcsin_sc(1.0 + 3.0 * q11, sqrt3 * (1.0 - q11), 2.0 * q23, "parallel_d/t2");
  return -bracket / (36.0 * sqrt2 * pi * r3);
}

using BranchFn = double (*)(double);

inline constexpr BranchFn kEdgeBranches[4] = {edge_a, edge_b, edge_c, edge_d};
inline constexpr BranchFn kVertexBranches[4] = {vertex_a, vertex_b, vertex_c, vertex_d};
inline constexpr BranchFn kParallelBranches[4] = {parallel_a, parallel_b, parallel_c, parallel_d};

inline const BranchFn* branches(PairTag t) {
  switch (t) {
    case PairTag::Edge: return kEdgeBranches;
    case PairTag::Vertex: return kVertexBranches;
    case PairTag::Parallel: return kParallelBranches;
  }
  return kEdgeBranches;
}

}  // namespace branch

inline const OctahedronGeometry& unit_octahedron() {
  static const OctahedronGeometry g = make_octahedron(1.0);
  return g;
}

struct PairDensityValue {
  double r;
  PairClass pair_class;
  double value;  // 1/length^2
  RangeId range;
};

// Unit edge. The dispatcher never hands r < h to branches b..d, so their r^-3
// poles are unreachable.
inline PairDensityValue evaluate_pair_density(PairTag tag, double r) {
  const RangeId range = classify_range(r, unit_octahedron());
  const double v = branch::branches(tag)[static_cast<int>(range.tag)](r);
  return {r, pair_class(tag), v, range};
}

inline double gamma2_edge(double r) { return evaluate_pair_density(PairTag::Edge, r).value; }
inline double gamma2_vertex(double r) { return evaluate_pair_density(PairTag::Vertex, r).value; }
inline double gamma2_parallel(double r) { return evaluate_pair_density(PairTag::Parallel, r).value; }

inline double gamma2_pair(PairTag tag, double r) { return evaluate_pair_density(tag, r).value; }

}  // namespace octachord
