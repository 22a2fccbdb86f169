#pragma once

// Regular octahedron geometry: constants, facet mesh, distance-range dispatch
// and the radical/arcsine helpers shared by the closed-form densities.

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace octachord {

// Error categories. Precondition violations on lengths/indices are domain
// errors, points outside the support are range errors, and an arcsine argument
// outside [-1-1e-9, 1+1e-9] is an evaluation error naming the offending term.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct EvaluationError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace unit {
// Critical distances for the unit-edge octahedron. The first four are the
// minimax distances; the last two are internal branch points of Lambda_C and
// Lambda_D and matter only for quadrature panelling.
inline const double kParallelDistance = std::sqrt(2.0 / 3.0);  // h
inline const double kFacetHeight = std::numbers::sqrt3 / 2.0;   // H
inline constexpr double kEdge = 1.0;
inline constexpr double kDiameter = std::numbers::sqrt2;
inline const double kLambdaCBranch = std::sqrt(5.0 / 6.0);
inline const double kLambdaDBranch = std::sqrt(10.0) / 3.0;

inline constexpr double kVolume = std::numbers::sqrt2 / 3.0;
inline constexpr double kSurface = 2.0 * std::numbers::sqrt3;
inline const double kAlpha = std::acos(-1.0 / 3.0);
}  // namespace unit

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

struct Triangle {
  std::array<Vec3, 3> vertices;  // counter-clockwise seen from outside
  Vec3 normal;                   // outward unit normal

  double area() const { return 0.5 * norm(cross(vertices[1] - vertices[0], vertices[2] - vertices[0])); }
  Vec3 centroid() const { return (vertices[0] + vertices[1] + vertices[2]) * (1.0 / 3.0); }
};

struct OctahedronGeometry {
  double edge = 1.0;
  double volume = 0;
  double surface = 0;
  double circumradius = 0;  // vertex-to-centre distance a
  double facet_height = 0;  // H
  double parallel_distance = 0;  // h, distance between opposite facets
  double alpha = 0;
  double alpha_c = 0;
  std::array<double, 4> minimax{};
  std::array<Triangle, 8> facets{};

  double diameter() const { return minimax[3]; }
};

// Facet i has normal (sx, sy, sz)/sqrt3 with sx = -1 iff bit 0 of i is set,
// sy from bit 1 and sz from bit 2. Its vertices are the three axis vertices
// on the positive/negative half-axes selected by those signs.
inline OctahedronGeometry make_octahedron(double edge) {
  if (!std::isfinite(edge) || edge <= 0.0) {
    throw DomainError("make_octahedron: edge must be positive and finite, got " + std::to_string(edge));
  }
  OctahedronGeometry g;
  g.edge = edge;
  g.volume = unit::kVolume * edge * edge * edge;
  g.surface = unit::kSurface * edge * edge;
  g.circumradius = edge / std::numbers::sqrt2;
  g.facet_height = unit::kFacetHeight * edge;
  g.parallel_distance = unit::kParallelDistance * edge;
  g.alpha = unit::kAlpha;
  g.alpha_c = std::numbers::pi - unit::kAlpha;
  g.minimax = {g.parallel_distance, g.facet_height, edge, unit::kDiameter * edge};

  const double a = g.circumradius;
  for (int i = 0; i < 8; ++i) {
    const double sx = (i & 1) ? -1.0 : 1.0;
    const double sy = (i & 2) ? -1.0 : 1.0;
    const double sz = (i & 4) ? -1.0 : 1.0;
    Triangle t;
    t.vertices = {Vec3{sx * a, 0, 0}, Vec3{0, sy * a, 0}, Vec3{0, 0, sz * a}};
    t.normal = Vec3{sx, sy, sz} * std::numbers::inv_sqrt3;
    // An odd number of negative signs flips the winding.
    if (sx * sy * sz < 0) std::swap(t.vertices[1], t.vertices[2]);
    g.facets[static_cast<std::size_t>(i)] = t;
  }
  return g;
}

inline bool contains(const Vec3& p, const OctahedronGeometry& g) {
  return std::abs(p.x) + std::abs(p.y) + std::abs(p.z) <= g.circumradius;
}

// ---------------------------------------------------------------------------
// Distance ranges

enum class RangeTag { A, B, C, D };

struct RangeId {
  RangeTag tag;
  double lower;
  double upper;
};

constexpr std::string_view to_string(RangeTag t) {
  switch (t) {
    case RangeTag::A: return "a";
    case RangeTag::B: return "b";
    case RangeTag::C: return "c";
    case RangeTag::D: return "d";
  }
  return "?";
}

// Half-open, right-continuous ranges [0,h) [h,H) [H,l) [l,sqrt2 l]; the
// diameter itself belongs to D.
inline RangeId classify_range(double r, const OctahedronGeometry& g) {
  const auto& m = g.minimax;
  if (!(r >= 0.0) || r > m[3]) {
    throw RangeError("classify_range: r=" + std::to_string(r) + " outside [0, " + std::to_string(m[3]) + "]");
  }
  if (r < m[0]) return {RangeTag::A, 0.0, m[0]};
  if (r < m[1]) return {RangeTag::B, m[0], m[1]};
  if (r < m[2]) return {RangeTag::C, m[1], m[2]};
  return {RangeTag::D, m[2], m[3]};
}

// ---------------------------------------------------------------------------
// Radicals and clamped arcsine (unit edge)

inline constexpr double kRadicalTolerance = 1e-12;
inline constexpr double kArcsinTolerance = 1e-9;

namespace detail {
inline double checked_sqrt(double arg, std::string_view name) {
  if (arg >= 0.0) return std::sqrt(arg);
  if (arg >= -kRadicalTolerance) return 0.0;
  throw DomainError(std::string(name) + ": negative radicand " + std::to_string(arg));
}
}  // namespace detail

inline double r11(double r) { return detail::checked_sqrt(r * r - 1.0, "R11"); }
inline double r23(double r) { return detail::checked_sqrt(3.0 * r * r - 2.0, "R23"); }
inline double r34(double r) { return detail::checked_sqrt(4.0 * r * r - 3.0, "R34"); }

struct Radicals {
  std::optional<double> r11, r23, r34;
};

// Each radical is present only where its radicand is >= -kRadicalTolerance.
inline Radicals radicals(double r) {
  auto maybe = [](double arg) -> std::optional<double> {
    if (arg < -kRadicalTolerance) return std::nullopt;
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
  };
  return {maybe(r * r - 1.0), maybe(3.0 * r * r - 2.0), maybe(4.0 * r * r - 3.0)};
}

inline void check_arcsin_argument(double x, std::string_view term) {
  if (!(x >= -1.0 - kArcsinTolerance && x <= 1.0 + kArcsinTolerance)) {
    throw EvaluationError("arcsine argument out of range in " + std::string(term) + ": " + std::to_string(x));
  }
}

inline double clamped_asin(double x, std::string_view term) {
  check_arcsin_argument(x, term);
  return std::asin(std::clamp(x, -1.0, 1.0));
}

// arcsin(s/d) for d > 0, given c = sqrt(d^2 - s^2) >= 0 in closed form. The
// argument s/d still goes through the clamp policy, but the angle comes from
// atan2(s, c), which keeps full precision where s/d approaches +-1 and a
// plain arcsine would lose half the digits.
inline double arcsin_sc(double s, double c, double d, std::string_view term) {
  check_arcsin_argument(s / d, term);
  return std::atan2(s, c);
}

inline double lambda_c_argument(double r) {
  const double q = r23(r);
  const double q2 = q * q;
  return (17.0 + 18.0 * r * r * (r * r - 2.0)) / (2.0 * q2 * q2);
}

// The two arcsine branches (a below sqrt(5/6), -pi - arcsin(.) above) are one
// analytic function: since 1 + arg = (6r^2-5)^2 / (2 R23^4), half-angle
// identities reduce both to pi/2 - 4 arctan(sqrt3 R34). No precision is lost
// at the branch point, where arcsin(arg) near -1 would drop half the digits.
inline double lambda_c(double r) {
  if (!(r >= unit::kFacetHeight) || r > 1.0) {
    throw RangeError("lambda_c: r=" + std::to_string(r) + " outside [sqrt3/2, 1]");
  }
  return std::numbers::pi / 2 - 4.0 * std::atan(std::numbers::sqrt3 * r34(r));
}

inline double lambda_d_argument(double r) { return std::numbers::sqrt3 * (r11(r) + 1.0) / (2.0 * r23(r)); }

// arcsin(arg) below sqrt10/3 and pi - arcsin(arg) above. With
// 1 - arg^2 = (3 R11 - 1)^2 / (4 R23^2) the cosine is (1 - 3 R11)/(2 R23),
// signed correctly on both sides, so atan2 covers both branches smoothly.
inline double lambda_d(double r) {
  if (!(r >= 1.0) || r > unit::kDiameter) {
    throw RangeError("lambda_d: r=" + std::to_string(r) + " outside [1, sqrt2]");
  }
  const double u = r11(r);
  return std::atan2(std::numbers::sqrt3 * (u + 1.0), 1.0 - 3.0 * u);
}

// ---------------------------------------------------------------------------
// Facet-pair classes

enum class PairTag { Edge, Vertex, Parallel };

struct PairClass {
  PairTag tag;
  int multiplicity;

  constexpr bool operator==(const PairClass&) const = default;
};

inline constexpr PairClass kEdgePair{PairTag::Edge, 24};
inline constexpr PairClass kVertexPair{PairTag::Vertex, 24};
inline constexpr PairClass kParallelPair{PairTag::Parallel, 8};

constexpr PairClass pair_class(PairTag t) {
  switch (t) {
    case PairTag::Edge: return kEdgePair;
    case PairTag::Vertex: return kVertexPair;
    case PairTag::Parallel: return kParallelPair;
  }
  return kEdgePair;
}

constexpr std::string_view to_string(PairTag t) {
  switch (t) {
    case PairTag::Edge: return "edge";
    case PairTag::Vertex: return "vertex";
    case PairTag::Parallel: return "parallel";
  }
  return "?";
}

inline PairClass classify_pair(int f1, int f2, const OctahedronGeometry& g) {
  if (f1 < 0 || f1 > 7 || f2 < 0 || f2 > 7) {
    throw DomainError("classify_pair: facet index out of 0..7");
  }
  if (f1 == f2) throw DomainError("classify_pair: a facet paired with itself contributes nothing");
  const auto& a = g.facets[static_cast<std::size_t>(f1)];
  const auto& b = g.facets[static_cast<std::size_t>(f2)];
  if (std::abs(dot(a.normal, b.normal) + 1.0) < 1e-12) return kParallelPair;
  int shared = 0;
  for (const auto& u : a.vertices)
    for (const auto& v : b.vertices)
      if (u == v) ++shared;
  if (shared == 2) return kEdgePair;
  if (shared == 1) return kVertexPair;
  throw DomainError("classify_pair: facets share no vertex but are not parallel");
}

}  // namespace octachord
