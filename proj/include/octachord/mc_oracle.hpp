#pragma once

// Monte Carlo ground truth for the closed forms: stick tossing for gamma(r),
// isotropic uniform random chords for the CLPD, a direct estimator of the
// facet-pair surface integral for gamma''_E/V/P, and interior moments.
//
// Work is cut into fixed-size blocks. Block b draws from its own generator
// seeded by (seed, stream, b), and block results are merged in block order,
// so output is bit-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "octachord/geometry.hpp"

namespace octachord::mc {

struct McConfig {
  std::uint64_t seed = 42;
  std::uint64_t samples = 1'000'000;
  int bins = 200;
  double r_max = 0;      // 0: body diameter
  unsigned threads = 0;  // 0: hardware concurrency; never affects results
};

struct McHistogram {
  std::vector<double> bin_edges;
  std::vector<double> density;
  std::vector<double> std_err;
  double total_weight = 0;  // sum density*width
  std::uint64_t samples = 0;
  std::uint64_t discarded = 0;
  std::uint64_t overflow = 0;           // values beyond the last edge
  std::uint64_t negative_deposits = 0;  // pair estimator only
  double max_value = 0;

  std::size_t size() const { return density.size(); }
  double width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
  double center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
  double mass_std_err() const {
    double v = 0;
    for (std::size_t i = 0; i < size(); ++i) v += std_err[i] * std_err[i] * width(i) * width(i);
    return std::sqrt(v);
  }
};

struct McEstimate {
  double estimate = 0;
  double std_err = 0;
  std::uint64_t accepted = 0;
};

struct InteriorMoments {
  double volume = 0;
  double volume_std_err = 0;
  double second_moment = 0;  // <|x - centroid|^2>, i.e. R_G^2
  double second_moment_std_err = 0;
  std::uint64_t accepted = 0;
};

// Uniform bins on [0, r_max], with any bin containing a split point cut in
// two there.
inline std::vector<double> make_bin_edges(double r_max, int bins, const std::vector<double>& splits = {}) {
  if (bins < 1) throw DomainError("McConfig: bins must be >= 1");
  if (!(r_max > 0.0)) throw DomainError("McConfig: r_max must be positive");
  std::vector<double> edges;
  for (int i = 0; i <= bins; ++i) edges.push_back(i == bins ? r_max : r_max * i / bins);
  for (double s : splits) {
    if (s <= 0.0 || s >= r_max) continue;
    auto it = std::lower_bound(edges.begin(), edges.end(), s);
    if (*it != s) edges.insert(it, s);
  }
  return edges;
}

// ---------------------------------------------------------------------------
// Random numbers

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(block),
                      static_cast<std::uint32_t>(block >> 32)};
    engine_.seed(seq);
  }

  // 53-bit uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Vec3 direction() {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

  Vec3 point_on(const Triangle& t) {
    double u = uniform(), v = uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    return t.vertices[0] + (t.vertices[1] - t.vertices[0]) * u + (t.vertices[2] - t.vertices[0]) * v;
  }

 private:
  std::mt19937_64 engine_;
};

// Stream ids keep estimators that share a seed statistically independent.
enum Stream : std::uint64_t {
  kStick = 1,
  kChords = 2,
  kPairEdge = 3,
  kPairVertex = 4,
  kPairParallel = 5,
  kInterior = 6,
};

inline constexpr std::uint64_t kBlockSize = 1 << 15;

// Runs `body(rng, count, acc)` over fixed-size blocks in parallel and folds
// the per-block accumulators in block order.
template <class Acc, class Body>
Acc run_blocks(const McConfig& cfg, std::uint64_t stream, const Acc& zero, Body&& body) {
  const std::uint64_t nblocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
  std::vector<Acc> parts(nblocks, zero);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < nblocks; b = next++) {
      const std::uint64_t count = std::min(kBlockSize, cfg.samples - b * kBlockSize);
      Rng rng(cfg.seed, stream, b);
      body(rng, count, parts[b]);
    }
  };
  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<std::uint64_t>(nthreads, std::max<std::uint64_t>(nblocks, 1)));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }
  Acc total = zero;
  for (const auto& p : parts) total.merge(p);
  return total;
}

// Weighted histogram accumulator: per-bin sum of weights and of squared
// weights.
struct HistAcc {
  const std::vector<double>* edges = nullptr;
  std::vector<double> sum_w;
  std::vector<double> sum_w2;
  std::uint64_t discarded = 0;
  std::uint64_t overflow = 0;
  std::uint64_t negative = 0;
  double max_value = 0;

  explicit HistAcc(const std::vector<double>& e) : edges(&e), sum_w(e.size() - 1, 0.0), sum_w2(e.size() - 1, 0.0) {}

  void deposit(double x, double w) {
    max_value = std::max(max_value, x);
    const auto& e = *edges;
    std::size_t i;
    if (x >= e.back()) {
      // ulp-level overshoot of the last edge stays in the last bin
      if (x > e.back() * (1.0 + 1e-12)) {
        ++overflow;
        return;
      }
      i = sum_w.size() - 1;
    } else if (x < e.front()) {
      ++overflow;
      return;
    } else {
      i = static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), x) - e.begin()) - 1;
    }
    if (w < 0) ++negative;
    sum_w[i] += w;
    sum_w2[i] += w * w;
  }

  void merge(const HistAcc& o) {
    for (std::size_t i = 0; i < sum_w.size(); ++i) {
      sum_w[i] += o.sum_w[i];
      sum_w2[i] += o.sum_w2[i];
    }
    discarded += o.discarded;
    overflow += o.overflow;
    negative += o.negative;
    max_value = std::max(max_value, o.max_value);
  }

  // Each of the n samples contributes X_i = w*1[bin i]; density is E[X_i]
  // over the bin width and the error is that of a sample mean.
  McHistogram finish(std::uint64_t n) const {
    McHistogram h;
    h.bin_edges = *edges;
    h.samples = n;
    h.discarded = discarded;
    h.overflow = overflow;
    h.negative_deposits = negative;
    h.max_value = max_value;
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < sum_w.size(); ++i) {
      const double w = h.width(i);
      const double mean = sum_w[i] / nn;
      const double var = std::max(0.0, sum_w2[i] / nn - mean * mean);
      h.density.push_back(mean / w);
      h.std_err.push_back(std::sqrt(var / nn) / w);
      h.total_weight += mean;
    }
    return h;
  }
};

inline void check_samples(const McConfig& cfg) {
  if (cfg.samples < 1) throw DomainError("McConfig: samples must be >= 1");
}

// ---------------------------------------------------------------------------
// Stick tossing: P(both ends inside | first end inside) = gamma(r).

inline McEstimate stick_gamma(double r, const OctahedronGeometry& g, const McConfig& cfg) {
  if (!(r >= 0.0)) throw RangeError("stick_gamma: r must be non-negative");
  check_samples(cfg);
  struct Acc {
    std::uint64_t inside = 0, both = 0;
    void merge(const Acc& o) {
      inside += o.inside;
      both += o.both;
    }
  };
  const double a = g.circumradius;
  const Acc acc = run_blocks(cfg, kStick, Acc{}, [&](Rng& rng, std::uint64_t n, Acc& out) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const Vec3 p{a * (2.0 * rng.uniform() - 1.0), a * (2.0 * rng.uniform() - 1.0), a * (2.0 * rng.uniform() - 1.0)};
      if (!contains(p, g)) continue;
      ++out.inside;
      if (contains(p + rng.direction() * r, g)) ++out.both;
    }
  });
  if (acc.inside == 0) throw DomainError("stick_gamma: no sample landed inside the body");
  const double n = static_cast<double>(acc.inside);
  const double p = static_cast<double>(acc.both) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), acc.inside};
}

// ---------------------------------------------------------------------------
// Isotropic uniform random chords

struct Chord {
  bool hit = false;
  double length = 0;
};

// Clips the line p + t*w against the eight facet half-spaces n.x <= a/sqrt3.
inline Chord clip_line(const Vec3& p, const Vec3& w, const OctahedronGeometry& g) {
  const double offset = g.circumradius * std::numbers::inv_sqrt3;
  double t_in = -std::numeric_limits<double>::infinity();
  double t_out = std::numeric_limits<double>::infinity();
  for (const auto& f : g.facets) {
    const double nw = dot(f.normal, w);
    const double gap = offset - dot(f.normal, p);
    if (nw == 0.0) {
      if (gap < 0.0) return {};
      continue;
    }
    const double t = gap / nw;
    if (nw > 0.0)
      t_out = std::min(t_out, t);
    else
      t_in = std::max(t_in, t);
  }
  if (t_out <= t_in) return {};
  return {true, t_out - t_in};
}

// Each sample is one recorded chord; lines missing the body are redrawn.
// Lines are uniform in direction and uniform over the disk of radius a
// perpendicular to it, which covers every projection of the body.
inline McHistogram iur_chords(const OctahedronGeometry& g, const McConfig& cfg) {
  check_samples(cfg);
  const double r_max = cfg.r_max > 0 ? cfg.r_max : g.diameter();
  const auto edges = make_bin_edges(r_max, cfg.bins, {g.parallel_distance});
  const double a = g.circumradius;
  const HistAcc acc = run_blocks(cfg, kChords, HistAcc(edges), [&](Rng& rng, std::uint64_t n, HistAcc& out) {
    std::uint64_t recorded = 0;
    while (recorded < n) {
      const Vec3 w = rng.direction();
      // Orthonormal frame perpendicular to w.
      const Vec3 helper = std::abs(w.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      Vec3 u = cross(w, helper);
      u = u * (1.0 / norm(u));
      const Vec3 v = cross(w, u);
      const double rho = a * std::sqrt(rng.uniform());
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      const Vec3 p = u * (rho * std::cos(phi)) + v * (rho * std::sin(phi));
      const Chord c = clip_line(p, w, g);
      if (!c.hit) {
        ++out.discarded;
        continue;
      }
      out.deposit(c.length, 1.0);
      ++recorded;
    }
  });
  return acc.finish(cfg.samples);
}

// ---------------------------------------------------------------------------
// Facet-pair surface integral

// Representative ordered pairs; all pairs of a class are congruent. Facet 0
// has normal (1,1,1)/sqrt3; facet 1 (-,+,+) shares its y and z vertices,
// facet 3 (-,-,+) only the z vertex, facet 7 is opposite.
struct FacetPair {
  int first;
  int second;
};

constexpr FacetPair representative_pair(PairTag t) {
  switch (t) {
    case PairTag::Edge: return {0, 1};
    case PairTag::Vertex: return {0, 3};
    case PairTag::Parallel: return {0, 7};
  }
  return {0, 1};
}

inline bool inside_triangle(const Vec3& p, const Triangle& t) {
  for (int k = 0; k < 3; ++k) {
    const Vec3& a = t.vertices[static_cast<std::size_t>(k)];
    const Vec3& b = t.vertices[static_cast<std::size_t>((k + 1) % 3)];
    if (dot(cross(b - a, p - a), t.normal) < 0.0) return false;
  }
  return true;
}

// Samples r1 uniform on the first facet and w uniform on the sphere. A ray
// that reaches the second facet at distance t deposits
//   -(A1/V) (n1.w)(n2.w)/|n2.w|
// at t; the 1/|n2.w| is the Jacobian of the delta over the second surface and
// the 1/(4pi) cancels against the direction density. Rays leaving through the
// first facet never reach the second (convexity), so deposited weights are
// positive with outward normals.
inline McHistogram mc_pair_density(PairTag tag, const OctahedronGeometry& g, const McConfig& cfg) {
  check_samples(cfg);
  const FacetPair fp = representative_pair(tag);
  const Triangle& s1 = g.facets[static_cast<std::size_t>(fp.first)];
  const Triangle& s2 = g.facets[static_cast<std::size_t>(fp.second)];
  const double r_max = cfg.r_max > 0 ? cfg.r_max : g.diameter();
  const auto edges = make_bin_edges(r_max, cfg.bins, {g.parallel_distance});
  const double scale = s1.area() / g.volume;
  const double plane2 = dot(s2.normal, s2.vertices[0]);
  const std::uint64_t stream = tag == PairTag::Edge ? kPairEdge : tag == PairTag::Vertex ? kPairVertex : kPairParallel;

  const HistAcc acc = run_blocks(cfg, stream, HistAcc(edges), [&](Rng& rng, std::uint64_t n, HistAcc& out) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const Vec3 p = rng.point_on(s1);
      const Vec3 w = rng.direction();
      const double n2w = dot(s2.normal, w);
      if (std::abs(n2w) < 1e-12) {
        ++out.discarded;
        continue;
      }
      const double t = (plane2 - dot(s2.normal, p)) / n2w;
      if (t <= 0.0) continue;
      if (!inside_triangle(p + w * t, s2)) continue;
      out.deposit(t, -scale * dot(s1.normal, w) * (n2w > 0 ? 1.0 : -1.0));
    }
  });
  return acc.finish(cfg.samples);
}

// ---------------------------------------------------------------------------
// Interior moments by rejection in the bounding cube

inline InteriorMoments interior_moments(const OctahedronGeometry& g, const McConfig& cfg) {
  check_samples(cfg);
  struct Acc {
    std::uint64_t inside = 0;
    double sum = 0, sum2 = 0;
    void merge(const Acc& o) {
      inside += o.inside;
      sum += o.sum;
      sum2 += o.sum2;
    }
  };
  const double a = g.circumradius;
  const Acc acc = run_blocks(cfg, kInterior, Acc{}, [&](Rng& rng, std::uint64_t n, Acc& out) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const Vec3 p{a * (2.0 * rng.uniform() - 1.0), a * (2.0 * rng.uniform() - 1.0), a * (2.0 * rng.uniform() - 1.0)};
      if (!contains(p, g)) continue;
      ++out.inside;
      const double d2 = dot(p, p);  // centroid at the origin
      out.sum += d2;
      out.sum2 += d2 * d2;
    }
  });
  InteriorMoments m;
  const double n = static_cast<double>(cfg.samples);
  const double box = 8.0 * a * a * a;
  const double frac = static_cast<double>(acc.inside) / n;
  m.accepted = acc.inside;
  m.volume = box * frac;
  m.volume_std_err = box * std::sqrt(frac * (1.0 - frac) / n);
  if (acc.inside > 0) {
    const double k = static_cast<double>(acc.inside);
    m.second_moment = acc.sum / k;
    const double var = std::max(0.0, acc.sum2 / k - m.second_moment * m.second_moment);
    m.second_moment_std_err = std::sqrt(var / k);
  }
  return m;
}

}  // namespace octachord::mc
