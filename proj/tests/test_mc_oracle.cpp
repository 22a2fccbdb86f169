#include <gtest/gtest.h>

#include <cmath>

#include "octachord/assembly.hpp"
#include "octachord/mc_oracle.hpp"

namespace octachord::mc {
namespace {

const double kH = std::sqrt(2.0 / 3.0);
const double kD = std::sqrt(2.0);

McConfig config(std::uint64_t samples, int bins = 30, unsigned threads = 1) {
  McConfig c;
  c.samples = samples;
  c.bins = bins;
  c.threads = threads;
  return c;
}

double pair_integral(PairTag tag) {
  const auto q = default_quadrature();
  return integrate_piecewise([tag](double r) { return gamma2_pair(tag, r); }, 0.0, kD, q.panel_breakpoints,
                             gauss_legendre(32));
}

TEST(BinEdges, SplitPointBecomesEdge) {
  const auto e = make_bin_edges(kD, 10, {kH});
  ASSERT_EQ(e.size(), 12u);
  EXPECT_EQ(e.front(), 0.0);
  EXPECT_EQ(e.back(), kD);
  EXPECT_NE(std::find(e.begin(), e.end(), kH), e.end());
  EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
  // a split already on an edge adds nothing
  EXPECT_EQ(make_bin_edges(1.0, 4, {0.5}).size(), 5u);
  EXPECT_THROW(make_bin_edges(1.0, 0), DomainError);
}

TEST(Rng, UniformAndDirection) {
  Rng rng(1, 2, 3);
  double sum = 0, sz = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    const Vec3 w = rng.direction();
    ASSERT_NEAR(norm(w), 1.0, 1e-14);
    sz += w.z;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  EXPECT_NEAR(sz / 100000, 0.0, 0.01);
  Rng a(7, 1, 0), b(7, 1, 0), c(7, 1, 1);
  EXPECT_EQ(a.uniform(), b.uniform());
  EXPECT_NE(b.uniform(), c.uniform());
}

TEST(Rng, PointOnTriangleStaysInside) {
  const auto g = make_octahedron(1.0);
  Rng rng(5, 0, 0);
  for (int i = 0; i < 10000; ++i) {
    const Vec3 p = rng.point_on(g.facets[3]);
    EXPECT_TRUE(inside_triangle(p, g.facets[3]));
    EXPECT_NEAR(dot(p - g.facets[3].vertices[0], g.facets[3].normal), 0.0, 1e-14);
  }
}

TEST(Determinism, ThreadCountDoesNotChangeResults) {
  const auto g = make_octahedron(1.0);
  const auto h1 = iur_chords(g, config(200'000, 30, 1));
  const auto h3 = iur_chords(g, config(200'000, 30, 3));
  EXPECT_EQ(h1.density, h3.density);
  EXPECT_EQ(h1.std_err, h3.std_err);
  EXPECT_EQ(h1.discarded, h3.discarded);
  const auto p1 = mc_pair_density(PairTag::Vertex, g, config(150'000, 20, 1));
  const auto p4 = mc_pair_density(PairTag::Vertex, g, config(150'000, 20, 4));
  EXPECT_EQ(p1.density, p4.density);
  EXPECT_EQ(stick_gamma(0.4, g, config(100'000, 1, 1)).estimate, stick_gamma(0.4, g, config(100'000, 1, 2)).estimate);
  EXPECT_EQ(interior_moments(g, config(100'000, 1, 1)).second_moment,
            interior_moments(g, config(100'000, 1, 5)).second_moment);
}

TEST(Determinism, SeedChangesResults) {
  const auto g = make_octahedron(1.0);
  auto a = config(50'000);
  auto b = a;
  b.seed = 43;
  EXPECT_NE(iur_chords(g, a).density, iur_chords(g, b).density);
}

TEST(StickGamma, Endpoints) {
  const auto g = make_octahedron(1.0);
  const auto zero = stick_gamma(0.0, g, config(20'000));
  EXPECT_EQ(zero.estimate, 1.0);
  EXPECT_EQ(zero.std_err, 0.0);
  EXPECT_EQ(stick_gamma(1.5, g, config(20'000)).estimate, 0.0);
  EXPECT_THROW(stick_gamma(-0.1, g, config(10)), RangeError);
  EXPECT_THROW(stick_gamma(0.1, g, config(0)), DomainError);
}

TEST(StickGamma, AgreesWithCorrelationFunction) {
  const auto g = make_octahedron(1.0);
  for (double r : {0.3, 0.7}) {
    const auto est = stick_gamma(r, g, config(1'000'000));
    EXPECT_LT(std::abs(est.estimate - gamma0(r)), 4 * est.std_err) << r;
  }
  // edge 2 at doubled distance gives the same probability
  const auto g2 = make_octahedron(2.0);
  const auto est = stick_gamma(1.0, g2, config(1'000'000));
  EXPECT_LT(std::abs(est.estimate - gamma0(0.5)), 4 * est.std_err);
}

TEST(IurChords, MomentsAndSupport) {
  const auto g = make_octahedron(1.0);
  const auto h = iur_chords(g, config(1'000'000, 40));
  EXPECT_EQ(h.samples, 1'000'000u);
  EXPECT_EQ(h.overflow, 0u);
  EXPECT_LE(h.max_value, kD + 1e-12);
  EXPECT_GT(h.discarded, 0u);
  EXPECT_NEAR(h.total_weight, 1.0, 1e-12);
  double mean = 0;
  for (std::size_t i = 0; i < h.size(); ++i) mean += h.center(i) * h.density[i] * h.width(i);
  EXPECT_NEAR(mean, mean_chord(), 2e-3);
}

TEST(IurChords, MatchesClpdPerBin) {
  const auto g = make_octahedron(1.0);
  const auto h = iur_chords(g, config(2'000'000, 25));
  const auto rule = gauss_legendre(32);
  const auto bps = unit_breakpoints();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double lo = h.bin_edges[i], hi = h.bin_edges[i + 1];
    const double exact = integrate_piecewise([](double r) { return clpd(r); }, lo, hi, bps, rule) / (hi - lo);
    EXPECT_LT(std::abs(h.density[i] - exact), 4 * h.std_err[i] + 1e-12) << "bin " << i;
  }
}

TEST(PairDensity, ParallelVanishesBelowH) {
  const auto g = make_octahedron(1.0);
  const auto h = mc_pair_density(PairTag::Parallel, g, config(500'000, 20));
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.bin_edges[i + 1] <= kH) {
      EXPECT_EQ(h.density[i], 0.0);
    }
  }
  EXPECT_GE(h.max_value, kH * (1 - 1e-12));
  EXPECT_EQ(h.negative_deposits, 0u);
}

TEST(PairDensity, IntegralsMatchClosedForm) {
  const auto g = make_octahedron(1.0);
  for (PairTag tag : {PairTag::Edge, PairTag::Vertex, PairTag::Parallel}) {
    const auto h = mc_pair_density(tag, g, config(1'000'000, 20));
    EXPECT_EQ(h.negative_deposits, 0u);
    EXPECT_LT(std::abs(h.total_weight - pair_integral(tag)), 4 * h.mass_std_err()) << to_string(tag);
  }
}

TEST(PairDensity, EdgeClassAtInteriorPoint) {
  const auto g = make_octahedron(1.0);
  auto cfg = config(2'000'000);
  cfg.r_max = 0.6;
  cfg.bins = 6;  // bin [0.2, 0.3] and [0.3, 0.4]
  const auto h = mc_pair_density(PairTag::Edge, g, cfg);
  const auto rule = gauss_legendre(32);
  for (std::size_t i : {2u, 3u}) {
    const double lo = h.bin_edges[i], hi = h.bin_edges[i + 1];
    const double exact =
        integrate_piecewise([](double r) { return gamma2_edge(r); }, lo, hi, unit_breakpoints(), rule) / (hi - lo);
    EXPECT_LT(std::abs(h.density[i] - exact), 4 * h.std_err[i]);
  }
}

TEST(PairDensity, StdErrShrinksWithSqrtN) {
  const auto g = make_octahedron(1.0);
  const auto a = mc_pair_density(PairTag::Edge, g, config(250'000, 10));
  const auto b = mc_pair_density(PairTag::Edge, g, config(1'000'000, 10));
  for (std::size_t i = 1; i < 6; ++i) {
    ASSERT_GT(b.std_err[i], 0.0);
    EXPECT_NEAR(a.std_err[i] / b.std_err[i], 2.0, 0.4) << i;
  }
}

TEST(InteriorMoments, VolumeAndGyration) {
  const auto g = make_octahedron(1.0);
  const auto m = interior_moments(g, config(4'000'000));
  EXPECT_LT(std::abs(m.volume - g.volume), 4 * m.volume_std_err);
  EXPECT_LT(std::abs(m.second_moment - 0.15), 4 * m.second_moment_std_err);
  const auto m2 = interior_moments(make_octahedron(2.0), config(4'000'000));
  // same seed, same accepted points up to scale
  EXPECT_EQ(m2.accepted, m.accepted);
  EXPECT_NEAR(m2.second_moment, 4 * m.second_moment, 1e-12);
  EXPECT_NEAR(m2.volume, 8 * m.volume, 1e-12);
}

TEST(HistAcc, OverflowAndDiscards) {
  const std::vector<double> edges{0.0, 1.0, 2.0};
  HistAcc acc(edges);
  acc.deposit(0.5, 1.0);
  acc.deposit(1.5, 2.0);
  acc.deposit(2.5, 1.0);
  const auto h = acc.finish(4);
  EXPECT_EQ(h.overflow, 1u);
  EXPECT_DOUBLE_EQ(h.density[0], 0.25);
  EXPECT_DOUBLE_EQ(h.density[1], 0.5);
  EXPECT_DOUBLE_EQ(h.max_value, 2.5);
}

}  // namespace
}  // namespace octachord::mc
