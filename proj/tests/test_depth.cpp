#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pairdepth/depth.hpp"
#include "pairdepth/rng.hpp"

namespace pairdepth {
namespace {

std::vector<PairShape> all_shapes() {
  return {PairShape::ball(), PairShape::lens(2.094), PairShape::ellipsoid(0.5), PairShape::box(),
          PairShape::segment()};
}

// pair_depth -------------------------------------------------------------------

TEST(PairDepth, TwoPointMidpoint) {
  const PointSet x(2, {0, 0, 1, 0});
  EXPECT_EQ(pair_depth(Point{0.5, 0}, x, x, PairShape::ball()), 2u);
  EXPECT_EQ(pair_depth(Point{0.5, 0}, x, PairShape::ball()), 2u);
}

TEST(PairDepth, FarPointIsZero) {
  const auto x = generate(Distribution::UniformCube, 2, 30, 1);
  for (const auto& s : all_shapes()) EXPECT_EQ(pair_depth(Point{10, 10}, x, x, s), 0u) << s.spec();
}

TEST(PairDepth, MatchesTripleLoop) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto a = generate(Distribution::Gaussian, n, 5 + rng.below(21), 10 + trial);
    const auto b = generate(Distribution::UniformCube, n, 5 + rng.below(21), 50 + trial);
    std::vector<double> z(n);
    for (auto& v : z) v = rng.uniform(-0.5, 1.0);
    for (const auto& s : all_shapes()) {
      EXPECT_EQ(pair_depth(z, a, b, s), oracle::pair_depth(z, a, b, s, false)) << s.spec();
      EXPECT_EQ(pair_depth(z, a, a, s), oracle::pair_depth(z, a, a, s, true)) << s.spec();
      EXPECT_EQ(pair_depth(z, a, s), oracle::pair_depth(z, a, a, s, true)) << s.spec();
      EXPECT_EQ(pair_depth(z, a, b, s), pair_depth(z, b, a, s)) << s.spec();
      // A data point as z exercises the closed-boundary cases.
      EXPECT_EQ(pair_depth(a[0], a, b, s), oracle::pair_depth(a[0], a, b, s, false)) << s.spec();
    }
  }
}

TEST(PairDepth, BoxFastPathWithTiedCoordinates) {
  // Integer grid with many repeated coordinates and z on grid lines.
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3;
    PointSet a(n), b(n);
    for (int i = 0; i < 40; ++i) {
      std::vector<double> p(n), q(n);
      for (auto& v : p) v = static_cast<double>(rng.below(4));
      for (auto& v : q) v = static_cast<double>(rng.below(4));
      a.push_back(p);
      b.push_back(q);
    }
    std::vector<double> z(n);
    for (auto& v : z) v = static_cast<double>(rng.below(4));
    EXPECT_EQ(pair_depth(z, a, b, PairShape::box()), oracle::pair_depth(z, a, b, PairShape::box(), false));
    EXPECT_EQ(pair_depth(z, a, a, PairShape::box()), oracle::pair_depth(z, a, a, PairShape::box(), true));
  }
}

TEST(PairDepth, DimensionMismatchThrows) {
  const PointSet a(2, {0, 0}), b(3, {0, 0, 0});
  EXPECT_THROW(pair_depth(Point{0, 0}, a, b, PairShape::ball()), Error);
}

// Tukey depth -----------------------------------------------------------------

TEST(Tukey, OneDimensionMedian) {
  const PointSet x(1, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto d = tukey_depth(Point{5}, x);
  EXPECT_EQ(d.depth, 5u);
  EXPECT_EQ(d.method, DepthMethod::Exact1D);
  EXPECT_EQ(tukey_depth(Point{0}, x).depth, 0u);
  EXPECT_EQ(tukey_depth(Point{9}, x).depth, 1u);
}

TEST(Tukey, TwoDimensionsOutsideHullIsZero) {
  const auto x = generate(Distribution::UniformCube, 2, 20, 3);
  const auto d = tukey_depth(Point{2, 2}, x);
  EXPECT_EQ(d.depth, 0u);
  EXPECT_EQ(d.method, DepthMethod::Exact2D);
}

TEST(Tukey, TwoDimensionsMatchesDenseDirections) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = generate(trial % 2 ? Distribution::Gaussian : Distribution::UniformCube, 2, 15, 200 + trial);
    std::vector<double> z{rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)};
    EXPECT_EQ(tukey_depth(z, x).depth, oracle::tukey_2d(z, x, 3600)) << trial;
    EXPECT_EQ(tukey_depth(x[3], x).depth, oracle::tukey_2d(x[3], x, 3600)) << trial;
  }
}

TEST(Tukey, TwoDimensionsGridWithCollinearPoints) {
  const auto x = generate(Distribution::Grid, 2, 25, 0);
  EXPECT_EQ(tukey_depth(Point{0.5, 0.5}, x).depth, oracle::tukey_2d(Point{0.5, 0.5}, x, 3600));
  EXPECT_EQ(tukey_depth(Point{0.5, 0.5}, x).depth, 13u);  // a slightly tilted line drops two of the middle column
  EXPECT_EQ(tukey_depth(Point{0.25, 0.5}, x).depth, oracle::tukey_2d(Point{0.25, 0.5}, x, 3600));
}

TEST(Tukey, DirectionalDepthMonotoneInDirectionSet) {
  const auto x = generate(Distribution::Gaussian, 3, 40, 7);
  const Point z{0.1, -0.1, 0.05};
  Rng rng(8);
  std::vector<std::vector<double>> dirs;
  std::uint64_t prev = x.size();
  for (int round = 0; round < 10; ++round) {
    for (int k = 0; k < 50; ++k) dirs.push_back({rng.normal(), rng.normal(), rng.normal()});
    const auto cur = directional_depth(z, x, dirs);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
  const auto full = tukey_depth(z, x);
  EXPECT_EQ(full.method, DepthMethod::Directional);
  EXPECT_GE(full.directions_checked, 10000u);
  // Each direction's count is attained by a real halfspace, so the reported
  // value is never below the true depth; at z = a data point it is at least 1.
  EXPECT_GE(tukey_depth(x[0], x).depth, 1u);
}

TEST(Tukey, HalfspaceCountClosed) {
  const PointSet x(2, {0, 0, 1, 0, 2, 0});
  EXPECT_EQ(halfspace_count(Point{1, 0}, Point{1, 0}, x), 2u);
  EXPECT_EQ(halfspace_count(Point{1, 0}, Point{0, 1}, x), 3u);
}

// Radon ----------------------------------------------------------------------------

TEST(Radon, OneDimension) {
  // Three points on a line: the middle one is the Radon point.
  const auto r = radon_partition(PointSet(1, {0, 1.5, 3}));
  EXPECT_NEAR(r.point[0], 1.5, 1e-12);
  EXPECT_EQ(r.positive.size() + r.rest.size(), 3u);
  EXPECT_THROW(radon_partition(PointSet(1, {0, 1, 2, 3})), Error);
}

TEST(Radon, SquareCornersGiveCentre) {
  const auto p = radon_point(PointSet(2, {0, 0, 1, 0, 1, 1, 0, 1}));
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[1], 0.5, 1e-12);
}

TEST(Radon, NullVectorAndHullMembershipInR3) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = generate(Distribution::Gaussian, 3, 5, 300 + trial);
    const auto r = radon_partition(p);
    double sum = 0;
    for (double l : r.lambda) sum += l;
    EXPECT_NEAR(sum, 0.0, 1e-12);
    std::vector<Point> pos, rest;
    for (auto i : r.positive) pos.push_back(p.point(i));
    for (auto i : r.rest) rest.push_back(p.point(i));
    ASSERT_FALSE(pos.empty());
    ASSERT_FALSE(rest.empty());
    EXPECT_TRUE(oracle::in_hull(r.point, pos)) << trial;
    EXPECT_TRUE(oracle::in_hull(r.point, rest)) << trial;
  }
}

TEST(Radon, WrongSizeThrows) {
  EXPECT_THROW(radon_point(PointSet(2, {0, 0, 1, 0, 1, 1})), Error);
}

TEST(Radon, RepeatedPointsStillValid) {
  const auto p = radon_point(PointSet(2, {0, 0, 0, 0, 1, 0, 0, 1}));
  EXPECT_TRUE(std::isfinite(p[0]) && std::isfinite(p[1]));
}

// Centerpoints ------------------------------------------------------------------

TEST(Centerpoint, OneDimensionIsMedian) {
  const auto x = generate(Distribution::UniformCube, 1, 31, 2);
  const auto c = centerpoint(x);
  EXPECT_TRUE(c.certified);
  EXPECT_EQ(c.target, 16u);
  EXPECT_GE(c.claimed_depth, 16u);
  EXPECT_EQ(c.claimed_depth, tukey_depth(c.z, x).depth);
}

TEST(Centerpoint, ThreeClusters) {
  Rng rng(3);
  const std::size_t k = 10;
  const double centres[3][2] = {{0, 0}, {100, 0}, {50, 80}};
  PointSet x(2);
  for (const auto& c : centres) {
    for (std::size_t i = 0; i < k; ++i) x.push_back(std::vector<double>{c[0] + rng.uniform(), c[1] + rng.uniform()});
  }
  const auto cp = centerpoint(x);
  EXPECT_TRUE(cp.certified);
  EXPECT_GE(cp.claimed_depth, k);
  EXPECT_EQ(cp.claimed_depth, oracle::tukey_2d(cp.z, x, 3600));
}

TEST(Centerpoint, UniformSixtyCertified) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto x = generate(Distribution::UniformCube, 2, 60, seed);
    const auto cp = centerpoint(x, kDefaultEffort, seed);
    EXPECT_TRUE(cp.certified);
    EXPECT_EQ(cp.target, 20u);
    EXPECT_GE(cp.claimed_depth, 20u);
    EXPECT_EQ(cp.claimed_depth, oracle::tukey_2d(cp.z, x, 7200));
    EXPECT_EQ(cp.method, DepthMethod::Exact2D);
  }
}

TEST(Centerpoint, HigherDimensionNeverCertified) {
  const auto x = generate(Distribution::Gaussian, 3, 40, 5);
  const auto cp = centerpoint(x, 200, 5);
  EXPECT_FALSE(cp.certified);
  EXPECT_EQ(cp.method, DepthMethod::Directional);
  EXPECT_EQ(cp.target, 10u);
  EXPECT_GT(cp.claimed_depth, 0u);
}

TEST(Centerpoint, TinyInputs) {
  const auto cp = centerpoint(PointSet(2, {0, 0, 1, 1}));
  EXPECT_GE(cp.claimed_depth, 1u);
  EXPECT_THROW(centerpoint(PointSet(2)), Error);
}

// Colorful ball depth ------------------------------------------------------------

TEST(Colorful, CoincidentPointCoversAllOfA) {
  const auto a = generate(Distribution::UniformCube, 2, 30, 1);
  const auto cp = centerpoint(a);
  PointSet b(2);
  b.push_back(cp.z);
  EXPECT_EQ(pair_depth(cp.z, a, b, PairShape::ball()), 30u);
}

TEST(Colorful, BoundMetOnRandomInstances) {
  for (std::size_t n : {1u, 2u}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto a = generate(Distribution::UniformCube, n, 60, seed);
      const auto b = generate(Distribution::Gaussian, n, 60, seed + 1000);
      const auto r = colorful_ball_depth(a, b, kDefaultEffort, seed);
      EXPECT_DOUBLE_EQ(r.bound, 3600.0 / static_cast<double>(n + 1));
      EXPECT_TRUE(r.bound_met);
      EXPECT_TRUE(r.certified);
      EXPECT_EQ(r.ordered_pair_count, oracle::pair_depth(r.witness, a, b, PairShape::ball(), false));
      EXPECT_EQ(r.pair_universe, 3600u);
    }
  }
}

TEST(Colorful, HigherDimensionCountStillMeetsBound) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = generate(Distribution::Gaussian, 3, 40, seed);
    const auto b = generate(Distribution::Gaussian, 3, 40, seed + 50);
    const auto r = colorful_ball_depth(a, b, 300, seed);
    EXPECT_FALSE(r.certified);
    EXPECT_GE(static_cast<double>(r.ordered_pair_count), 1600.0 / 4.0);
  }
}

TEST(Colorful, AliasedSetDropsDiagonal) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = generate(Distribution::UniformCube, 2, 30, seed);
    const auto r = colorful_ball_depth(a, a, kDefaultEffort, seed);
    EXPECT_DOUBLE_EQ(r.bound, 900.0 / 3.0 - 30.0);
    EXPECT_EQ(r.ordered_pair_count, oracle::pair_depth(r.witness, a, a, PairShape::ball(), true));
    EXPECT_EQ(r.pair_universe, 870u);
    EXPECT_TRUE(r.bound_met);
  }
}

}  // namespace
}  // namespace pairdepth
