#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pairdepth/rng.hpp"
#include "pairdepth/shapes.hpp"

namespace pairdepth {
namespace {

std::vector<double> random_point(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> p(n);
  for (auto& v : p) v = scale * rng.uniform(-1, 1);
  return p;
}

std::vector<PairShape> all_shapes() {
  return {PairShape::ball(), PairShape::lens(1.0), PairShape::lens(2.0), PairShape::ellipsoid(0.5),
          PairShape::box(), PairShape::segment()};
}

TEST(Member, BallExamples) {
  const Point x{0, 0}, y{1, 0};
  EXPECT_TRUE(member(PairShape::ball(), midpoint(x, y), x, y));
  EXPECT_FALSE(member(PairShape::ball(), Point{0.5, 0.51}, x, y));
  EXPECT_TRUE(member(PairShape::ball(), Point{0.5, 0.5}, x, y));  // closed boundary
}

TEST(Member, BoxExample) {
  EXPECT_TRUE(member(PairShape::box(), Point{0.3, 0.9}, Point{0, 0}, Point{1, 1}));
  EXPECT_FALSE(member(PairShape::box(), Point{0.3, 1.1}, Point{0, 0}, Point{1, 1}));
}

TEST(Member, EllipsoidContainsSegment) {
  Rng rng(2);
  for (double a : {1e-6, 0.1, 0.5, 3.0}) {
    for (int k = 0; k < 200; ++k) {
      const auto x = random_point(rng, 3), y = random_point(rng, 3);
      const double s = rng.uniform();
      std::vector<double> z(3);
      for (int i = 0; i < 3; ++i) z[i] = x[i] + s * (y[i] - x[i]);
      EXPECT_TRUE(member(PairShape::ellipsoid(a), z, x, y));
    }
  }
}

TEST(Member, DegeneratePairIsSinglePoint) {
  const Point x{1, 2};
  for (const auto& s : all_shapes()) {
    EXPECT_TRUE(member(s, x, x, x)) << s.spec();
    EXPECT_FALSE(member(s, Point{1, 2.001}, x, x)) << s.spec();
  }
}

TEST(Member, LensEndpointsIncluded) {
  const Point x{0, 0}, y{1, 0};
  EXPECT_TRUE(member(PairShape::lens(3.0), x, x, y));
  EXPECT_TRUE(member(PairShape::lens(3.0), y, x, y));
  EXPECT_TRUE(member(PairShape::lens(0.0), Point{50, 50}, x, y));
}

TEST(Member, SegmentTolerance) {
  const Point x{0, 0}, y{2, 2};
  EXPECT_TRUE(member(PairShape::segment(), Point{1, 1}, x, y));
  EXPECT_TRUE(member(PairShape::segment(), Point{1, 1 + 1e-12}, x, y));
  EXPECT_FALSE(member(PairShape::segment(), Point{1, 1.001}, x, y));
  EXPECT_FALSE(member(PairShape::segment(), Point{3, 3}, x, y));
}

TEST(Member, DimensionMismatchThrows) {
  EXPECT_THROW(member(PairShape::ball(), Point{0, 0}, Point{0, 0, 0}, Point{1, 1, 1}), Error);
}

TEST(Member, BallAgreesWithCentreRadiusForm) {
  Rng rng(5);
  int checked = 0;
  for (int k = 0; k < 20000; ++k) {
    const auto x = random_point(rng, 3), y = random_point(rng, 3), z = random_point(rng, 3);
    double zc = 0, r2 = 0;
    for (int i = 0; i < 3; ++i) {
      zc += std::pow(z[i] - 0.5 * (x[i] + y[i]), 2);
      r2 += 0.25 * std::pow(x[i] - y[i], 2);
    }
    if (std::abs(zc - r2) < 1e-9) continue;
    ++checked;
    ASSERT_EQ(member(PairShape::ball(), z, x, y), oracle::in_ball(z, x, y));
  }
  EXPECT_GT(checked, 19000);
}

TEST(Member, LensAgreesWithAngleForm) {
  Rng rng(6);
  for (double a : {0.3, 1.2, 2.094, 2.9}) {
    for (int k = 0; k < 5000; ++k) {
      const auto x = random_point(rng, 2), y = random_point(rng, 2), z = random_point(rng, 2);
      const double angle = oracle::angle_at(z, x, y);
      if (std::abs(angle - a) < 1e-7) continue;
      ASSERT_EQ(member(PairShape::lens(a), z, x, y), angle >= a);
    }
  }
}

TEST(Member, LensHalfPiIsBall) {
  Rng rng(7);
  const auto lens = PairShape::lens(std::numbers::pi / 2);
  for (int k = 0; k < 10000; ++k) {
    const auto x = random_point(rng, 3), y = random_point(rng, 3), z = random_point(rng, 3);
    ASSERT_EQ(member(lens, z, x, y), member(PairShape::ball(), z, x, y));
  }
  EXPECT_TRUE(member(lens, Point{0.5, 0.5}, Point{0, 0}, Point{1, 0}));
}

TEST(Member, Symmetric) {
  Rng rng(8);
  for (const auto& s : all_shapes()) {
    for (int k = 0; k < 100000 / 6; ++k) {
      const auto x = random_point(rng, 2), y = random_point(rng, 2), z = random_point(rng, 2);
      ASSERT_EQ(member(s, z, x, y), member(s, z, y, x)) << s.spec();
    }
    // Segment points need exact collinearity to hit, so probe them directly too.
    const Point x{0.1, 0.3}, y{0.7, -0.2};
    const auto z = midpoint(x, y);
    EXPECT_EQ(member(s, z, x, y), member(s, z, y, x)) << s.spec();
  }
}

bool near_boundary(const PairShape& s, Coords z, Coords x, Coords y) {
  switch (s.kind()) {
    case ShapeKind::Ball:
      return std::abs(oracle::distance(z, midpoint(x, y)) - 0.5 * oracle::distance(x, y)) < 1e-7;
    case ShapeKind::Lens:
      return std::abs(oracle::angle_at(z, x, y) - s.parameter()) < 1e-7;
    case ShapeKind::Ellipsoid:
      return std::abs(oracle::distance(z, x) + oracle::distance(z, y) -
                      (1 + s.parameter()) * oracle::distance(x, y)) < 1e-7;
    default:
      return false;
  }
}

TEST(Member, SimilarityEquivariant) {
  Rng rng(9);
  for (const auto& s : {PairShape::ball(), PairShape::lens(1.0), PairShape::ellipsoid(0.5)}) {
    int hits = 0;
    for (int k = 0; k < 5000; ++k) {
      const auto x = random_point(rng, 3), y = random_point(rng, 3), z = random_point(rng, 3);
      if (near_boundary(s, z, x, y)) continue;
      const double sigma = std::exp(rng.uniform(-3, 3));
      const auto v = random_point(rng, 3, 5.0);
      std::vector<double> x2(3), y2(3), z2(3);
      for (int i = 0; i < 3; ++i) {
        x2[i] = sigma * x[i] + v[i];
        y2[i] = sigma * y[i] + v[i];
        z2[i] = sigma * z[i] + v[i];
      }
      const bool in = member(s, z, x, y);
      hits += in;
      ASSERT_EQ(in, member(s, z2, x2, y2)) << s.spec();
    }
    EXPECT_GT(hits, 100) << s.spec();
  }
  // Segment: points on the chord stay on it.
  const Point x{0.25, 0.5}, y{1.0, -0.75};
  const auto z = midpoint(x, y);
  EXPECT_TRUE(member(PairShape::segment(), Point{3 * z[0] + 1, 3 * z[1] - 2}, Point{3 * x[0] + 1, 3 * x[1] - 2},
                     Point{3 * y[0] + 1, 3 * y[1] - 2}));
}

TEST(Member, BoxAxisAffineEquivariant) {
  Rng rng(10);
  for (int k = 0; k < 5000; ++k) {
    const auto x = random_point(rng, 3), y = random_point(rng, 3), z = random_point(rng, 3);
    std::vector<double> x2(3), y2(3), z2(3);
    for (int i = 0; i < 3; ++i) {
      // Power-of-two scales and dyadic shifts keep the transform exact.
      const double a = std::ldexp(1.0, static_cast<int>(rng.below(7)) - 3);
      const double b = std::ldexp(static_cast<double>(rng.below(16)), -2);
      x2[i] = a * x[i] + b;
      y2[i] = a * y[i] + b;
      z2[i] = a * z[i] + b;
    }
    ASSERT_EQ(member(PairShape::box(), z, x, y), member(PairShape::box(), z2, x2, y2));
  }
}

TEST(Member, Nesting) {
  Rng rng(12);
  for (int k = 0; k < 20000; ++k) {
    const auto x = random_point(rng, 2), y = random_point(rng, 2), z = random_point(rng, 2);
    if (member(PairShape::ellipsoid(0.2), z, x, y)) ASSERT_TRUE(member(PairShape::ellipsoid(0.7), z, x, y));
    if (member(PairShape::lens(2.5), z, x, y)) ASSERT_TRUE(member(PairShape::lens(1.5), z, x, y));
    if (member(PairShape::lens(1.5), z, x, y)) ASSERT_TRUE(member(PairShape::lens(0.5), z, x, y));
    // Points of the segment lie in every kind.
    const double s = rng.uniform();
    const Point w{x[0] + s * (y[0] - x[0]), x[1] + s * (y[1] - x[1])};
    if (member(PairShape::segment(), w, x, y)) {
      for (const auto& shape : all_shapes()) ASSERT_TRUE(member(shape, w, x, y)) << shape.spec();
    }
  }
}

TEST(PairShape, ParseAndSpec) {
  EXPECT_EQ(PairShape::parse("ball"), PairShape::ball());
  EXPECT_EQ(PairShape::parse("box").kind(), ShapeKind::Box);
  EXPECT_EQ(PairShape::parse("segment").kind(), ShapeKind::Segment);
  EXPECT_EQ(PairShape::parse("lens:2.094").parameter(), 2.094);
  EXPECT_EQ(PairShape::parse("ellipsoid:0.5").parameter(), 0.5);
  EXPECT_EQ(PairShape::parse(PairShape::lens(1.25).spec()), PairShape::lens(1.25));
  EXPECT_THROW(PairShape::parse("lens"), Error);
  EXPECT_THROW(PairShape::parse("lens:4"), Error);
  EXPECT_THROW(PairShape::parse("ellipsoid:0"), Error);
  EXPECT_THROW(PairShape::parse("ball:1"), Error);
  EXPECT_THROW(PairShape::parse("cone"), Error);
  EXPECT_THROW(PairShape::parse("lens:abc"), Error);
  EXPECT_TRUE(PairShape::ball().is_t_shape());
  EXPECT_FALSE(PairShape::box().is_t_shape());
  EXPECT_FALSE(PairShape::segment().is_t_shape());
}

TEST(EstimateT, BallOneDimensionIsHalf) {
  const auto e = estimate_t(PairShape::ball(), 1, 100000, 32, 1);
  EXPECT_GE(e.t_hat, 0.47);
  EXPECT_LE(e.t_hat, 0.53);
  EXPECT_NEAR(e.t_hat, 0.5, 3 * e.ci_halfwidth + 1e-12);
  ASSERT_EQ(e.per_radius.size(), 32u);
  EXPECT_DOUBLE_EQ(e.per_radius.front().radius, 1.0);
  EXPECT_NEAR(e.per_radius.back().radius, 1e-3, 1e-15);
  for (const auto& row : e.per_radius) {
    EXPECT_GT(row.radius, 0.0);
    EXPECT_LE(row.radius, 1.0);
  }
}

TEST(EstimateT, BallTwoDimensionsIsQuarterAtUnitRadius) {
  const auto e = estimate_t(PairShape::ball(), 2, 100000, 32, 1);
  EXPECT_NEAR(e.t_hat, 0.25, 3 * e.ci_halfwidth);
  EXPECT_EQ(e.argmin_radius, 1.0);
  const double p = e.per_radius.front().fraction;
  EXPECT_NEAR(e.per_radius.front().fraction, 0.25, 3 * 1.96 * std::sqrt(p * (1 - p) / 1e5));
}

TEST(EstimateT, LensHalfPiMatchesBallAndLensShrinks) {
  const auto ball = estimate_t(PairShape::ball(), 2, 50000, 16, 3);
  const auto lens = estimate_t(PairShape::lens(std::numbers::pi / 2), 2, 50000, 16, 3);
  EXPECT_EQ(ball.t_hat, lens.t_hat);  // identical predicate, identical streams
  const auto wide = estimate_t(PairShape::lens(1.0), 2, 50000, 16, 3);
  const auto narrow = estimate_t(PairShape::lens(2.0), 2, 50000, 16, 3);
  EXPECT_LE(narrow.t_hat, wide.t_hat + 3 * wide.ci_halfwidth);
}

TEST(EstimateT, DeterministicAndRejectsNonTShapes) {
  const auto a = estimate_t(PairShape::ellipsoid(0.5), 3, 5000, 8, 4);
  const auto b = estimate_t(PairShape::ellipsoid(0.5), 3, 5000, 8, 4);
  EXPECT_EQ(a.t_hat, b.t_hat);
  EXPECT_THROW(estimate_t(PairShape::box(), 2), Error);
  EXPECT_THROW(estimate_t(PairShape::segment(), 2), Error);
}

}  // namespace
}  // namespace pairdepth
