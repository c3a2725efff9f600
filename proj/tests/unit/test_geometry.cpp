#include "depletion/errors.hpp"
#include "depletion/geometry.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace depletion {
namespace {

using testing::any_triplet;
using testing::for_all;
using testing::random_point;

TEST(DistPointBall, ZeroInsideAndAtCenter) {
  const Ball b(Vec2(1.0, 2.0), 1.5);
  EXPECT_EQ(dist_point_ball(Vec2(1.0, 2.0), b), 0.0);
  EXPECT_EQ(dist_point_ball(Vec2(1.5, 2.0), b), 0.0);
}

TEST(DistPointBall, PointOutside) {
  EXPECT_DOUBLE_EQ(dist_point_ball(Vec2(3.0, 0.0), Ball(Vec2(0.0, 0.0), 1.0)), 2.0);
  const Ball b(Vec2(0.0, 0.0), 2.0);
  EXPECT_NEAR(dist_point_ball(Vec2(0.0, 2.25), b), 0.25, 1e-15);
}

TEST(DistPointBall, DimensionMismatchThrows) {
  const Ball b(Vec2(0.0, 0.0), 1.0);
  EXPECT_THROW(dist_point_ball(Eigen::Vector3d(1.0, 0.0, 0.0), b), InputError);
}

TEST(Ball, RejectsInvalidRadiusAndPoints) {
  EXPECT_THROW(Ball(Vec2(0.0, 0.0), 0.0), InputError);
  EXPECT_THROW(Ball(Vec2(0.0, 0.0), -1.0), InputError);
  EXPECT_THROW(Ball(Vec2(0.0, std::nan("")), 1.0), InputError);
  EXPECT_THROW(Ball(Vec::Zero(1), 1.0), InputError);
}

TEST(InDilation, ClosedBoundary) {
  const Ball b(Vec2(0.0, 0.0), 1.0);
  EXPECT_TRUE(in_dilation(Vec2(1.25, 0.0), b, 0.25));
  EXPECT_FALSE(in_dilation(Vec2(1.25 + 1e-12, 0.0), b, 0.25));
  EXPECT_TRUE(in_dilation(Vec2(0.0, 0.0), b, 0.0));
  EXPECT_THROW(in_dilation(Vec2(0.0, 0.0), b, -0.1), InputError);
}

TEST(HalfSpace, NormalizesOnceAndKeepsUnitNormals) {
  const HalfSpace h(Vec2(0.0, 2.0), 4.0);
  EXPECT_EQ(h.normal, Vec(Vec2(0.0, 1.0)));
  EXPECT_EQ(h.offset, 2.0);
  const HalfSpace skew(Vec2(1.0, 3.0), 0.7);
  const HalfSpace again(skew.normal, skew.offset);
  EXPECT_EQ(again.normal, skew.normal);
  EXPECT_EQ(again.offset, skew.offset);
  EXPECT_THROW(HalfSpace(Vec2(0.0, 0.0), 1.0), InputError);
}

TEST(Triangle, Equilateral) {
  const auto t = triangle_from_centers(Vec2(0.0, 0.0), Vec2(2.0, 0.0), Vec2(1.0, std::sqrt(3.0)));
  for (double a : t.angles) EXPECT_NEAR(a, std::numbers::pi / 3.0, 1e-15);
  for (double l : t.side_lengths) EXPECT_NEAR(l, 2.0, 1e-15);
  EXPECT_FALSE(t.collinear);
}

TEST(Triangle, RightTriangle) {
  const auto t = triangle_from_centers(Vec2(0.0, 0.0), Vec2(3.0, 0.0), Vec2(0.0, 4.0));
  EXPECT_DOUBLE_EQ(t.side_lengths[0], 5.0);
  EXPECT_NEAR(t.angles[0], std::numbers::pi / 2.0, 1e-15);
}

TEST(Triangle, CollinearFlag) {
  const auto t = triangle_from_centers(Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(2.0, 0.0));
  EXPECT_TRUE(t.collinear);
  EXPECT_EQ(t.angles[0], 0.0);
  EXPECT_EQ(t.angles[1], std::numbers::pi);
  EXPECT_EQ(t.angles[2], 0.0);
}

TEST(Triangle, CoincidentCornersThrow) {
  EXPECT_THROW(triangle_from_centers(Vec2(0.0, 0.0), Vec2(0.0, 0.0), Vec2(1.0, 0.0)), InputError);
}

TEST(ConfigurationTriplet, OverlapNamesThePair) {
  try {
    ConfigurationTriplet(Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(5.0, 0.0), 1.0),
                         Ball(Vec2(1.5, 0.0), 1.0));
    FAIL() << "overlap accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("balls 0 and 2"), std::string::npos) << e.what();
  }
}

TEST(ConfigurationTriplet, ContactWithinToleranceAccepted) {
  EXPECT_NO_THROW(ConfigurationTriplet(Ball(Vec2(0.0, 0.0), 1.0),
                                       Ball(Vec2(2.0 - 1e-12, 0.0), 1.0),
                                       Ball(Vec2(1.0, 5.0), 1.0)));
}

TEST(ReducePlane, IdentityIn2D) {
  const ConfigurationTriplet cfg(Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(3.0, 0.0), 1.0),
                                 Ball(Vec2(0.0, 3.0), 1.0));
  const auto p = reduce_to_plane(cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(p.centers[i], Vec2(cfg[i].center));
    EXPECT_EQ(p.radii[i], cfg[i].radius);
  }
  EXPECT_EQ(p.embedding.lift(Vec2(0.5, 0.25)), Vec(Vec2(0.5, 0.25)));
}

TEST(ReducePlane, CoplanarCentersKeepCoordinates) {
  const ConfigurationTriplet cfg(Ball(Eigen::Vector3d(0, 0, 0), 1.0),
                                 Ball(Eigen::Vector3d(4, 0, 0), 1.0),
                                 Ball(Eigen::Vector3d(0, 4, 0), 1.0));
  const auto p = reduce_to_plane(cfg);
  EXPECT_NEAR((p.centers[1] - Vec2(4.0, 0.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((p.centers[2] - Vec2(0.0, 4.0)).norm(), 0.0, 1e-15);
}

TEST(ReducePlane, PreservesDistancesOfTiltedTriangle) {
  const ConfigurationTriplet cfg(Ball(Eigen::Vector3d(0, 0, 0), 1.0),
                                 Ball(Eigen::Vector3d(4, 0, 0), 1.0),
                                 Ball(Eigen::Vector3d(2, 3, 5), 1.0));
  const auto p = reduce_to_plane(cfg);
  // Independent: 4, sqrt(38), sqrt(38).
  EXPECT_NEAR((p.centers[0] - p.centers[1]).norm(), 4.0, 1e-14);
  EXPECT_NEAR((p.centers[0] - p.centers[2]).norm(), 6.1644140029689764503, 1e-14);
  EXPECT_NEAR((p.centers[1] - p.centers[2]).norm(), 6.1644140029689764503, 1e-14);
}

TEST(ReducePlane, CollinearCentersUseFirstNonParallelAxis) {
  const ConfigurationTriplet cfg(Ball(Eigen::Vector3d(0, 0, 0), 1.0),
                                 Ball(Eigen::Vector3d(3, 0, 0), 1.0),
                                 Ball(Eigen::Vector3d(6, 0, 0), 1.0));
  const auto p = reduce_to_plane(cfg);
  EXPECT_EQ(p.embedding.basis.col(1), Vec(Eigen::Vector3d(0, 1, 0)));
}

TEST(ReducePlaneProperty, DistancesAndRadiiPreserved) {
  for_all(
      300, 11, [](Rng& rng, std::size_t i) { return any_triplet(rng, i, 2 + i % 5); },
      [](const ConfigurationTriplet& cfg, Rng&) {
        const auto p = reduce_to_plane(cfg);
        for (std::size_t a = 0; a < 3; ++a) {
          EXPECT_EQ(p.radii[a], cfg[a].radius);
          for (std::size_t b = a + 1; b < 3; ++b) {
            const double l = (cfg[a].center - cfg[b].center).norm();
            EXPECT_LE(std::abs((p.centers[a] - p.centers[b]).norm() - l), 1e-12 * l);
          }
        }
        const Eigen::MatrixXd gram = p.embedding.basis.transpose() * p.embedding.basis;
        EXPECT_LE((gram - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
      });
}

TEST(ReducePlaneProperty, ProjectionNeverIncreasesDistance) {
  for_all(
      200, 12, [](Rng& rng, std::size_t i) { return any_triplet(rng, i, 3 + i % 3); },
      [](const ConfigurationTriplet& cfg, Rng& rng) {
        const auto p = reduce_to_plane(cfg);
        for (int k = 0; k < 10; ++k) {
          const Vec x = random_point(rng, cfg.dimension(), 30.0);
          const Vec xp = p.embedding.project(x);
          for (std::size_t b = 0; b < 3; ++b) {
            EXPECT_LE(dist_point_ball(xp, cfg[b]), dist_point_ball(x, cfg[b]) + 1e-12);
          }
        }
      });
}

TEST(TriangleProperty, CosineRuleRoundTripAndAngleSum) {
  for_all(
      500, 13, [](Rng& rng, std::size_t i) { return any_triplet(rng, i); },
      [](const ConfigurationTriplet& cfg, Rng&) {
        const auto t = triangle_from_centers(cfg[0].center, cfg[1].center, cfg[2].center);
        ASSERT_FALSE(t.collinear);
        EXPECT_NEAR(t.angles[0] + t.angles[1] + t.angles[2], std::numbers::pi, 1e-12);
        for (std::size_t i = 0; i < 3; ++i) {
          const double l = side_from_angle(t.angles[i], t.side_lengths[(i + 1) % 3],
                                           t.side_lengths[(i + 2) % 3]);
          EXPECT_LE(std::abs(l - t.side_lengths[i]), 1e-12 * t.side_lengths[i]);
        }
      });
}

}  // namespace
}  // namespace depletion
