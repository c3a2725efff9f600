#include "depletion/criteria.hpp"
#include "depletion/delta_max.hpp"
#include "depletion/errors.hpp"
#include "depletion/oracle.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace depletion {
namespace {

constexpr double kTF = 0.15470053837925152902;
// (1 + kTF) cos(pi / 64) - 1, from the mpmath oracle.
constexpr double kRegular64 = 0.15330965101086270419;

ConvexPolygon regular_polygon(int m, double circumradius) {
  std::vector<Vec2> v;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * std::numbers::pi * k / m;
    v.emplace_back(circumradius * std::cos(th), circumradius * std::sin(th));
  }
  return ConvexPolygon(v);
}

ConvexPolygon square(double half) {
  return ConvexPolygon(
      {Vec2(-half, -half), Vec2(half, -half), Vec2(half, half), Vec2(-half, half)});
}

TEST(TripletCriterion, ThresholdFromSmallestRollingRadius) {
  const std::vector<ConvexBody> bodies{Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(5.0, 0.0), 2.0),
                                       Ellipsoid::planar(Vec2(0.0, 6.0), 2.0, 1.0, 0.0)};
  const auto r = theorem1_check(bodies, 0.05);
  EXPECT_NEAR(r.threshold, 0.5 * kTF, 1e-16);
  EXPECT_EQ(r.limiting_body_index, 2u);
  EXPECT_TRUE(r.satisfied);
  EXPECT_TRUE(r.strict);
  EXPECT_TRUE(r.usable);
  EXPECT_TRUE(r.warning.empty());
}

TEST(TripletCriterion, BoundaryIsSatisfiedButNotStrict) {
  const std::vector<ConvexBody> bodies{Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(2.0, 0.0), 1.0),
                                       Ball(Vec2(1.0, std::sqrt(3.0)), 1.0)};
  const double thr = theorem1_check(bodies, 0.0).threshold;
  const auto at = theorem1_check(bodies, thr);
  EXPECT_TRUE(at.satisfied);
  EXPECT_FALSE(at.strict);
  const auto above = theorem1_check(bodies, std::nextafter(thr, 1.0));
  EXPECT_FALSE(above.satisfied);
}

TEST(TripletCriterion, CornerMakesCriterionUnusable) {
  const std::vector<ConvexBody> bodies{
      Ball(Vec2(0.0, 0.0), 1.0),
      ConvexPolygon({Vec2(3, -1), Vec2(5, -1), Vec2(5, 1), Vec2(3, 1)}),
      Ball(Vec2(0.0, 4.0), 1.0)};
  const auto r = theorem1_check(bodies, 0.01);
  EXPECT_FALSE(r.usable);
  EXPECT_FALSE(r.satisfied);
  EXPECT_EQ(r.threshold, 0.0);
  EXPECT_EQ(r.limiting_body_index, 1u);
  EXPECT_NE(r.warning.find("body 1"), std::string::npos);
}

TEST(TripletCriterion, RejectsBadInput) {
  const std::vector<ConvexBody> two{Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(3.0, 0.0), 1.0)};
  EXPECT_THROW(theorem1_check(two, 0.1), InputError);
  std::vector<ConvexBody> walled = two;
  walled.push_back(HalfSpace(Vec2(0.0, 1.0), -5.0));
  EXPECT_THROW(theorem1_check(walled, 0.1), InputError);
  walled.back() = Ball(Vec2(0.0, 3.0), 1.0);
  EXPECT_THROW(theorem1_check(walled, -0.1), InputError);
}

TEST(WallCheck, QuarterOfSmallestRadius) {
  const std::vector<ConvexBody> bodies{Ball(Vec2(-1.0, 1.0), 1.0), Ball(Vec2(1.0, 1.0), 1.0),
                                       HalfSpace(Vec2(0.0, 1.0), 0.0), Ball(Vec2(5.0, 2.0), 2.0)};
  const auto r = wall_check(bodies, 0.25);
  EXPECT_EQ(r.threshold, 0.25);
  EXPECT_TRUE(r.satisfied);
  EXPECT_FALSE(r.strict);
  EXPECT_EQ(r.limiting_body_index, 0u);
  // Sharp: two unit balls touching the wall and each other reach it exactly.
  EXPECT_NEAR(delta_max_wall(std::get<Ball>(bodies[0]), std::get<Ball>(bodies[1]),
                             std::get<HalfSpace>(bodies[2]))
                  .delta_max,
              r.threshold, 1e-14);
}

TEST(WallCheck, NeedsExactlyOneWall) {
  const std::vector<ConvexBody> none{Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(3.0, 0.0), 1.0),
                                     Ball(Vec2(0.0, 3.0), 1.0)};
  EXPECT_THROW(wall_check(none, 0.1), InputError);
  const std::vector<ConvexBody> two{Ball(Vec2(0.0, 0.0), 1.0), HalfSpace(Vec2(0.0, 1.0), -1.0),
                                    HalfSpace(Vec2(0.0, -1.0), -1.0)};
  EXPECT_THROW(wall_check(two, 0.1), InputError);
}

TEST(Improved, RegularPolygonWithInscribedDisk) {
  const ConvexBody poly = regular_polygon(64, 1.0);
  const ConvexBody disk = Ball(Vec2(0.0, 0.0), std::cos(std::numbers::pi / 64.0));
  EXPECT_TRUE(improved_criterion_check(poly, disk, 0.15));
  EXPECT_FALSE(improved_criterion_check(poly, disk, 0.1535));
  const auto best = largest_improved_delta(poly, disk);
  ASSERT_TRUE(best.has_value());
  // Corner fans are sampled, so the sampled bound may exceed the exact one
  // by the fan resolution only.
  EXPECT_NEAR(*best, kRegular64, 1e-6);
  EXPECT_GE(*best, kRegular64 - 1e-12);
  // The plain criterion is unusable for the polygon.
  const std::vector<ConvexBody> trio{poly, Ball(Vec2(5.0, 0.0), 1.0), Ball(Vec2(0.0, 5.0), 1.0)};
  EXPECT_FALSE(theorem1_check(trio, 0.01).usable);
}

TEST(Improved, SquareCornersTooFar) {
  // Corner distance rho (sqrt 2 - 1) exceeds kTF * rho for every rho.
  for (double rho : {0.2, 0.45}) {
    const ConvexBody sq = square(rho);
    const ConvexBody disk = Ball(Vec2(0.0, 0.0), rho);
    EXPECT_FALSE(improved_criterion_check(sq, disk, 0.0));
    EXPECT_FALSE(largest_improved_delta(sq, disk).has_value());
  }
  EXPECT_NEAR(0.2 * (std::sqrt(2.0) - 1.0), 0.08284271247461900976, 1e-16);
}

TEST(Improved, InnerEqualsBody) {
  const ConvexBody disk = Ball(Vec2(1.0, 1.0), 2.0);
  const auto best = largest_improved_delta(disk, disk);
  ASSERT_TRUE(best.has_value());
  EXPECT_NEAR(*best, kTF * 2.0, 1e-15);
  const ConvexBody rounded = RoundedPolygon(square(1.0), 0.3);
  const auto same = largest_improved_delta(rounded, rounded);
  ASSERT_TRUE(same.has_value());
  EXPECT_NEAR(*same, kTF * 0.3, 1e-15);
}

TEST(Improved, RejectsInnerOutside) {
  const ConvexBody disk = Ball(Vec2(0.0, 0.0), 1.0);
  const ConvexBody off = Ball(Vec2(0.5, 0.0), 1.0);
  EXPECT_THROW(improved_criterion_check(disk, off, 0.0), InputError);
  EXPECT_THROW(improved_criterion_check(square(1.0), square(0.5), 0.0), InputError);
}

// L-shaped bodies of five unit disks each, arms along (sx, 0) and (0, sy).
std::vector<Ball> l_shape(const Vec2& corner, double sx, double sy) {
  std::vector<Ball> out;
  for (int k = 0; k < 3; ++k) out.emplace_back(Vec(corner + Vec2(2.0 * k * sx, 0.0)), 1.0);
  for (int k = 1; k < 3; ++k) out.emplace_back(Vec(corner + Vec2(0.0, 2.0 * k * sy)), 1.0);
  return out;
}

TEST(BallUnion, LShapesHaveNoTripleOverlapBelowThreshold) {
  // Disks (4, 0), (4.001, 2.001) and (5.736, 1) of the three bodies almost
  // touch pairwise.
  const std::vector<std::vector<Ball>> bodies{l_shape(Vec2(0.0, 0.0), 1.0, -1.0),
                                              l_shape(Vec2(4.001, 2.001), -1.0, 1.0),
                                              l_shape(Vec2(5.736, 1.0), 1.0, -1.0)};
  const double delta = 0.999 * kTF;
  const auto r = ball_union_check(bodies, delta);
  ASSERT_TRUE(r.satisfied);
  ASSERT_TRUE(r.strict);
  EXPECT_NEAR(r.threshold, kTF, 1e-16);

  // Every triple of constituents is empty at delta; the tight one only just.
  std::size_t triplets = 0;
  for (const auto& a : bodies[0]) {
    for (const auto& b : bodies[1]) {
      for (const auto& c : bodies[2]) {
        EXPECT_GT(delta_max(ConfigurationTriplet(a, b, c)).delta_max, delta);
        ++triplets;
      }
    }
  }
  EXPECT_EQ(triplets, 5u * 5u * 5u);
  const double tight =
      delta_max(ConfigurationTriplet(bodies[0][2], bodies[1][0], bodies[2][0])).delta_max;
  EXPECT_LT(tight, kTF + 5e-3);

  // Grid check on the unions themselves.
  auto covered = [&](const std::vector<Ball>& body, const Vec2& x) {
    for (const auto& b : body) {
      if (dist_point_ball(x, b) <= delta) return true;
    }
    return false;
  };
  for (double x = 2.5; x <= 7.0; x += 0.005) {
    for (double y = -1.5; y <= 3.5; y += 0.005) {
      const Vec2 p(x, y);
      EXPECT_FALSE(covered(bodies[0], p) && covered(bodies[1], p) && covered(bodies[2], p))
          << x << ", " << y;
    }
  }
}

TEST(BallUnion, RejectsOverlappingBodies) {
  const std::vector<std::vector<Ball>> bodies{{Ball(Vec2(0.0, 0.0), 1.0)},
                                              {Ball(Vec2(1.0, 0.0), 1.0)},
                                              {Ball(Vec2(0.0, 5.0), 1.0)}};
  EXPECT_THROW(ball_union_check(bodies, 0.1), InputError);
}

TEST(CriteriaProperty, TripletCriterionNeverExceedsExactTripletValue) {
  testing::for_all(
      500, 41,
      [](Rng& rng, std::size_t i) { return testing::any_triplet(rng, i, 2 + i % 2, {0.01, 100.0}); },
      [](const ConfigurationTriplet& cfg, Rng&) {
        const std::vector<ConvexBody> bodies{cfg[0], cfg[1], cfg[2]};
        const auto r = theorem1_check(bodies, 0.0);
        EXPECT_LE(r.threshold, delta_max(cfg).delta_max * (1.0 + 1e-12));
        EXPECT_TRUE(triple_empty(bodies, 0.999 * r.threshold));
      });
}

}  // namespace
}  // namespace depletion
