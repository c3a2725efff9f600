#pragma once

// Basic n-dimensional geometry: points, balls, half-spaces, triangles and the
// reduction of a ball triplet to the plane through its centers.

#include <Eigen/Dense>

#include <array>
#include <cstddef>

namespace depletion {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

// Geometric predicates compare against kDefaultTolerance times the largest
// radius involved.
inline constexpr double kDefaultTolerance = 1e-9;

// (2/sqrt(3) - 1): inner Soddy radius of three unit balls in mutual contact.
// Correctly rounded; evaluating the expression in double is 3 ulp low.
inline constexpr double kTripletFactor = 0.15470053837925152902;

// Infinite-radius limit of the same configuration with one ball replaced by a
// planar wall.
inline constexpr double kWallFactor = 0.25;

// Throws InputError unless n >= 2 and every coordinate is finite.
void validate_point(const Vec& x);

// Closed ball B(center, radius).
struct Ball {
  Vec center;
  double radius = 1.0;

  Ball() = default;
  Ball(Vec c, double r);

  [[nodiscard]] Eigen::Index dimension() const { return center.size(); }
};

// Closed half-space {x : x . normal <= offset}; the normal is stored with unit
// length.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;

  HalfSpace() = default;
  // Normalizes `n` (and rescales `c` accordingly).
  HalfSpace(const Vec& n, double c);

  [[nodiscard]] Eigen::Index dimension() const { return normal.size(); }
  // Signed distance: positive outside the half-space.
  [[nodiscard]] double signed_distance(const Vec& x) const {
    return x.dot(normal) - offset;
  }
};

double dist_point_ball(const Vec& x, const Ball& b);

// x in B(center, radius + delta). Closed set; throws on negative delta.
bool in_dilation(const Vec& x, const Ball& b, double delta);

struct TriangleGeometry {
  std::array<Vec, 3> corners;
  // side_lengths[i] is opposite corners[i].
  std::array<double, 3> side_lengths{};
  // angles[i] is the interior angle at corners[i], in radians.
  std::array<double, 3> angles{};
  bool collinear = false;
};

// Side lengths and interior angles (atan2 form, accurate near 0 and pi). The triangle is flagged
// collinear when twice its area is below 1e-9 * (longest side)^2; the angles
// are then (0, pi, 0) with pi at the corner between the other two.
TriangleGeometry triangle_from_centers(const Vec& r1, const Vec& r2, const Vec& r3);

// Cosine rule: side opposite an angle from the two adjacent sides.
double side_from_angle(double angle, double adjacent1, double adjacent2);

// Barycentric coordinates of p with respect to triangle (a, b, c) in 2D.
std::array<double, 3> barycentric(const Vec2& p, const Vec2& a, const Vec2& b,
                                  const Vec2& c);

// Three balls with pairwise disjoint interiors (contact allowed up to
// tolerance). Construction throws InputError naming the first overlapping pair.
class ConfigurationTriplet {
 public:
  ConfigurationTriplet(const Ball& b1, const Ball& b2, const Ball& b3,
                       double tol = kDefaultTolerance);
  explicit ConfigurationTriplet(const std::array<Ball, 3>& balls,
                                double tol = kDefaultTolerance);

  [[nodiscard]] const std::array<Ball, 3>& balls() const { return balls_; }
  [[nodiscard]] const Ball& operator[](std::size_t i) const { return balls_[i]; }
  [[nodiscard]] Eigen::Index dimension() const { return balls_[0].dimension(); }
  [[nodiscard]] double max_radius() const;
  [[nodiscard]] double min_radius() const;

 private:
  std::array<Ball, 3> balls_;
};

// Affine embedding of a plane: x = origin + basis * q for q in R^2. The two
// columns of `basis` are orthonormal.
struct PlaneEmbedding {
  Vec origin;
  Eigen::MatrixXd basis;

  [[nodiscard]] Vec lift(const Vec2& q) const { return origin + basis * q; }
  [[nodiscard]] Vec2 coordinates(const Vec& x) const {
    return basis.transpose() * (x - origin);
  }
  // Orthogonal projection of x onto the plane, in ambient coordinates.
  [[nodiscard]] Vec project(const Vec& x) const { return lift(coordinates(x)); }
};

struct PlaneReduction {
  std::array<Vec2, 3> centers;
  std::array<double, 3> radii{};
  PlaneEmbedding embedding;
};

// Plane through the three centers. In 2D this is the identity map. For
// collinear centers the plane is completed with the lowest-index canonical
// basis vector that is not parallel to the center line.
PlaneReduction reduce_to_plane(const ConfigurationTriplet& cfg);

// Completes `direction` (unit length) to an orthonormal pair using the first
// canonical basis vector that is far from parallel to it.
Vec complete_orthonormal(const Vec& direction);

}  // namespace depletion
