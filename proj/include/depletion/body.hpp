#pragma once

// Convex bodies with signed distance, rolling radius and boundary sampling.

#include "depletion/geometry.hpp"

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace depletion {

// Ellipse (n = 2) or ellipsoid (n = 3). Semi-axes are stored in descending
// order; column k of `axes` is the unit direction of semi_axes[k].
struct Ellipsoid {
  Vec center;
  Vec semi_axes;
  Eigen::MatrixXd axes;

  Ellipsoid() = default;
  Ellipsoid(Vec c, Vec semi, Eigen::MatrixXd directions);
  static Ellipsoid planar(const Vec2& c, double a, double b, double angle);

  [[nodiscard]] Eigen::Index dimension() const { return center.size(); }
};

// Strictly convex 2D polygon with counterclockwise vertices.
struct ConvexPolygon {
  std::vector<Vec2> vertices;

  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Vec2> v);
};

// Union of all disks of radius `radius` contained in `polygon`: the inner
// parallel polygon (the core) dilated by `radius`.
struct RoundedPolygon {
  ConvexPolygon polygon;
  double radius = 0.0;
  // Core vertices, counterclockwise; one or two vertices when the rounding
  // radius equals the polygon's inradius.
  std::vector<Vec2> core;

  RoundedPolygon() = default;
  RoundedPolygon(ConvexPolygon p, double rho);
};

using ConvexBody = std::variant<Ball, HalfSpace, Ellipsoid, ConvexPolygon, RoundedPolygon>;

struct BoundarySample {
  Vec point;
  Vec normal;  // outward unit normal
};

struct Box {
  Vec lower;
  Vec upper;
};

std::string_view type_name(const ConvexBody& body);
Eigen::Index dimension(const ConvexBody& body);
bool is_compact(const ConvexBody& body);

// Negative inside, zero on the boundary, Euclidean distance outside.
double signed_distance(const ConvexBody& body, const Vec& x);
// dist(x, C) = max(signed_distance, 0).
double distance(const ConvexBody& body, const Vec& x);

// +inf for a half-space.
double rolling_radius(const ConvexBody& body);

// Axis-aligned box of C(delta). CapabilityError for a half-space.
Box bounding_box(const ConvexBody& body, double delta = 0.0);

// Boundary points with outward normals. Corners contribute a fan of normals
// spanning their normal cone, so {y + t * nu} samples the boundary of C(t).
// Default count: 4096 in 2D, 16384 in 3D.
std::vector<BoundarySample> boundary_samples(const ConvexBody& body, std::size_t count = 0);

std::size_t default_sample_count(Eigen::Index dimension);

// Characteristic length used to scale absolute tolerances: the radius for a
// ball, the largest semi-axis, half the polygon diameter; 1 for a half-space.
double length_scale(const ConvexBody& body);

}  // namespace depletion
