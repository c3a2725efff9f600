#include "depletion/geometry.hpp"

#include "depletion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace depletion {

void validate_point(const Vec& x) {
  if (x.size() < 2) {
    throw InputError("points need dimension >= 2, got " + std::to_string(x.size()));
  }
  if (!x.allFinite()) throw InputError("point has non-finite coordinates");
}

Ball::Ball(Vec c, double r) : center(std::move(c)), radius(r) {
  validate_point(center);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InputError("ball radius must be positive and finite, got " + std::to_string(r));
  }
}

HalfSpace::HalfSpace(const Vec& n, double c) {
  validate_point(n);
  const double len = n.norm();
  if (!(len > 0.0)) throw InputError("half-space normal must be nonzero");
  if (!std::isfinite(c)) throw InputError("half-space offset must be finite");
  // Already-unit normals are kept bit-for-bit so that re-normalizing a stored
  // half-space is the identity.
  const bool unit = std::abs(len - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon();
  normal = unit ? n : Vec(n / len);
  offset = unit ? c : c / len;
}

double dist_point_ball(const Vec& x, const Ball& b) {
  if (x.size() != b.dimension()) {
    throw InputError("dimension mismatch: point has " + std::to_string(x.size()) +
                     " coordinates, ball has " + std::to_string(b.dimension()));
  }
  return std::max((x - b.center).norm() - b.radius, 0.0);
}

bool in_dilation(const Vec& x, const Ball& b, double delta) {
  if (!(delta >= 0.0)) throw InputError("dilation radius must be nonnegative");
  return dist_point_ball(x, b) <= delta;
}

TriangleGeometry triangle_from_centers(const Vec& r1, const Vec& r2, const Vec& r3) {
  validate_point(r1);
  if (r2.size() != r1.size() || r3.size() != r1.size()) {
    throw InputError("triangle corners must share one dimension");
  }
  TriangleGeometry t;
  t.corners = {r1, r2, r3};
  t.side_lengths = {(r2 - r3).norm(), (r1 - r3).norm(), (r1 - r2).norm()};
  const double longest = *std::max_element(t.side_lengths.begin(), t.side_lengths.end());
  const double shortest = *std::min_element(t.side_lengths.begin(), t.side_lengths.end());
  if (!(shortest > 0.0)) throw InputError("triangle has coincident corners");

  // Twice the area from the Gram determinant of the two edge vectors.
  const Vec u = r2 - r1;
  const Vec v = r3 - r1;
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  const double twice_area = std::sqrt(std::max(uu * vv - uv * uv, 0.0));
  t.collinear = twice_area < 1e-9 * longest * longest;

  if (t.collinear) {
    const auto far = std::max_element(t.side_lengths.begin(), t.side_lengths.end()) -
                     t.side_lengths.begin();
    t.angles = {0.0, 0.0, 0.0};
    t.angles[static_cast<std::size_t>(far)] = std::numbers::pi;
    return t;
  }
  // Angle between u and v as 2 atan2(|u|v| - v|u||, |u|v| + v|u||), accurate
  // for angles near 0 and pi where arccos of the cosine rule is not.
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec a = t.corners[(i + 1) % 3] - t.corners[i];
    const Vec b = t.corners[(i + 2) % 3] - t.corners[i];
    const Vec an = a * b.norm();
    const Vec bn = b * a.norm();
    t.angles[i] = 2.0 * std::atan2((an - bn).norm(), (an + bn).norm());
  }
  return t;
}

double side_from_angle(double angle, double adjacent1, double adjacent2) {
  const double sq = adjacent1 * adjacent1 + adjacent2 * adjacent2 -
                    2.0 * adjacent1 * adjacent2 * std::cos(angle);
  return std::sqrt(std::max(sq, 0.0));
}

std::array<double, 3> barycentric(const Vec2& p, const Vec2& a, const Vec2& b,
                                  const Vec2& c) {
  auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
  const double total = cross(b - a, c - a);
  if (total == 0.0) throw DegenerateInputError("barycentric coordinates of a degenerate triangle");
  return {cross(b - p, c - p) / total, cross(c - p, a - p) / total,
          cross(a - p, b - p) / total};
}

ConfigurationTriplet::ConfigurationTriplet(const Ball& b1, const Ball& b2, const Ball& b3,
                                           double tol)
    : ConfigurationTriplet(std::array<Ball, 3>{b1, b2, b3}, tol) {}

ConfigurationTriplet::ConfigurationTriplet(const std::array<Ball, 3>& balls, double tol)
    : balls_(balls) {
  for (const auto& b : balls_) {
    if (b.dimension() < 2) throw InputError("ball has dimension < 2");
    if (b.dimension() != balls_[0].dimension()) {
      throw InputError("balls of a configuration must share one dimension");
    }
  }
  const double scale = tol * max_radius();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double gap = (balls_[i].center - balls_[j].center).norm() - balls_[i].radius -
                         balls_[j].radius;
      if (gap < -scale) {
        throw InputError("balls " + std::to_string(i) + " and " + std::to_string(j) +
                         " overlap (gap " + std::to_string(gap) + ")");
      }
    }
  }
}

double ConfigurationTriplet::max_radius() const {
  return std::max({balls_[0].radius, balls_[1].radius, balls_[2].radius});
}

double ConfigurationTriplet::min_radius() const {
  return std::min({balls_[0].radius, balls_[1].radius, balls_[2].radius});
}

Vec complete_orthonormal(const Vec& direction) {
  const Eigen::Index n = direction.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    Vec residual = e - direction[k] * direction;
    const double len = residual.norm();
    if (len > 0.5) return residual / len;
  }
  // Unreachable for a unit direction: some canonical vector has residual
  // length >= sqrt((n-1)/n) >= 0.7.
  throw NumericalError("failed to complete an orthonormal basis");
}

PlaneReduction reduce_to_plane(const ConfigurationTriplet& cfg) {
  PlaneReduction out;
  const Eigen::Index n = cfg.dimension();
  for (std::size_t i = 0; i < 3; ++i) out.radii[i] = cfg[i].radius;

  if (n == 2) {
    out.embedding.origin = Vec::Zero(2);
    out.embedding.basis = Eigen::MatrixXd::Identity(2, 2);
    for (std::size_t i = 0; i < 3; ++i) out.centers[i] = cfg[i].center;
    return out;
  }

  const Vec& r1 = cfg[0].center;
  const Vec d2 = cfg[1].center - r1;
  const Vec e1 = d2 / d2.norm();
  Vec d3 = cfg[2].center - r1;
  Vec w = d3 - d3.dot(e1) * e1;
  // Same collinearity threshold as triangle_from_centers.
  const double longest = std::max({d2.norm(), d3.norm(), (cfg[2].center - cfg[1].center).norm()});
  Vec e2;
  if (w.norm() * d2.norm() < 1e-9 * longest * longest) {
    e2 = complete_orthonormal(e1);
  } else {
    // Second Gram-Schmidt pass keeps e2 orthogonal to working precision.
    e2 = w / w.norm();
    e2 -= e2.dot(e1) * e1;
    e2.normalize();
  }
  out.embedding.origin = r1;
  out.embedding.basis.resize(n, 2);
  out.embedding.basis.col(0) = e1;
  out.embedding.basis.col(1) = e2;
  for (std::size_t i = 0; i < 3; ++i) {
    out.centers[i] = out.embedding.coordinates(cfg[i].center);
  }
  return out;
}

}  // namespace depletion
