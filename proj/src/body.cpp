#include "depletion/body.hpp"

#include "depletion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace depletion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double cross(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

Vec2 outward_normal(const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  return Vec2(d.y(), -d.x()) / d.norm();
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + s * d)).norm();
}

// Signed distance to the convex hull of 1, 2 or >= 3 counterclockwise points.
double hull_signed_distance(const std::vector<Vec2>& v, const Vec2& p) {
  if (v.size() == 1) return (p - v[0]).norm();
  if (v.size() == 2) return segment_distance(p, v[0], v[1]);
  double inside = -kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    inside = std::max(inside, outward_normal(a, b).dot(p - a));
  }
  if (inside <= 0.0) return inside;
  double best = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

// Edge points plus vertex fans of the hull, offset outward by `offset`.
std::vector<BoundarySample> hull_samples(const std::vector<Vec2>& v, double offset,
                                         std::size_t count) {
  std::vector<BoundarySample> out;
  out.reserve(count + 2 * v.size());
  auto push = [&](const Vec2& y, const Vec2& nu) {
    out.push_back({Vec(y + offset * nu), Vec(nu)});
  };
  if (v.size() == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(count);
      push(v[0], Vec2(std::cos(th), std::sin(th)));
    }
    return out;
  }
  const std::size_t m = v.size() == 2 ? 2 : v.size();
  double perimeter = 0.0;
  for (std::size_t i = 0; i < m; ++i) perimeter += (v[(i + 1) % v.size()] - v[i]).norm();
  const std::size_t edge_budget = count / 2;
  const std::size_t fan_budget = count - edge_budget;

  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    const Vec2 nu = outward_normal(a, b);
    const auto pts = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(edge_budget * (b - a).norm() / perimeter)));
    for (std::size_t k = 0; k < pts; ++k) {
      const double s = (static_cast<double>(k) + 0.5) / static_cast<double>(pts);
      push(a + s * (b - a), nu);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& prev = v[(i + m - 1) % m];
    const Vec2& here = v[i];
    const Vec2& next = v[(i + 1) % m];
    const Vec2 n_in = outward_normal(prev, here);
    const Vec2 n_out = outward_normal(here, next);
    const double th0 = std::atan2(n_in.y(), n_in.x());
    double turn = std::atan2(n_out.y(), n_out.x()) - th0;
    while (turn <= 0.0) turn += kTwoPi;
    const auto pts = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(fan_budget * turn / kTwoPi)));
    for (std::size_t k = 0; k < pts; ++k) {
      const double th = th0 + turn * static_cast<double>(k) / static_cast<double>(pts - 1);
      push(here, Vec2(std::cos(th), std::sin(th)));
    }
  }
  return out;
}

// Points of the unit sphere on a Fibonacci lattice.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t count) {
  std::vector<Eigen::Vector3d> out(count);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(k);
    out[k] = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

std::vector<Vec> unit_directions(Eigen::Index n, std::size_t count) {
  std::vector<Vec> out;
  out.reserve(count);
  if (n == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(count);
      out.emplace_back(Vec2(std::cos(th), std::sin(th)));
    }
  } else if (n == 3) {
    for (const auto& u : fibonacci_sphere(count)) out.emplace_back(u);
  } else {
    throw CapabilityError("boundary sampling supports dimensions 2 and 3");
  }
  return out;
}

// Eberly's bisection for the root of the secular equation, 2D and 3D.
double robust_length(double a, double b, double c = 0.0) {
  const double m = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (m == 0.0) return 0.0;
  return m * std::sqrt((a / m) * (a / m) + (b / m) * (b / m) + (c / m) * (c / m));
}

double secular_root2(double r0, double z0, double z1, double g) {
  const double n0 = r0 * z0;
  double s0 = z1 - 1.0;
  double s1 = g < 0.0 ? 0.0 : robust_length(n0, z1) - 1.0;
  double s = 0.0;
  for (int i = 0; i < 1100; ++i) {
    s = 0.5 * (s0 + s1);
    if (s == s0 || s == s1) break;
    const double a = n0 / (s + r0);
    const double b = z1 / (s + 1.0);
    const double val = a * a + b * b - 1.0;
    if (val > 0.0) {
      s0 = s;
    } else if (val < 0.0) {
      s1 = s;
    } else {
      break;
    }
  }
  return s;
}

double secular_root3(double r0, double r1, double z0, double z1, double z2, double g) {
  const double n0 = r0 * z0;
  const double n1 = r1 * z1;
  double s0 = z2 - 1.0;
  double s1 = g < 0.0 ? 0.0 : robust_length(n0, n1, z2) - 1.0;
  double s = 0.0;
  for (int i = 0; i < 1100; ++i) {
    s = 0.5 * (s0 + s1);
    if (s == s0 || s == s1) break;
    const double a = n0 / (s + r0);
    const double b = n1 / (s + r1);
    const double c = z2 / (s + 1.0);
    const double val = a * a + b * b + c * c - 1.0;
    if (val > 0.0) {
      s0 = s;
    } else if (val < 0.0) {
      s1 = s;
    } else {
      break;
    }
  }
  return s;
}

// Distance from (y0, y1), y >= 0, to the ellipse with semi-axes e0 >= e1.
double ellipse_boundary_distance(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g == 0.0) return 0.0;
      const double r0 = (e0 / e1) * (e0 / e1);
      const double s = secular_root2(r0, z0, z1, g);
      const double x0 = r0 * y0 / (s + r0);
      const double x1 = y1 / (s + 1.0);
      return std::hypot(x0 - y0, x1 - y1);
    }
    return std::abs(y1 - e1);
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    const double x0 = e0 * xde0;
    const double x1 = e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0));
    return std::hypot(x0 - y0, x1);
  }
  return std::abs(y0 - e0);
}

double ellipsoid_boundary_distance(double e0, double e1, double e2, double y0, double y1,
                                   double y2) {
  if (y2 > 0.0) {
    if (y1 > 0.0) {
      if (y0 > 0.0) {
        const double z0 = y0 / e0;
        const double z1 = y1 / e1;
        const double z2 = y2 / e2;
        const double g = z0 * z0 + z1 * z1 + z2 * z2 - 1.0;
        if (g == 0.0) return 0.0;
        const double r0 = (e0 / e2) * (e0 / e2);
        const double r1 = (e1 / e2) * (e1 / e2);
        const double s = secular_root3(r0, r1, z0, z1, z2, g);
        const double x0 = r0 * y0 / (s + r0);
        const double x1 = r1 * y1 / (s + r1);
        const double x2 = y2 / (s + 1.0);
        return robust_length(x0 - y0, x1 - y1, x2 - y2);
      }
      return ellipse_boundary_distance(e1, e2, y1, y2);
    }
    if (y0 > 0.0) return ellipse_boundary_distance(e0, e2, y0, y2);
    return std::abs(y2 - e2);
  }
  const double denom0 = e0 * e0 - e2 * e2;
  const double denom1 = e1 * e1 - e2 * e2;
  const double numer0 = e0 * y0;
  const double numer1 = e1 * y1;
  if (numer0 < denom0 && numer1 < denom1) {
    const double xde0 = numer0 / denom0;
    const double xde1 = numer1 / denom1;
    const double discr = 1.0 - xde0 * xde0 - xde1 * xde1;
    if (discr > 0.0) {
      const double x0 = e0 * xde0;
      const double x1 = e1 * xde1;
      const double x2 = e2 * std::sqrt(discr);
      return robust_length(x0 - y0, x1 - y1, x2);
    }
  }
  return ellipse_boundary_distance(e0, e1, y0, y1);
}

double ellipsoid_signed_distance(const Ellipsoid& e, const Vec& x) {
  const Vec y = (e.axes.transpose() * (x - e.center)).cwiseAbs();
  const Vec& a = e.semi_axes;
  const double level = (y.array() / a.array()).square().sum();
  const double d = e.dimension() == 2
                       ? ellipse_boundary_distance(a[0], a[1], y[0], y[1])
                       : ellipsoid_boundary_distance(a[0], a[1], a[2], y[0], y[1], y[2]);
  return level < 1.0 ? -d : d;
}

Vec2 as_vec2(const Vec& x) { return Vec2(x[0], x[1]); }

void check_point_dimension(const ConvexBody& body, const Vec& x) {
  if (x.size() != dimension(body)) {
    throw InputError("dimension mismatch: point has " + std::to_string(x.size()) +
                     " coordinates, body has " + std::to_string(dimension(body)));
  }
}

std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Vec2& n, double c) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const double fa = n.dot(a) - c;
    const double fb = n.dot(b) - c;
    if (fa <= 0.0) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      out.push_back(a + (fa / (fa - fb)) * (b - a));
    }
  }
  return out;
}

double polygon_diameter(const std::vector<Vec2>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, (v[i] - v[j]).norm());
  }
  return d;
}

// Inner parallel polygon at distance rho; collapses to a segment or a point
// when rho reaches the inradius.
std::vector<Vec2> inset_polygon(const std::vector<Vec2>& v, double rho) {
  const double scale = polygon_diameter(v);
  auto clip_all = [&](double slack) {
    std::vector<Vec2> core = v;
    for (std::size_t i = 0; i < v.size() && !core.empty(); ++i) {
      const Vec2& a = v[i];
      const Vec2& b = v[(i + 1) % v.size()];
      const Vec2 n = outward_normal(a, b);
      core = clip(core, n, n.dot(a) - rho + slack);
    }
    return core;
  };
  std::vector<Vec2> core = clip_all(0.0);
  // rho at the inradius can lose the last point to rounding.
  if (core.empty()) core = clip_all(1e-12 * scale);
  if (core.empty()) {
    throw InputError("rounding radius " + std::to_string(rho) + " exceeds the polygon inradius");
  }
  std::vector<Vec2> dedup;
  for (const auto& p : core) {
    if (dedup.empty() || (p - dedup.back()).norm() > 1e-9 * scale) dedup.push_back(p);
  }
  while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= 1e-9 * scale) {
    dedup.pop_back();
  }
  double area2 = 0.0;
  for (std::size_t i = 0; i < dedup.size(); ++i) {
    area2 += cross(dedup[i], dedup[(i + 1) % dedup.size()]);
  }
  if (dedup.size() >= 3 && area2 > 1e-9 * scale * scale) {
    std::vector<Vec2> strict;
    for (std::size_t i = 0; i < dedup.size(); ++i) {
      const Vec2& p = dedup[(i + dedup.size() - 1) % dedup.size()];
      const Vec2& q = dedup[i];
      const Vec2& r = dedup[(i + 1) % dedup.size()];
      if (cross(q - p, r - q) > 1e-12 * scale * scale) strict.push_back(q);
    }
    return strict;
  }
  // Degenerate core: keep the two farthest points (or one).
  std::size_t bi = 0;
  std::size_t bj = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < dedup.size(); ++i) {
    for (std::size_t j = i + 1; j < dedup.size(); ++j) {
      const double d = (dedup[i] - dedup[j]).norm();
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (best <= 1e-9 * scale) return {dedup[0]};
  return {dedup[bi], dedup[bj]};
}

}  // namespace

Ellipsoid::Ellipsoid(Vec c, Vec semi, Eigen::MatrixXd directions) {
  validate_point(c);
  const Eigen::Index n = c.size();
  if (n != 2 && n != 3) throw CapabilityError("ellipsoids are supported in 2D and 3D only");
  if (semi.size() != n || directions.rows() != n || directions.cols() != n) {
    throw InputError("ellipsoid semi-axes and axes must match the center dimension");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(semi[k] > 0.0) || !std::isfinite(semi[k])) {
      throw InputError("ellipsoid semi-axes must be positive and finite");
    }
  }
  const double defect =
      (directions.transpose() * directions - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-9)) throw InputError("ellipsoid axes must be orthonormal");

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return semi[a] > semi[b]; });
  center = std::move(c);
  semi_axes.resize(n);
  axes.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    semi_axes[k] = semi[idx[static_cast<std::size_t>(k)]];
    axes.col(k) = directions.col(idx[static_cast<std::size_t>(k)]);
  }
}

Ellipsoid Ellipsoid::planar(const Vec2& c, double a, double b, double angle) {
  Eigen::MatrixXd dirs(2, 2);
  dirs << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return Ellipsoid(Vec(c), Vec(Vec2(a, b)), dirs);
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> v) : vertices(std::move(v)) {
  const std::size_t m = vertices.size();
  if (m < 3) throw InputError("a polygon needs at least three vertices");
  for (const auto& p : vertices) {
    if (!p.allFinite()) throw InputError("polygon vertex has non-finite coordinates");
  }
  const double scale = polygon_diameter(vertices);
  double turning = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 e0 = vertices[(i + 1) % m] - vertices[i];
    const Vec2 e1 = vertices[(i + 2) % m] - vertices[(i + 1) % m];
    if (!(cross(e0, e1) > 1e-12 * scale * scale)) {
      throw InputError("polygon vertices must be strictly convex and counterclockwise");
    }
    turning += std::atan2(cross(e0, e1), e0.dot(e1));
  }
  if (std::abs(turning - kTwoPi) > 1e-6) {
    throw InputError("polygon boundary winds more than once");
  }
}

RoundedPolygon::RoundedPolygon(ConvexPolygon p, double rho) : polygon(std::move(p)), radius(rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InputError("rounding radius must be positive and finite");
  }
  core = inset_polygon(polygon.vertices, rho);
}

std::string_view type_name(const ConvexBody& body) {
  return std::visit(Overloaded{[](const Ball&) { return std::string_view("ball"); },
                               [](const HalfSpace&) { return std::string_view("halfspace"); },
                               [](const Ellipsoid& e) {
                                 return e.dimension() == 2 ? std::string_view("ellipse")
                                                           : std::string_view("ellipsoid");
                               },
                               [](const ConvexPolygon&) { return std::string_view("polygon"); },
                               [](const RoundedPolygon&) {
                                 return std::string_view("rounded_polygon");
                               }},
                    body);
}

Eigen::Index dimension(const ConvexBody& body) {
  return std::visit(Overloaded{[](const Ball& b) { return b.dimension(); },
                               [](const HalfSpace& h) { return h.dimension(); },
                               [](const Ellipsoid& e) { return e.dimension(); },
                               [](const ConvexPolygon&) { return Eigen::Index{2}; },
                               [](const RoundedPolygon&) { return Eigen::Index{2}; }},
                    body);
}

bool is_compact(const ConvexBody& body) { return !std::holds_alternative<HalfSpace>(body); }

double signed_distance(const ConvexBody& body, const Vec& x) {
  check_point_dimension(body, x);
  return std::visit(
      Overloaded{[&](const Ball& b) { return (x - b.center).norm() - b.radius; },
                 [&](const HalfSpace& h) { return h.signed_distance(x); },
                 [&](const Ellipsoid& e) { return ellipsoid_signed_distance(e, x); },
                 [&](const ConvexPolygon& p) { return hull_signed_distance(p.vertices, as_vec2(x)); },
                 [&](const RoundedPolygon& p) {
                   return hull_signed_distance(p.core, as_vec2(x)) - p.radius;
                 }},
      body);
}

double distance(const ConvexBody& body, const Vec& x) {
  return std::max(signed_distance(body, x), 0.0);
}

double rolling_radius(const ConvexBody& body) {
  return std::visit(Overloaded{[](const Ball& b) { return b.radius; },
                               [](const HalfSpace&) { return kInf; },
                               [](const Ellipsoid& e) {
                                 const double lo = e.semi_axes.minCoeff();
                                 return lo * lo / e.semi_axes.maxCoeff();
                               },
                               [](const ConvexPolygon&) { return 0.0; },
                               [](const RoundedPolygon& p) { return p.radius; }},
                    body);
}

Box bounding_box(const ConvexBody& body, double delta) {
  if (!(delta >= 0.0)) throw InputError("dilation radius must be nonnegative");
  auto hull_box = [&](const std::vector<Vec2>& v, double pad) {
    Vec2 lo = v[0];
    Vec2 hi = v[0];
    for (const auto& p : v) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    return Box{Vec(lo.array() - pad), Vec(hi.array() + pad)};
  };
  return std::visit(
      Overloaded{[&](const Ball& b) {
                   return Box{Vec(b.center.array() - (b.radius + delta)),
                              Vec(b.center.array() + (b.radius + delta))};
                 },
                 [&](const HalfSpace&) -> Box {
                   throw CapabilityError("a half-space has no bounding box");
                 },
                 [&](const Ellipsoid& e) {
                   const Vec half =
                       (e.axes * e.semi_axes.asDiagonal()).rowwise().norm().array() + delta;
                   return Box{Vec(e.center - half), Vec(e.center + half)};
                 },
                 [&](const ConvexPolygon& p) { return hull_box(p.vertices, delta); },
                 [&](const RoundedPolygon& p) { return hull_box(p.core, p.radius + delta); }},
      body);
}

std::size_t default_sample_count(Eigen::Index n) { return n == 2 ? 4096 : 16384; }

std::vector<BoundarySample> boundary_samples(const ConvexBody& body, std::size_t count) {
  const Eigen::Index n = dimension(body);
  if (count == 0) count = default_sample_count(n);
  return std::visit(
      Overloaded{
          [&](const Ball& b) {
            std::vector<BoundarySample> out;
            for (const auto& u : unit_directions(n, count)) {
              out.push_back({b.center + b.radius * u, u});
            }
            return out;
          },
          [&](const HalfSpace&) -> std::vector<BoundarySample> {
            throw CapabilityError("cannot sample the unbounded boundary of a half-space");
          },
          [&](const Ellipsoid& e) {
            std::vector<BoundarySample> out;
            for (const auto& u : unit_directions(n, count)) {
              const Vec point = e.center + e.axes * e.semi_axes.cwiseProduct(u);
              const Vec normal = (e.axes * u.cwiseQuotient(e.semi_axes)).normalized();
              out.push_back({point, normal});
            }
            return out;
          },
          [&](const ConvexPolygon& p) { return hull_samples(p.vertices, 0.0, count); },
          [&](const RoundedPolygon& p) { return hull_samples(p.core, p.radius, count); }},
      body);
}

double length_scale(const ConvexBody& body) {
  return std::visit(Overloaded{[](const Ball& b) { return b.radius; },
                               [](const HalfSpace&) { return 1.0; },
                               [](const Ellipsoid& e) { return e.semi_axes.maxCoeff(); },
                               [](const ConvexPolygon& p) {
                                 return 0.5 * polygon_diameter(p.vertices);
                               },
                               [](const RoundedPolygon& p) {
                                 return 0.5 * polygon_diameter(p.polygon.vertices);
                               }},
                    body);
}

}  // namespace depletion
