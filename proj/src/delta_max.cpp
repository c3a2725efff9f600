#include "depletion/delta_max.hpp"

#include "depletion/errors.hpp"
#include "quadratic.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>

namespace depletion {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::BoundaryContact:
      return "BoundaryContact";
    case CaseTag::ApolloniusInterior:
      return "ApolloniusInterior";
  }
  return "?";
}

namespace {

double cross(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

double angle_between(const Vec2& u, const Vec2& v) {
  return std::atan2(std::abs(cross(u, v)), u.dot(v));
}

double max_of(const std::array<double, 3>& r) { return std::max({r[0], r[1], r[2]}); }

PairwiseThresholds planar_thresholds(const std::array<Vec2, 3>& c,
                                     const std::array<double, 3>& r, double tol) {
  PairwiseThresholds t;
  const double scale = tol * max_of(r);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    const std::size_t k = (i + 2) % 3;
    const double gap = (c[j] - c[k]).norm() - r[j] - r[k];
    if (gap < -scale) {
      throw InputError("balls " + std::to_string(std::min(j, k)) + " and " +
                       std::to_string(std::max(j, k)) + " overlap");
    }
    t.delta[i] = gap < scale ? 0.0 : 0.5 * gap;
  }
  std::stable_sort(t.order.begin(), t.order.end(),
                   [&](std::size_t a, std::size_t b) { return t.delta[a] < t.delta[b]; });
  return t;
}

bool planar_collinear(const std::array<Vec2, 3>& c) {
  const double longest =
      std::max({(c[0] - c[1]).norm(), (c[0] - c[2]).norm(), (c[1] - c[2]).norm()});
  return std::abs(cross(c[1] - c[0], c[2] - c[0])) < 1e-9 * longest * longest;
}

// Exact answer for collinear centers: the minimum of max_i(|x - r_i| - R_i) is
// attained on the center line (the objective is convex and symmetric under
// reflection through the line), where the dilations are intervals and
// pairwise intersection implies common intersection.
struct LineResult {
  double delta = 0.0;
  Vec2 point;
};

LineResult collinear_minimax(const std::array<Vec2, 3>& c, const std::array<double, 3>& r) {
  std::size_t a = 0;
  std::size_t b = 1;
  double longest = -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double d = (c[i] - c[j]).norm();
      if (d > longest) {
        longest = d;
        a = i;
        b = j;
      }
    }
  }
  const Vec2 u = (c[b] - c[a]) / longest;
  std::array<double, 3> s{};
  for (std::size_t i = 0; i < 3; ++i) s[i] = (c[i] - c[a]).dot(u);

  double delta = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) delta = std::max(delta, 0.5 * ((s[i] - r[i]) - (s[j] + r[j])));
    }
  }
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    lower = std::max(lower, s[i] - r[i] - delta);
    upper = std::min(upper, s[i] + r[i] + delta);
  }
  return {delta, c[a] + 0.5 * (lower + upper) * u};
}

// Newton refinement of |p - c_i| - (R_i + s_i t) = 0. Keeps the input when an
// iterate does not reduce the residual.
void polish_apollonius(const std::array<Vec2, 3>& c, const std::array<double, 3>& r,
                       const std::array<int, 3>& s, Vec2& p, double& t) {
  auto residual = [&](const Vec2& q, double tt) {
    Eigen::Vector3d f;
    for (std::size_t i = 0; i < 3; ++i) f[i] = (q - c[i]).norm() - (r[i] + s[i] * tt);
    return f;
  };
  Eigen::Vector3d f = residual(p, t);
  for (int iter = 0; iter < 4; ++iter) {
    Eigen::Matrix3d jac;
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec2 d = p - c[i];
      const double len = d.norm();
      if (len == 0.0) return;
      jac(i, 0) = d.x() / len;
      jac(i, 1) = d.y() / len;
      jac(i, 2) = -s[i];
    }
    const Eigen::Vector3d step = jac.fullPivLu().solve(f);
    if (!step.allFinite()) return;
    const Vec2 p_new = p - step.head<2>();
    const double t_new = t - step[2];
    const Eigen::Vector3d f_new = residual(p_new, t_new);
    if (!(f_new.cwiseAbs().maxCoeff() < f.cwiseAbs().maxCoeff())) return;
    p = p_new;
    t = t_new;
    f = f_new;
  }
}

std::vector<ApolloniusSolution> solve_apollonius_planar(const std::array<Vec2, 3>& c,
                                                        const std::array<double, 3>& r,
                                                        const std::array<int, 3>& s) {
  if (planar_collinear(c)) {
    throw DegenerateInputError(
        "Apollonius system is singular for collinear centers; use the collinear path");
  }
  // Shift so that c[0] is the origin; subtracting the first tangency equation
  // from the other two gives A p = k + t m.
  const Vec2 c1 = c[1] - c[0];
  const Vec2 c2 = c[2] - c[0];
  Eigen::Matrix2d a;
  a.row(0) = 2.0 * c1.transpose();
  a.row(1) = 2.0 * c2.transpose();
  const Vec2 k(c1.squaredNorm() + r[0] * r[0] - r[1] * r[1],
               c2.squaredNorm() + r[0] * r[0] - r[2] * r[2]);
  const Vec2 m(2.0 * (s[0] * r[0] - s[1] * r[1]), 2.0 * (s[0] * r[0] - s[2] * r[2]));
  const Eigen::Matrix2d a_inv = a.inverse();
  const Vec2 p0 = a_inv * k;
  const Vec2 dp = a_inv * m;

  // |p0 + t dp|^2 = (R_0 + s_0 t)^2
  const double qa = dp.squaredNorm() - 1.0;
  const double qb = 2.0 * (p0.dot(dp) - s[0] * r[0]);
  const double qc = p0.squaredNorm() - r[0] * r[0];

  std::vector<ApolloniusSolution> out;
  for (double t : detail::real_roots(qa, qb, qc)) {
    if (!(t > 0.0)) continue;
    Vec2 p = p0 + t * dp + c[0];
    polish_apollonius(c, r, s, p, t);
    bool valid = t > 0.0;
    for (std::size_t i = 0; i < 3; ++i) valid = valid && (r[i] + s[i] * t > 0.0);
    if (!valid) continue;
    out.push_back({p, t, s});
  }
  std::sort(out.begin(), out.end(),
            [](const ApolloniusSolution& x, const ApolloniusSolution& y) {
              return x.radius < y.radius;
            });
  return out;
}

std::array<std::size_t, 2> pair_of(std::size_t corner) {
  switch (corner) {
    case 0:
      return {1, 2};
    case 1:
      return {0, 2};
    default:
      return {0, 1};
  }
}

}  // namespace

PairwiseThresholds pairwise_thresholds(const ConfigurationTriplet& cfg, double tol) {
  std::array<Vec2, 3> c;
  std::array<double, 3> r{};
  if (cfg.dimension() == 2) {
    for (std::size_t i = 0; i < 3; ++i) c[i] = cfg[i].center;
  } else {
    c = reduce_to_plane(cfg).centers;
  }
  for (std::size_t i = 0; i < 3; ++i) r[i] = cfg[i].radius;
  return planar_thresholds(c, r, tol);
}

double descartes_contact_radius(double r1, double r2, double r3) {
  for (double r : {r1, r2, r3}) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InputError("contact radii must be positive and finite");
    }
  }
  const double k = 1.0 / r1 + 1.0 / r2 + 1.0 / r3;
  const double root = std::sqrt(1.0 / (r1 * r2) + 1.0 / (r2 * r3) + 1.0 / (r1 * r3));
  return 1.0 / (k + 2.0 * root);
}

std::vector<ApolloniusSolution> apollonius_solve(const ConfigurationTriplet& cfg,
                                                 std::array<int, 3> signs) {
  if (cfg.dimension() != 2) {
    throw CapabilityError("apollonius_solve expects a 2D configuration; reduce_to_plane first");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw InputError("tangency signs must be +1 or -1");
  }
  std::array<Vec2, 3> c;
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) {
    c[i] = cfg[i].center;
    r[i] = cfg[i].radius;
  }
  return solve_apollonius_planar(c, r, signs);
}

std::vector<ApolloniusSolution> apollonius_solve_all(const ConfigurationTriplet& cfg) {
  std::vector<ApolloniusSolution> out;
  for (int mask = 0; mask < 8; ++mask) {
    const std::array<int, 3> signs{(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1,
                                   (mask & 4) ? -1 : 1};
    auto part = apollonius_solve(cfg, signs);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

DeltaMaxResult delta_max_planar(const std::array<Vec2, 3>& c,
                                const std::array<double, 3>& r, double tol) {
  const double scale = max_of(r);
  const double tol_abs = tol * scale;
  const PairwiseThresholds th = planar_thresholds(c, r, tol);
  const double largest = th.largest();

  DeltaMaxResult res;
  res.witness_point = Vec::Zero(2);

  if (planar_collinear(c)) {
    const LineResult line = collinear_minimax(c, r);
    res.delta_max = line.delta;
    res.witness_point = line.point;
    res.case_tag = CaseTag::BoundaryContact;
    res.degenerate = true;
    return res;
  }

  // Boundary contact: candidates realizing the largest threshold, visited in
  // lexicographic order of their ball pair: (0,1), (0,2), (1,2).
  for (std::size_t corner : {std::size_t{2}, std::size_t{1}, std::size_t{0}}) {
    if (th.delta[corner] < largest - tol_abs) continue;
    const auto [j, k] = pair_of(corner);
    const Vec2 u = (c[k] - c[j]).normalized();
    const Vec2 p = c[j] + (r[j] + th.delta[corner]) * u;
    if ((p - c[corner]).norm() <= r[corner] + largest + tol_abs) {
      res.delta_max = largest;
      res.witness_point = p;
      res.case_tag = CaseTag::BoundaryContact;
      return res;
    }
  }

  // Interior case: the externally tangent circle centered inside the triangle.
  const auto candidates = solve_apollonius_planar(c, r, {1, 1, 1});
  for (const auto& sol : candidates) {
    if (sol.radius < largest - tol_abs) continue;
    const auto bary = barycentric(sol.center, c[0], c[1], c[2]);
    if (std::min({bary[0], bary[1], bary[2]}) < -1e-9) continue;
    res.delta_max = sol.radius;
    res.witness_point = sol.center;
    res.case_tag = CaseTag::ApolloniusInterior;
    res.apollonius_radius = sol.radius;
    return res;
  }
  throw NumericalError(
      "no pairwise contact point lies in the third dilation and no externally tangent "
      "circle is centered inside the triangle");
}

DeltaMaxResult delta_max(const ConfigurationTriplet& cfg, double tol) {
  const PlaneReduction plane = reduce_to_plane(cfg);
  DeltaMaxResult res = delta_max_planar(plane.centers, plane.radii, tol);
  res.witness_point = plane.embedding.lift(Vec2(res.witness_point));
  return res;
}

double split_angle_sum(const PlaneReduction& plane, std::size_t corner, double t) {
  const auto& c = plane.centers;
  const auto& r = plane.radii;
  const std::size_t i = corner;
  double total = 0.0;
  for (std::size_t j : {(i + 1) % 3, (i + 2) % 3}) {
    const double l = (c[i] - c[j]).norm();
    const double ri = r[i] + t;
    const double rj = r[j] + t;
    const double cosine = (l * l + ri * ri - rj * rj) / (2.0 * l * ri);
    if (cosine > 1.0 + 1e-9 || cosine < -1.0 - 1e-9) {
      throw NumericalError("cosine-rule argument " + std::to_string(cosine) +
                           " outside [-1, 1]: shell radius below the pairwise threshold");
    }
    total += std::acos(std::clamp(cosine, -1.0, 1.0));
  }
  return total;
}

double delta_star_by_bisection(const ConfigurationTriplet& cfg,
                               std::pair<double, double> bracket) {
  const PlaneReduction plane = reduce_to_plane(cfg);
  const PairwiseThresholds th = planar_thresholds(plane.centers, plane.radii, kDefaultTolerance);
  const std::size_t corner = th.order[0];
  const auto tri = triangle_from_centers(Vec(plane.centers[0]), Vec(plane.centers[1]),
                                         Vec(plane.centers[2]));
  if (tri.collinear) throw DegenerateInputError("bisection requires non-collinear centers");
  const double target = tri.angles[corner];
  auto f = [&](double t) { return split_angle_sum(plane, corner, t) - target; };

  double lo = bracket.first;
  double hi = bracket.second;
  if (!(hi > lo)) throw InputError("bisection bracket must satisfy lo < hi");
  if (f(lo) >= 0.0) return lo;
  int expansions = 0;
  while (f(hi) < 0.0) {
    if (++expansions > 64) {
      throw NumericalError("failed to bracket the Apollonius radius by bisection");
    }
    hi = lo + 2.0 * (hi - lo);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double delta_star_by_bisection(const ConfigurationTriplet& cfg) {
  const PairwiseThresholds th = pairwise_thresholds(cfg);
  const double lo = th.largest();
  return delta_star_by_bisection(cfg, {lo, lo + cfg.max_radius()});
}

AngleSplit angle_split(const PlaneReduction& plane, const Vec2& p, std::size_t corner) {
  const auto& c = plane.centers;
  AngleSplit a;
  a.corner = corner;
  const std::size_t i = corner;
  const std::size_t j = (i + 1) % 3;
  const std::size_t k = (i + 2) % 3;
  a.alpha_ij = angle_between(c[j] - c[i], p - c[i]);
  a.alpha_ik = angle_between(c[k] - c[i], p - c[i]);
  a.alpha_ji = angle_between(c[i] - c[j], p - c[j]);
  a.alpha_ki = angle_between(c[i] - c[k], p - c[k]);
  a.beta = angle_between(c[j] - p, c[k] - p);
  return a;
}

DeltaMaxResult delta_max_wall(const Ball& ball1, const Ball& ball2, const HalfSpace& wall,
                              double tol) {
  const Eigen::Index n = ball1.dimension();
  if (ball2.dimension() != n || wall.dimension() != n) {
    throw InputError("balls and wall must share one dimension");
  }
  const std::array<const Ball*, 2> balls{&ball1, &ball2};
  const double scale = std::max(ball1.radius, ball2.radius);
  const double tol_abs = tol * scale;

  std::array<double, 2> height{};
  for (std::size_t i = 0; i < 2; ++i) {
    height[i] = wall.signed_distance(balls[i]->center);
    if (height[i] < balls[i]->radius - tol_abs) {
      throw InputError("ball " + std::to_string(i) + " crosses the wall");
    }
  }
  const Vec d = ball2.center - ball1.center;
  const double ell = d.norm();
  if (ell < ball1.radius + ball2.radius - tol_abs) throw InputError("balls 0 and 1 overlap");

  // Plane through both centers containing the wall normal; coordinates
  // (tangential, normal) relative to ball1.center, so the wall is y <= w0.
  const Vec& nrm = wall.normal;
  Vec tangential = d - d.dot(nrm) * nrm;
  const bool along_normal = tangential.norm() < 1e-9 * std::max(ell, scale);
  const Vec e_t = along_normal ? complete_orthonormal(nrm) : Vec(tangential.normalized());
  auto lift = [&](const Vec2& q) -> Vec { return ball1.center + q.x() * e_t + q.y() * nrm; };

  const std::array<Vec2, 2> c{Vec2(0.0, 0.0), Vec2(d.dot(e_t), d.dot(nrm))};
  const std::array<double, 2> r{ball1.radius, ball2.radius};
  const double w0 = -height[0];

  auto clamp_gap = [&](double gap) { return gap < tol_abs ? 0.0 : 0.5 * gap; };
  // Pairs in lexicographic order with the wall as body 2: (0,1), (0,w), (1,w).
  const std::array<double, 3> tau{clamp_gap(ell - r[0] - r[1]),
                                  clamp_gap(height[0] - r[0]),
                                  clamp_gap(height[1] - r[1])};
  const double largest = max_of(tau);

  DeltaMaxResult res;
  if (along_normal) {
    // All three bodies meet the normal line through the centers; along it the
    // dilations are intervals.
    double lower = -std::numeric_limits<double>::infinity();
    double upper = w0 + largest;
    for (std::size_t i = 0; i < 2; ++i) {
      lower = std::max(lower, c[i].y() - r[i] - largest);
      upper = std::min(upper, c[i].y() + r[i] + largest);
    }
    res.delta_max = largest;
    res.witness_point = lift(Vec2(0.0, 0.5 * (lower + upper)));
    res.case_tag = CaseTag::BoundaryContact;
    res.degenerate = true;
    return res;
  }

  const Vec2 down(0.0, -1.0);
  for (std::size_t pair = 0; pair < 3; ++pair) {
    if (tau[pair] < largest - tol_abs) continue;
    Vec2 p;
    bool inside = false;
    if (pair == 0) {
      p = c[0] + (r[0] + tau[0]) * (c[1] - c[0]).normalized();
      inside = p.y() <= w0 + largest + tol_abs;
    } else {
      const std::size_t i = pair - 1;
      const std::size_t k = 1 - i;
      p = c[i] + (r[i] + tau[pair]) * down;
      inside = (p - c[k]).norm() <= r[k] + largest + tol_abs;
    }
    if (inside) {
      res.delta_max = largest;
      res.witness_point = lift(p);
      res.case_tag = CaseTag::BoundaryContact;
      return res;
    }
  }

  // Interior tangency: p = (x, w0 + t) with |p - c_i| = R_i + t reduces to
  // t = (x - a_i)^2 / k_i + g_i / 2, k_i = 2 (R_i + h_i), g_i the wall gap.
  std::array<double, 2> a{}, k{}, half_gap{};
  for (std::size_t i = 0; i < 2; ++i) {
    a[i] = c[i].x();
    const double h = c[i].y() - w0;
    k[i] = 2.0 * (r[i] + h);
    half_gap[i] = 0.5 * (h - r[i]);
  }
  const double qa = 1.0 / k[0] - 1.0 / k[1];
  const double qb = -2.0 * (a[0] / k[0] - a[1] / k[1]);
  const double qc = a[0] * a[0] / k[0] - a[1] * a[1] / k[1] + half_gap[0] - half_gap[1];
  double best_t = std::numeric_limits<double>::infinity();
  Vec2 best_p;
  for (double x : detail::real_roots(qa, qb, qc)) {
    const double t = (x - a[0]) * (x - a[0]) / k[0] + half_gap[0];
    if (!(t > 0.0) || t < largest - tol_abs) continue;
    const Vec2 p(x, w0 + t);
    // Half-strip between the two downward rays from the centers: the
    // triangle of centers with the wall as a vertex at infinity.
    const double u = (x - a[0]) / (a[1] - a[0]);
    const double v = c[0].y() + u * (c[1].y() - c[0].y()) - p.y();
    if (u < -1e-9 || u > 1.0 + 1e-9 || v < -tol_abs) continue;
    if (t < best_t) {
      best_t = t;
      best_p = p;
    }
  }
  if (!std::isfinite(best_t)) {
    throw NumericalError("no wall contact point qualifies and no tangent circle lies in the strip");
  }
  res.delta_max = best_t;
  res.witness_point = lift(best_p);
  res.case_tag = CaseTag::ApolloniusInterior;
  res.apollonius_radius = best_t;
  return res;
}

}  // namespace depletion
