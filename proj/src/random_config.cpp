#include "depletion/random_config.hpp"

#include "depletion/errors.hpp"

#include <algorithm>
#include <cmath>

namespace depletion {

namespace {

double log_uniform(Rng& rng, Range r) {
  if (r.lo == r.hi) return r.lo;
  return std::exp(uniform(rng, std::log(r.lo), std::log(r.hi)));
}

}  // namespace

Eigen::MatrixXd random_rotation(Rng& rng, Eigen::Index n) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal01(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  }
  return q;
}

ConfigurationTriplet random_config(Rng& rng, Range radius_range, Range gap_range,
                                   Eigen::Index dimension) {
  if (!(radius_range.lo > 0.0) || radius_range.hi < radius_range.lo) {
    throw InputError("radius range must satisfy 0 < lo <= hi");
  }
  if (!(gap_range.lo >= 0.0) || gap_range.hi < gap_range.lo) {
    throw InputError("gap range must satisfy 0 <= lo <= hi");
  }
  if (dimension < 2) throw InputError("dimension must be at least 2");

  std::array<double, 3> radii{};
  std::array<double, 3> side{};
  bool valid = false;
  for (int attempt = 0; attempt < 10000 && !valid; ++attempt) {
    for (auto& r : radii) r = log_uniform(rng, radius_range);
    for (std::size_t i = 0; i < 3; ++i) {
      side[i] = radii[(i + 1) % 3] + radii[(i + 2) % 3] + uniform(rng, gap_range.lo, gap_range.hi);
    }
    valid = true;
    for (std::size_t i = 0; i < 3; ++i) {
      valid = valid && side[i] < side[(i + 1) % 3] + side[(i + 2) % 3];
    }
  }
  if (!valid) throw NumericalError("failed to sample a valid triangle");

  // r0 at the origin, r1 on the first axis; side[i] is opposite r_i.
  const double x = (side[2] * side[2] + side[1] * side[1] - side[0] * side[0]) / (2.0 * side[2]);
  const double y = std::sqrt(std::max(side[1] * side[1] - x * x, 0.0));
  std::array<Vec, 3> centers{Vec::Zero(dimension), Vec::Zero(dimension), Vec::Zero(dimension)};
  centers[1][0] = side[2];
  centers[2][0] = x;
  centers[2][1] = y;
  // Centroid at the origin, so no center sits at a special point.
  const Vec centroid = (centers[0] + centers[1] + centers[2]) / 3.0;
  const Eigen::MatrixXd q = random_rotation(rng, dimension);
  return ConfigurationTriplet(Ball(q * (centers[0] - centroid), radii[0]),
                              Ball(q * (centers[1] - centroid), radii[1]),
                              Ball(q * (centers[2] - centroid), radii[2]));
}

ConfigurationTriplet triangle_config(const std::array<double, 3>& radii, std::size_t corner,
                                     double side_ij, double side_ik, double angle) {
  const std::size_t i = corner;
  const std::size_t j = (i + 1) % 3;
  const std::size_t k = (i + 2) % 3;
  std::array<Vec, 3> c;
  c[i] = Vec2(0.0, 0.0);
  c[j] = Vec2(side_ij, 0.0);
  c[k] = Vec2(side_ik * std::cos(angle), side_ik * std::sin(angle));
  return ConfigurationTriplet(Ball(c[0], radii[0]), Ball(c[1], radii[1]), Ball(c[2], radii[2]));
}

AngleMove random_angle_decrease(Rng& rng, const ConfigurationTriplet& cfg) {
  const PlaneReduction plane = reduce_to_plane(cfg);
  const std::size_t i = static_cast<std::size_t>(rng() % 3);
  const std::size_t j = (i + 1) % 3;
  const std::size_t k = (i + 2) % 3;
  const double lij = (plane.centers[i] - plane.centers[j]).norm();
  const double lik = (plane.centers[i] - plane.centers[k]).norm();
  const auto tri = triangle_from_centers(Vec(plane.centers[0]), Vec(plane.centers[1]),
                                         Vec(plane.centers[2]));
  const double alpha = tri.angles[i];
  // Smallest angle keeping |r_j - r_k| >= R_j + R_k.
  const double reach = plane.radii[j] + plane.radii[k];
  const double cos_min = (lij * lij + lik * lik - reach * reach) / (2.0 * lij * lik);
  const double alpha_min = std::min(alpha, std::acos(std::clamp(cos_min, -1.0, 1.0)));
  const double alpha_new = uniform(rng, alpha_min, alpha);
  return {triangle_config(plane.radii, i, lij, lik, alpha),
          triangle_config(plane.radii, i, lij, lik, alpha_new), i, alpha, alpha_new};
}

}  // namespace depletion
