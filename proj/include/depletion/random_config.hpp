#pragma once

// Random ball triplets for the verification campaigns.

#include "depletion/geometry.hpp"
#include "depletion/rng.hpp"

namespace depletion {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
// of R's diagonal folded into Q).
Eigen::MatrixXd random_rotation(Rng& rng, Eigen::Index n);

// Radii log-uniform in radius_range; side l_i = R_j + R_k + g_i with g_i
// uniform in gap_range, redrawn until the sides form a nondegenerate
// triangle; centroid at the origin, rotated by random_rotation in dimension n.
ConfigurationTriplet random_config(Rng& rng, Range radius_range, Range gap_range,
                                   Eigen::Index dimension);

// Planar triplet with corner i = `corner` at the origin, r_j = (side_ij, 0)
// and r_k at distance side_ik under the given angle (j, k the successors of i).
ConfigurationTriplet triangle_config(const std::array<double, 3>& radii, std::size_t corner,
                                     double side_ij, double side_ik, double angle);

struct AngleMove {
  ConfigurationTriplet before;
  ConfigurationTriplet after;
  std::size_t corner = 0;
  double angle_before = 0.0;
  double angle_after = 0.0;
};

// Decreases the angle at a random corner, keeping both adjacent sides, to a
// value drawn uniformly from the range that keeps the opposite pair disjoint.
// Both triplets are returned in the same planar frame.
AngleMove random_angle_decrease(Rng& rng, const ConfigurationTriplet& cfg);

}  // namespace depletion
