#pragma once

// Maximal shell radius of three balls (or two balls and a wall): the largest
// delta for which the delta-dilations have empty triple intersection.
//
// The computation follows the triangle dichotomy. With delta_3 the largest
// pairwise contact threshold, the dilations at delta_3 either already share
// the contact point of the pair realizing delta_3 (boundary contact), or the
// first common point is the center of the externally tangent Apollonius
// circle lying inside the triangle of centers, and delta_max is its radius.

#include "depletion/geometry.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace depletion {

struct PairwiseThresholds {
  // delta[i] = (l_i - R_j - R_k) / 2, the threshold of the pair opposite
  // corner i (original labels). Contacts within tolerance are clamped to 0.
  std::array<double, 3> delta{};
  // Corner indices ordered so delta[order[0]] <= delta[order[1]] <= delta[order[2]];
  // ties keep ascending index order.
  std::array<std::size_t, 3> order{0, 1, 2};

  [[nodiscard]] double largest() const { return delta[order[2]]; }
  [[nodiscard]] double sorted(std::size_t k) const { return delta[order[k]]; }
};

enum class CaseTag { BoundaryContact, ApolloniusInterior };

std::string_view to_string(CaseTag tag);

struct DeltaMaxResult {
  double delta_max = 0.0;
  // The single point of triple intersection at delta_max, ambient coordinates.
  Vec witness_point;
  CaseTag case_tag = CaseTag::BoundaryContact;
  // Radius of the selected Apollonius circle (ApolloniusInterior only).
  std::optional<double> apollonius_radius;
  // Collinear centers; the triangle is a segment and the result comes from
  // the one-dimensional interval path.
  bool degenerate = false;
};

struct ApolloniusSolution {
  Vec2 center;
  double radius = 0.0;
  // |center - r_i| = R_i + signs[i] * radius.
  std::array<int, 3> tangency_signs{1, 1, 1};
};

// Angles splitting the triangle at corner `corner` (labels i, j, k = corner
// and its two successors) when the witness p lies inside the triangle.
struct AngleSplit {
  std::size_t corner = 0;
  double alpha_ij = 0.0;  // angle at r_i between r_i->r_j and r_i->p
  double alpha_ik = 0.0;  // angle at r_i between r_i->r_k and r_i->p
  double alpha_ji = 0.0;  // angle at r_j between r_j->r_i and r_j->p
  double alpha_ki = 0.0;  // angle at r_k between r_k->r_i and r_k->p
  double beta = 0.0;      // angle at p in triangle (p, r_j, r_k)
};

PairwiseThresholds pairwise_thresholds(const ConfigurationTriplet& cfg,
                                       double tol = kDefaultTolerance);

// Inner Soddy circle radius of three mutually tangent circles.
double descartes_contact_radius(double r1, double r2, double r3);

// All real circles with |p - c_i| = R_i + s_i t, t > 0 and R_i + s_i t > 0 for
// the requested sign pattern (default: externally tangent to all three).
// Requires a 2D configuration with non-collinear centers; collinear centers
// raise DegenerateInputError.
std::vector<ApolloniusSolution> apollonius_solve(const ConfigurationTriplet& cfg,
                                                 std::array<int, 3> signs = {1, 1, 1});

// Every sign pattern, deduplicated by pattern.
std::vector<ApolloniusSolution> apollonius_solve_all(const ConfigurationTriplet& cfg);

DeltaMaxResult delta_max(const ConfigurationTriplet& cfg, double tol = kDefaultTolerance);

// Same result from the plane-reduced problem (2D centers and radii).
DeltaMaxResult delta_max_planar(const std::array<Vec2, 3>& centers,
                                const std::array<double, 3>& radii,
                                double tol = kDefaultTolerance);

// Angle at corner `corner` of the triangle formed by r_corner and a point at
// distances R_i + t from every center, as the sum of the two arccos branches.
// Throws NumericalError when a cosine leaves [-1, 1] by more than 1e-9 (t
// below the adjacent pairwise thresholds).
double split_angle_sum(const PlaneReduction& plane, std::size_t corner, double t);

// Independent route to the Apollonius radius: bisection of the strictly
// increasing map t -> split_angle_sum(corner, t) against the triangle angle at
// the corner opposite the smallest threshold. The bracket is [lo, hi]; hi is
// doubled (bounded) until it brackets the root. Returns lo when the root sits
// at the bracket edge.
double delta_star_by_bisection(const ConfigurationTriplet& cfg,
                               std::pair<double, double> bracket);

// Bracket-free overload starting at the largest pairwise threshold.
double delta_star_by_bisection(const ConfigurationTriplet& cfg);

AngleSplit angle_split(const PlaneReduction& plane, const Vec2& witness,
                       std::size_t corner);

// Two balls and a hard wall. The balls must lie on the closed outer side of
// the wall: center . n - R >= offset (within tolerance).
DeltaMaxResult delta_max_wall(const Ball& ball1, const Ball& ball2, const HalfSpace& wall,
                              double tol = kDefaultTolerance);

}  // namespace depletion
