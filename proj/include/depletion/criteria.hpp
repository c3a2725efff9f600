#pragma once

// Sufficient criteria for the absence of triple overlaps of dilated bodies.

#include "depletion/body.hpp"

#include <optional>
#include <string>
#include <vector>

namespace depletion {

struct CriterionReport {
  double threshold = 0.0;
  // delta <= threshold: every triple intersection has zero volume.
  bool satisfied = false;
  // delta < threshold: every triple intersection is empty.
  bool strict = false;
  // Body realizing the minimum rolling radius (first one on ties).
  std::size_t limiting_body_index = 0;
  // False when a body has zero rolling radius; the criterion then cannot hold
  // for any positive delta.
  bool usable = true;
  std::string warning;
};

// threshold = (2/sqrt(3) - 1) * min_i Roll(C_i). Needs >= 3 bodies and no
// half-space (use wall_check).
CriterionReport theorem1_check(const std::vector<ConvexBody>& bodies, double delta);

// threshold = min_i Roll(C_i) / 4 over the compact bodies. Exactly one
// half-space; >= 3 bodies in total.
CriterionReport wall_check(const std::vector<ConvexBody>& bodies, double delta);

// Threshold from a shell radius per body: C(delta') must lie inside the
// dilation K(Delta_K), Delta_K = (2/sqrt(3) - 1) Roll(K), for an inner body
// K contained in C. Both checked on boundary samples (`samples` = 0 selects
// the default count). InputError when sampled K is not inside C.
bool improved_criterion_check(const ConvexBody& body, const ConvexBody& inner,
                              double delta_prime, std::size_t samples = 0,
                              double tol = kDefaultTolerance);

// Largest delta' passing improved_criterion_check, by bisection on
// [0, Delta_K]; nullopt when even delta' = 0 fails.
std::optional<double> largest_improved_delta(const ConvexBody& body, const ConvexBody& inner,
                                             std::size_t samples = 0,
                                             double tol = kDefaultTolerance);

// Nonconvex bodies given as unions of balls. Balls of different bodies must
// have disjoint interiors; the threshold uses the smallest constituent radius.
CriterionReport ball_union_check(const std::vector<std::vector<Ball>>& bodies, double delta);

}  // namespace depletion
