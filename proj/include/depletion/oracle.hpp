#pragma once

// Brute-force ground truth: the minimax value min_x max_i dist(x, C_i), a
// grid test for emptiness of the dilated intersection, and Monte Carlo union
// volumes with the closed-form pairwise overlaps they are compared against.

#include "depletion/body.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace depletion {

struct MinimaxResult {
  double value = 0.0;
  Vec argmin;
  // Objective evaluations.
  long iterations = 0;
  bool converged = false;
};

// min_x max_i dist(x, C_i), i.e. the smallest delta at which all dilations
// share a point. The objective is convex, so the minimum over one coordinate
// with the remaining ones minimized out is again convex; the search nests a
// golden-section search per coordinate over a box that must contain the
// minimizer. Needs at least one compact body. `start` (default: mean of the
// compact bodies' box centers) only sets the search box. Converged when every
// bracket is below rel_tol times the body scale.
MinimaxResult minimax_delta(const std::vector<ConvexBody>& bodies,
                            const std::optional<Vec>& start = std::nullopt,
                            double rel_tol = 1e-12);

// Same search on max_i signed_distance without clamping; negative when the
// interiors share a point.
MinimaxResult minimax_signed(const std::vector<ConvexBody>& bodies,
                             const std::optional<Vec>& start = std::nullopt,
                             double rel_tol = 1e-12);

// Default grid spacing: 1e-3 times the largest body scale.
double default_grid_resolution(const std::vector<ConvexBody>& bodies);

// True iff no grid line finds a common point of all C_i(delta) and the
// minimax value exceeds delta. The grid covers the first n-1 coordinates with
// spacing `grid_resolution` (<= 0 selects the default); along the last
// coordinate each dilation is an exact interval.
bool triple_empty(const std::vector<ConvexBody>& bodies, double delta,
                  double grid_resolution = 0.0);

struct UnionVolumeEstimate {
  double volume = 0.0;
  double std_error = 0.0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kMonteCarloBlock = 1u << 16;

// Uniform sampling in the box of the dilated bodies (expanded by the default
// grid spacing). Blocks of kMonteCarloBlock samples draw from independent
// streams, so the estimate is bit-identical for any thread count.
UnionVolumeEstimate union_volume_mc(const std::vector<ConvexBody>& bodies, double delta,
                                    std::uint64_t n_samples, std::uint64_t seed,
                                    unsigned threads = 0);

// Volume (2D: area) of B(center, R + delta).
double ball_volume(const Ball& b, double delta);

// Overlap of B(r1, R1 + delta) and B(r2, R2 + delta): lens area in 2D,
// sum of two spherical caps in 3D. CapabilityError in other dimensions.
double pairwise_lens_area(const Ball& b1, const Ball& b2, double delta);

// sum_i vol(B_i(delta)) - sum_{i<j} overlap_ij.
double truncated_inclusion_exclusion(const std::vector<Ball>& balls, double delta);

// Interiors intersect beyond tol times the larger body scale.
bool bodies_overlap(const ConvexBody& a, const ConvexBody& b, double tol = kDefaultTolerance);

// InputError naming the first overlapping pair.
void require_disjoint(const std::vector<ConvexBody>& bodies, double tol = kDefaultTolerance);

}  // namespace depletion
