#pragma once

// Scene documents (JSON):
//   {"dimension": 2,
//    "bodies": [{"type": "ball", "params": {"center": [0, 0], "radius": 1}}, ...],
//    "delta": 0.1,
//    "depletant": {"R": 1, "delta": 0.1, "rho_p": 1, "kT": 1},
//    "seed": 42}
// Body types and params:
//   ball             center, radius
//   halfspace        normal, offset        ({x : x . normal <= offset})
//   ellipse          center, semi_axes, angle | axes
//   ellipsoid        center, semi_axes, axes (one direction per semi-axis)
//   polygon          vertices (counterclockwise)
//   rounded_polygon  vertices, radius
// Unknown keys are rejected.

#include "depletion/body.hpp"
#include "depletion/potential.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depletion {

struct Scene {
  Eigen::Index dimension = 2;
  std::vector<ConvexBody> bodies;
  std::optional<double> delta;
  std::optional<AOParameters> depletant;
  std::optional<std::uint64_t> seed;
};

// Throws InputError on malformed documents, dimension mismatches and
// overlapping bodies (naming the pair).
Scene parse_scene(std::string_view text, double tol = kDefaultTolerance);
Scene load_scene(const std::string& path, double tol = kDefaultTolerance);

// Single-line JSON; doubles round-trip exactly.
std::string serialize_scene(const Scene& scene);

// Balls of the scene in order; InputError if another body type is present.
std::vector<Ball> scene_balls(const Scene& scene);

}  // namespace depletion
