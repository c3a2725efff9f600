#include "depletion/criteria.hpp"

#include "depletion/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace depletion {

namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InputError("depletion radius must be nonnegative and finite");
  }
}

CriterionReport report_from(double factor, const std::vector<double>& rolls,
                            const std::vector<std::size_t>& indices, double delta) {
  CriterionReport r;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rolls.size(); ++k) {
    if (rolls[k] < lowest) {
      lowest = rolls[k];
      r.limiting_body_index = indices[k];
    }
  }
  if (lowest == 0.0) {
    r.threshold = 0.0;
    r.usable = false;
    r.warning = "body " + std::to_string(r.limiting_body_index) +
                " has rolling radius 0 (corner or cusp); no positive depletion radius "
                "satisfies the criterion";
    return r;
  }
  r.threshold = factor * lowest;
  r.satisfied = delta <= r.threshold;
  r.strict = delta < r.threshold;
  return r;
}

}  // namespace

CriterionReport theorem1_check(const std::vector<ConvexBody>& bodies, double delta) {
  check_delta(delta);
  if (bodies.size() < 3) throw InputError("the criterion needs at least three bodies");
  std::vector<double> rolls;
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (!is_compact(bodies[i])) {
      throw InputError("body " + std::to_string(i) + " is a half-space; use the wall check");
    }
    rolls.push_back(rolling_radius(bodies[i]));
    indices.push_back(i);
  }
  return report_from(kTripletFactor, rolls, indices, delta);
}

CriterionReport wall_check(const std::vector<ConvexBody>& bodies, double delta) {
  check_delta(delta);
  if (bodies.size() < 3) throw InputError("the wall criterion needs at least three bodies");
  std::size_t walls = 0;
  std::vector<double> rolls;
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (!is_compact(bodies[i])) {
      ++walls;
      continue;
    }
    rolls.push_back(rolling_radius(bodies[i]));
    indices.push_back(i);
  }
  if (walls != 1) {
    throw InputError("the wall criterion needs exactly one half-space, got " +
                     std::to_string(walls));
  }
  return report_from(kWallFactor, rolls, indices, delta);
}

bool improved_criterion_check(const ConvexBody& body, const ConvexBody& inner, double delta_prime,
                              std::size_t samples, double tol) {
  check_delta(delta_prime);
  if (!is_compact(body) || !is_compact(inner)) {
    throw InputError("the inner-body criterion needs compact bodies");
  }
  if (dimension(body) != dimension(inner)) throw InputError("bodies must share one dimension");
  const double roll = rolling_radius(inner);
  if (!(roll > 0.0)) throw InputError("the inner body must have positive rolling radius");
  const double slack = tol * std::max(length_scale(body), length_scale(inner));

  for (const auto& s : boundary_samples(inner, samples)) {
    if (signed_distance(body, s.point) > slack) {
      throw InputError("the inner body is not contained in the body");
    }
  }
  const double reach = kTripletFactor * roll;
  for (const auto& s : boundary_samples(body, samples)) {
    if (signed_distance(inner, s.point + delta_prime * s.normal) > reach + slack) return false;
  }
  return true;
}

std::optional<double> largest_improved_delta(const ConvexBody& body, const ConvexBody& inner,
                                             std::size_t samples, double tol) {
  if (!improved_criterion_check(body, inner, 0.0, samples, tol)) return std::nullopt;
  // C(delta') contains K(delta'), so delta' never exceeds Delta_K.
  double lo = 0.0;
  double hi = kTripletFactor * rolling_radius(inner);
  if (improved_criterion_check(body, inner, hi, samples, tol)) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (improved_criterion_check(body, inner, mid, samples, tol) ? lo : hi) = mid;
  }
  return lo;
}

CriterionReport ball_union_check(const std::vector<std::vector<Ball>>& bodies, double delta) {
  check_delta(delta);
  if (bodies.size() < 3) throw InputError("the criterion needs at least three bodies");
  std::vector<double> rolls;
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].empty()) throw InputError("body " + std::to_string(i) + " has no balls");
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& b : bodies[i]) smallest = std::min(smallest, b.radius);
    rolls.push_back(smallest);
    indices.push_back(i);
  }
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    for (std::size_t j = i + 1; j < bodies.size(); ++j) {
      for (const auto& a : bodies[i]) {
        for (const auto& b : bodies[j]) {
          if (a.dimension() != b.dimension()) throw InputError("balls must share one dimension");
          const double slack = kDefaultTolerance * std::max(a.radius, b.radius);
          if ((a.center - b.center).norm() < a.radius + b.radius - slack) {
            throw InputError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                             " overlap");
          }
        }
      }
    }
  }
  return report_from(kTripletFactor, rolls, indices, delta);
}

}  // namespace depletion
