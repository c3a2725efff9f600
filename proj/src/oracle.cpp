#include "depletion/oracle.hpp"

#include "depletion/errors.hpp"
#include "depletion/parallel.hpp"
#include "depletion/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace depletion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
constexpr int kMaxGoldenSteps = 200;

struct Search {
  const std::vector<ConvexBody>& bodies;
  Box box;
  double tol = 0.0;
  long evaluations = 0;
  bool converged = true;
  double best = kInf;
  Vec best_x;
  Vec x;

  double objective() {
    ++evaluations;
    double g = -kInf;
    for (const auto& b : bodies) g = std::max(g, signed_distance(b, x));
    if (g < best) {
      best = g;
      best_x = x;
    }
    return g;
  }

  // Minimum over coordinates k.. with the leading ones fixed in x.
  double minimize_from(Eigen::Index k) {
    if (k == x.size()) return objective();
    auto f = [&](double t) {
      x[k] = t;
      return minimize_from(k + 1);
    };
    double a = box.lower[k];
    double b = box.upper[k];
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int steps = 0;
    while (b - a > tol) {
      if (++steps > kMaxGoldenSteps) {
        converged = false;
        break;
      }
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = f(d);
      }
    }
    return std::min(fc, fd);
  }
};

double body_scale(const std::vector<ConvexBody>& bodies) {
  double scale = 0.0;
  for (const auto& b : bodies) {
    if (is_compact(b)) scale = std::max(scale, length_scale(b));
  }
  return scale;
}

Eigen::Index common_dimension(const std::vector<ConvexBody>& bodies) {
  if (bodies.empty()) throw InputError("no bodies given");
  const Eigen::Index n = dimension(bodies[0]);
  for (const auto& b : bodies) {
    if (dimension(b) != n) throw InputError("bodies must share one dimension");
  }
  return n;
}

MinimaxResult run_minimax(const std::vector<ConvexBody>& bodies, const std::optional<Vec>& start,
                          double rel_tol) {
  const Eigen::Index n = common_dimension(bodies);
  const double scale = body_scale(bodies);
  if (!(scale > 0.0)) {
    throw CapabilityError("the minimax search needs at least one compact body");
  }
  Vec x0;
  if (start) {
    if (start->size() != n) throw InputError("start point has the wrong dimension");
    x0 = *start;
  } else {
    x0 = Vec::Zero(n);
    int compact = 0;
    for (const auto& b : bodies) {
      if (!is_compact(b)) continue;
      const Box bb = bounding_box(b);
      x0 += 0.5 * (bb.lower + bb.upper);
      ++compact;
    }
    x0 /= compact;
  }
  double g0 = -kInf;
  for (const auto& b : bodies) g0 = std::max(g0, signed_distance(b, x0));
  // The minimizer lies in every C_i(g(x0)); intersect their boxes.
  const double reach = std::max(g0, 0.0) + 1e-9 * scale;
  Box box{Vec::Constant(n, -kInf), Vec::Constant(n, kInf)};
  for (const auto& b : bodies) {
    if (!is_compact(b)) continue;
    const Box bb = bounding_box(b, reach);
    box.lower = box.lower.cwiseMax(bb.lower);
    box.upper = box.upper.cwiseMin(bb.upper);
  }
  box.upper = box.upper.cwiseMax(box.lower);

  Search s{bodies, box, rel_tol * scale, 0, true, g0, x0, box.lower};
  s.minimize_from(0);
  return {s.best, s.best_x, s.evaluations, s.converged};
}

// Parameter interval {t : signed_distance(x + t e_last) <= delta}; empty when
// lo > hi.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  [[nodiscard]] bool empty() const { return lo > hi; }
};

Interval line_interval(const ConvexBody& body, const Vec& x, double delta, double t_lo,
                       double t_hi, double tol) {
  const Eigen::Index last = x.size() - 1;
  if (const auto* b = std::get_if<Ball>(&body)) {
    const double s = b->radius + delta;
    const double w2 = (x.head(last) - b->center.head(last)).squaredNorm();
    if (w2 > s * s) return {1.0, 0.0};
    const double h = std::sqrt(s * s - w2);
    return {b->center[last] - h, b->center[last] + h};
  }
  if (const auto* h = std::get_if<HalfSpace>(&body)) {
    const double nl = h->normal[last];
    const double rest = h->offset + delta - h->normal.head(last).dot(x.head(last));
    if (nl > 0.0) return {-kInf, rest / nl};
    if (nl < 0.0) return {rest / nl, kInf};
    return rest >= 0.0 ? Interval{} : Interval{1.0, 0.0};
  }
  // Generic convex body: minimize along the line, then bisect both crossings.
  Vec p = x;
  auto f = [&](double t) {
    p[last] = t;
    return signed_distance(body, p) - delta;
  };
  double a = t_lo;
  double b = t_hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int steps = 0; b - a > tol && steps < kMaxGoldenSteps; ++steps) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double tm = fc < fd ? c : d;
  if (std::min(fc, fd) > 0.0) return {1.0, 0.0};
  auto crossing = [&](double inside, double outside) {
    if (f(outside) <= 0.0) return outside;
    for (int it = 0; it < 200 && std::abs(outside - inside) > tol; ++it) {
      const double mid = 0.5 * (inside + outside);
      (f(mid) <= 0.0 ? inside : outside) = mid;
    }
    return inside;
  };
  return {crossing(tm, t_lo), crossing(tm, t_hi)};
}

}  // namespace

MinimaxResult minimax_delta(const std::vector<ConvexBody>& bodies, const std::optional<Vec>& start,
                            double rel_tol) {
  MinimaxResult r = run_minimax(bodies, start, rel_tol);
  r.value = std::max(r.value, 0.0);
  return r;
}

MinimaxResult minimax_signed(const std::vector<ConvexBody>& bodies,
                             const std::optional<Vec>& start, double rel_tol) {
  return run_minimax(bodies, start, rel_tol);
}

double default_grid_resolution(const std::vector<ConvexBody>& bodies) {
  return 1e-3 * body_scale(bodies);
}

bool triple_empty(const std::vector<ConvexBody>& bodies, double delta, double grid_resolution) {
  if (!(delta >= 0.0)) throw InputError("dilation radius must be nonnegative");
  const Eigen::Index n = common_dimension(bodies);
  const double h = grid_resolution > 0.0 ? grid_resolution : default_grid_resolution(bodies);
  if (!(h > 0.0)) throw CapabilityError("the grid test needs at least one compact body");

  if (minimax_delta(bodies).value <= delta) return false;

  Box box{Vec::Constant(n, -kInf), Vec::Constant(n, kInf)};
  for (const auto& b : bodies) {
    if (!is_compact(b)) continue;
    const Box bb = bounding_box(b, delta + h);
    box.lower = box.lower.cwiseMax(bb.lower);
    box.upper = box.upper.cwiseMin(bb.upper);
  }
  if ((box.lower.array() > box.upper.array()).any()) return true;

  const Eigen::Index last = n - 1;
  std::vector<long> counts(static_cast<std::size_t>(last));
  long total = 1;
  for (Eigen::Index k = 0; k < last; ++k) {
    counts[static_cast<std::size_t>(k)] =
        static_cast<long>(std::floor((box.upper[k] - box.lower[k]) / h)) + 1;
    total *= counts[static_cast<std::size_t>(k)];
  }
  const double line_tol = 1e-12 * body_scale(bodies);
  Vec x = box.lower;
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (Eigen::Index k = 0; k < last; ++k) {
      const long c = counts[static_cast<std::size_t>(k)];
      x[k] = box.lower[k] + h * static_cast<double>(rem % c);
      rem /= c;
    }
    Interval common{box.lower[last], box.upper[last]};
    for (const auto& b : bodies) {
      const Interval iv = line_interval(b, x, delta, box.lower[last], box.upper[last], line_tol);
      common.lo = std::max(common.lo, iv.lo);
      common.hi = std::min(common.hi, iv.hi);
      if (common.empty()) break;
    }
    if (!common.empty()) return false;
  }
  return true;
}

UnionVolumeEstimate union_volume_mc(const std::vector<ConvexBody>& bodies, double delta,
                                    std::uint64_t n_samples, std::uint64_t seed,
                                    unsigned threads) {
  if (n_samples < 10000) throw InputError("union_volume_mc needs at least 10^4 samples");
  if (!(delta >= 0.0)) throw InputError("dilation radius must be nonnegative");
  const Eigen::Index n = common_dimension(bodies);
  for (const auto& b : bodies) {
    if (!is_compact(b)) throw InputError("union volume of an unbounded body is infinite");
  }
  const double h = default_grid_resolution(bodies);
  Box box{Vec::Constant(n, kInf), Vec::Constant(n, -kInf)};
  for (const auto& b : bodies) {
    const Box bb = bounding_box(b, delta + h);
    box.lower = box.lower.cwiseMin(bb.lower);
    box.upper = box.upper.cwiseMax(bb.upper);
  }
  const Vec extent = box.upper - box.lower;
  if (!(extent.minCoeff() > 0.0) || !extent.allFinite()) {
    throw InputError("degenerate sampling box");
  }
  const double box_volume = extent.prod();

  const std::uint64_t blocks = (n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_for(
      blocks,
      [&](std::size_t blk) {
        Rng rng(stream_seed(seed, blk));
        const std::uint64_t begin = blk * kMonteCarloBlock;
        const std::uint64_t end = std::min(n_samples, begin + kMonteCarloBlock);
        Vec x(n);
        std::uint64_t count = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
          for (Eigen::Index k = 0; k < n; ++k) x[k] = box.lower[k] + extent[k] * uniform01(rng);
          for (const auto& b : bodies) {
            if (signed_distance(b, x) <= delta) {
              ++count;
              break;
            }
          }
        }
        hits[blk] = count;
      },
      threads);
  std::uint64_t total = 0;
  for (auto c : hits) total += c;
  const double p = static_cast<double>(total) / static_cast<double>(n_samples);
  UnionVolumeEstimate est;
  est.volume = box_volume * p;
  est.std_error = box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
  est.sample_count = n_samples;
  est.seed = seed;
  return est;
}

double ball_volume(const Ball& b, double delta) {
  if (!(delta >= 0.0)) throw InputError("dilation radius must be nonnegative");
  const double s = b.radius + delta;
  switch (b.dimension()) {
    case 2:
      return std::numbers::pi * s * s;
    case 3:
      return 4.0 / 3.0 * std::numbers::pi * s * s * s;
    default:
      throw CapabilityError("closed-form volumes are implemented in 2D and 3D");
  }
}

double pairwise_lens_area(const Ball& b1, const Ball& b2, double delta) {
  if (b1.dimension() != b2.dimension()) throw InputError("balls must share one dimension");
  const Eigen::Index n = b1.dimension();
  if (n != 2 && n != 3) throw CapabilityError("closed-form overlaps are implemented in 2D and 3D");
  if (!(delta >= 0.0)) throw InputError("dilation radius must be nonnegative");
  const double a = b1.radius + delta;
  const double b = b2.radius + delta;
  const double d = (b1.center - b2.center).norm();
  if (d >= a + b) return 0.0;
  if (d <= std::abs(a - b)) return ball_volume(a < b ? b1 : b2, delta);
  const double pi = std::numbers::pi;
  // Distance from center 1 to the radical plane, written so that equal radii
  // give exactly d / 2.
  const double x1 = 0.5 * (d + (a - b) * (a + b) / d);
  const double h1 = a - x1;
  const double h2 = b - (d - x1);
  if (n == 2) {
    auto segment = [](double r, double x) {
      // Circular segment of radius r cut at distance x from the center.
      const double c = std::clamp(x / r, -1.0, 1.0);
      return r * r * std::acos(c) - x * std::sqrt(std::max(0.0, r * r - x * x));
    };
    return segment(a, x1) + segment(b, d - x1);
  }
  return pi * h1 * h1 * (3.0 * a - h1) / 3.0 + pi * h2 * h2 * (3.0 * b - h2) / 3.0;
}

double truncated_inclusion_exclusion(const std::vector<Ball>& balls, double delta) {
  double total = 0.0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    total += ball_volume(balls[i], delta);
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      total -= pairwise_lens_area(balls[i], balls[j], delta);
    }
  }
  return total;
}

bool bodies_overlap(const ConvexBody& a, const ConvexBody& b, double tol) {
  if (dimension(a) != dimension(b)) throw InputError("bodies must share one dimension");
  const double scale = std::max(is_compact(a) ? length_scale(a) : 0.0,
                                is_compact(b) ? length_scale(b) : 0.0);
  const double slack = tol * (scale > 0.0 ? scale : 1.0);
  const auto* ba = std::get_if<Ball>(&a);
  const auto* bb = std::get_if<Ball>(&b);
  const auto* ha = std::get_if<HalfSpace>(&a);
  const auto* hb = std::get_if<HalfSpace>(&b);
  if (ba && bb) return (ba->center - bb->center).norm() < ba->radius + bb->radius - slack;
  if (ba && hb) return hb->signed_distance(ba->center) < ba->radius - slack;
  if (ha && bb) return ha->signed_distance(bb->center) < bb->radius - slack;
  if (ha && hb) {
    // Disjoint interiors only for opposite normals with separated offsets.
    const bool opposite = (ha->normal + hb->normal).norm() <= 1e-12;
    return !(opposite && ha->offset + hb->offset <= slack);
  }
  return minimax_signed({a, b}).value < -slack;
}

void require_disjoint(const std::vector<ConvexBody>& bodies, double tol) {
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    for (std::size_t j = i + 1; j < bodies.size(); ++j) {
      if (bodies_overlap(bodies[i], bodies[j], tol)) {
        throw InputError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                         " overlap");
      }
    }
  }
}

}  // namespace depletion
