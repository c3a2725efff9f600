#include "depletion/campaign.hpp"

#include "depletion/delta_max.hpp"
#include "depletion/errors.hpp"
#include "depletion/format.hpp"
#include "depletion/oracle.hpp"
#include "depletion/parallel.hpp"
#include "depletion/random_config.hpp"
#include "depletion/scene.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

namespace depletion {

namespace {

struct Outcome {
  double violation = 0.0;
  std::vector<std::string> problems;
  std::string scene;
};

using Check = std::function<Outcome(std::size_t, Rng&, const CampaignOptions&)>;

constexpr Range kRadii{0.1, 10.0};

std::string scene_of(const std::vector<ConvexBody>& bodies, std::optional<double> delta = {}) {
  Scene s;
  s.dimension = dimension(bodies.front());
  s.bodies = bodies;
  s.delta = delta;
  return serialize_scene(s);
}

std::vector<ConvexBody> bodies_of(const ConfigurationTriplet& cfg) {
  return {cfg[0], cfg[1], cfg[2]};
}

std::vector<ConvexBody> balls_as_bodies(const std::vector<Ball>& balls) {
  return {balls.begin(), balls.end()};
}

void require(Outcome& out, bool ok, const std::string& what) {
  if (!ok) out.problems.push_back(what);
}

std::string num(double x) { return format_double(x); }

Outcome check_tightness(std::size_t i, Rng& rng, const CampaignOptions&) {
  const Range gaps = i % 2 == 0 ? Range{0.0, 0.0} : Range{0.0, 2.0};
  const auto cfg = random_config(rng, kRadii, gaps, i % 3 == 2 ? 3 : 2);
  Outcome out;
  out.scene = scene_of(bodies_of(cfg));
  const double d = delta_max(cfg).delta_max;
  const double sharp = kTripletFactor * cfg.min_radius();
  const double contact = descartes_contact_radius(cfg[0].radius, cfg[1].radius, cfg[2].radius);
  out.violation = std::max({0.0, sharp - d, contact - d});
  require(out, d >= sharp - 1e-9, "delta_max " + num(d) + " below (2/sqrt3-1) min R " + num(sharp));
  require(out, d >= contact - 1e-9, "delta_max " + num(d) + " below contact value " + num(contact));
  return out;
}

Outcome check_monotonicity(std::size_t, Rng& rng, const CampaignOptions&) {
  const auto cfg = random_config(rng, kRadii, {0.0, 2.0}, 2);
  const AngleMove move = random_angle_decrease(rng, cfg);
  Outcome out;
  out.scene = scene_of(bodies_of(move.after));
  const double before = delta_max(move.before).delta_max;
  const double after = delta_max(move.after).delta_max;
  out.violation = std::max(0.0, after - before);
  require(out, after <= before + 1e-9,
          "decreasing the angle at corner " + std::to_string(move.corner) + " from " +
              num(move.angle_before) + " to " + num(move.angle_after) + " raised delta_max from " +
              num(before) + " to " + num(after) + "; original scene " +
              scene_of(bodies_of(move.before)));
  return out;
}

Outcome check_descartes(std::size_t, Rng& rng, const CampaignOptions&) {
  const auto cfg = random_config(rng, kRadii, {0.0, 0.0}, 2);
  Outcome out;
  out.scene = scene_of(bodies_of(cfg));
  const double dc = descartes_contact_radius(cfg[0].radius, cfg[1].radius, cfg[2].radius);
  std::optional<double> inside;
  for (const auto& s : apollonius_solve(cfg)) {
    const auto w = barycentric(s.center, cfg[0].center, cfg[1].center, cfg[2].center);
    if (std::min({w[0], w[1], w[2]}) >= -1e-9) {
      inside = s.radius;
      break;
    }
  }
  if (!inside) {
    out.problems.push_back("no externally tangent circle centered inside the triangle");
    return out;
  }
  const double rel = std::abs(*inside - dc) / dc;
  const double rel_dm = std::abs(delta_max(cfg).delta_max - dc) / dc;
  out.violation = std::max(rel, rel_dm);
  require(out, rel <= 1e-10, "Apollonius " + num(*inside) + " vs contact formula " + num(dc));
  require(out, rel_dm <= 1e-10, "delta_max differs from contact formula " + num(dc));
  return out;
}

double distance_to_sides(const Vec2& p, const std::array<Vec2, 3>& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec2& a = c[i];
    const Vec2& b = c[(i + 1) % 3];
    const Vec2 d = b - a;
    const double s = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    best = std::min(best, (p - (a + s * d)).norm());
  }
  return best;
}

Outcome check_dichotomy(std::size_t i, Rng& rng, const CampaignOptions&) {
  static constexpr std::array<double, 4> kGapHi{0.0, 0.5, 2.0, 10.0};
  const auto cfg = random_config(rng, kRadii, {0.0, kGapHi[i % 4]}, 2);
  Outcome out;
  out.scene = scene_of(bodies_of(cfg));
  const double scale = cfg.max_radius();
  const double tol = 1e-9 * scale;
  const auto res = delta_max(cfg);
  const double d = res.delta_max;
  const Vec2 p = res.witness_point;
  const auto th = pairwise_thresholds(cfg);
  std::array<Vec2, 3> c{cfg[0].center, cfg[1].center, cfg[2].center};

  double excess = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    excess = std::max(excess, (p - c[k]).norm() - cfg[k].radius - d);
  }
  require(out, excess <= tol, "witness outside a dilation by " + num(excess));

  double bisection_error = 0.0;
  if (res.case_tag == CaseTag::ApolloniusInterior) {
    require(out, d >= th.largest() - tol, "interior case below the largest threshold");
    for (std::size_t k = 0; k < 3; ++k) {
      require(out, std::abs((p - c[k]).norm() - cfg[k].radius - d) <= tol,
              "witness not tangent to ball " + std::to_string(k));
    }
    const auto w = barycentric(p, c[0], c[1], c[2]);
    require(out, std::min({w[0], w[1], w[2]}) >= -1e-9, "tangent circle centered outside");
    bisection_error = std::abs(delta_star_by_bisection(cfg) - d);
    require(out, bisection_error <= tol, "bisection disagrees by " + num(bisection_error));
  } else {
    require(out, std::abs(d - th.largest()) <= tol, "boundary case differs from largest threshold");
    if (!res.degenerate) {
      require(out, distance_to_sides(p, c) <= tol, "boundary witness off the triangle sides");
    }
  }
  const double oracle_error = std::abs(minimax_delta(bodies_of(cfg)).value - d);
  require(out, oracle_error <= 1e-6 * scale, "minimax oracle differs by " + num(oracle_error));
  out.violation = std::max({excess, bisection_error, oracle_error}) / scale;
  return out;
}

Outcome check_plane_reduction(std::size_t, Rng& rng, const CampaignOptions&) {
  const auto cfg = random_config(rng, kRadii, {0.0, 2.0}, 3);
  Outcome out;
  out.scene = scene_of(bodies_of(cfg));
  const double scale = cfg.max_radius();
  const PlaneReduction plane = reduce_to_plane(cfg);
  double distance_error = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    require(out, plane.radii[a] == cfg[a].radius, "radius changed by the reduction");
    for (std::size_t b = a + 1; b < 3; ++b) {
      const double l = (cfg[a].center - cfg[b].center).norm();
      distance_error =
          std::max(distance_error, std::abs((plane.centers[a] - plane.centers[b]).norm() - l) / l);
    }
  }
  require(out, distance_error <= 1e-12, "center distance changed by " + num(distance_error));

  const double d3 = delta_max(cfg).delta_max;
  const auto tri = triangle_from_centers(cfg[0].center, cfg[1].center, cfg[2].center);
  const auto flat = triangle_config(plane.radii, 0, tri.side_lengths[2], tri.side_lengths[1],
                                    tri.angles[0]);
  const double planar_error = std::abs(delta_max(flat).delta_max - d3);
  require(out, planar_error <= 1e-9 * scale, "planar triangle answer differs by " + num(planar_error));

  const double oracle_error = std::abs(minimax_delta(bodies_of(cfg)).value - d3);
  require(out, oracle_error <= 1e-6 * scale, "3D minimax differs by " + num(oracle_error));

  for (int k = 0; k < 8; ++k) {
    Vec x(3);
    for (Eigen::Index j = 0; j < 3; ++j) x[j] = uniform(rng, -3.0 * scale, 3.0 * scale);
    const Vec xp = plane.embedding.project(x);
    for (std::size_t b = 0; b < 3; ++b) {
      require(out, dist_point_ball(xp, cfg[b]) <= dist_point_ball(x, cfg[b]) + 1e-12 * scale,
              "projection increased a distance");
    }
  }
  out.violation = std::max(planar_error, oracle_error) / scale;
  return out;
}

Outcome check_inclusion_exclusion(std::size_t i, Rng& rng, const CampaignOptions& opt) {
  const auto cfg = random_config(rng, {0.5, 2.0}, {0.0, 1.0}, i % 2 == 0 ? 2 : 3);
  const double delta = 0.9 * delta_max(cfg).delta_max;
  Outcome out;
  out.scene = scene_of(bodies_of(cfg), delta);
  const std::vector<Ball> balls{cfg[0], cfg[1], cfg[2]};
  const auto est = union_volume_mc(balls_as_bodies(balls), delta, opt.mc_samples, rng(), 1);
  const double truncated = truncated_inclusion_exclusion(balls, delta);
  const double z = std::abs(est.volume - truncated) / est.std_error;
  out.violation = z;
  require(out, z <= 3.0,
          "Monte Carlo union " + num(est.volume) + " +- " + num(est.std_error) +
              " vs truncated inclusion-exclusion " + num(truncated));
  return out;
}

Outcome check_wall(std::size_t i, Rng& rng, const CampaignOptions&) {
  static constexpr std::array<double, 3> kGapHi{0.0, 1.0, 5.0};
  const Eigen::Index n = i % 2 == 0 ? 2 : 3;
  const double g = kGapHi[i % 3];
  const double r1 = std::exp(uniform(rng, std::log(kRadii.lo), std::log(kRadii.hi)));
  const double r2 = std::exp(uniform(rng, std::log(kRadii.lo), std::log(kRadii.hi)));
  const double h1 = r1 + uniform(rng, 0.0, g);
  const double h2 = r2 + uniform(rng, 0.0, g);
  const double reach = r1 + r2 + uniform(rng, 0.0, g);
  const double dx = std::sqrt(std::max(0.0, reach * reach - (h2 - h1) * (h2 - h1)));
  const Eigen::MatrixXd q = random_rotation(rng, n);
  Vec c1 = Vec::Zero(n);
  Vec c2 = Vec::Zero(n);
  Vec nrm = Vec::Zero(n);
  c1[1] = h1;
  c2[0] = dx;
  c2[1] = h2;
  nrm[1] = 1.0;
  const Ball b1(q * c1, r1);
  const Ball b2(q * c2, r2);
  const HalfSpace wall(q * nrm, 0.0);
  const std::vector<ConvexBody> bodies{b1, b2, wall};

  Outcome out;
  out.scene = scene_of(bodies);
  const double scale = std::max(r1, r2);
  const auto res = delta_max_wall(b1, b2, wall);
  const double d = res.delta_max;
  double excess = 0.0;
  for (const auto& b : bodies) excess = std::max(excess, signed_distance(b, res.witness_point) - d);
  require(out, excess <= 1e-9 * scale, "witness outside a dilation by " + num(excess));
  const double bound = kWallFactor * std::min(r1, r2);
  require(out, d >= bound - 1e-9 * scale, "delta_max " + num(d) + " below min R / 4");
  const double oracle_error = std::abs(minimax_delta(bodies).value - d);
  require(out, oracle_error <= 1e-6 * scale, "minimax oracle differs by " + num(oracle_error));
  out.violation = std::max(excess, oracle_error) / scale;
  return out;
}

struct CampaignDef {
  std::string_view name;
  std::size_t default_size;
  Check check;
};

const std::vector<CampaignDef>& definitions() {
  static const std::vector<CampaignDef> defs{
      {"tightness", 10000, check_tightness},
      {"monotonicity", 1000, check_monotonicity},
      {"descartes", 1000, check_descartes},
      {"dichotomy", 1000, check_dichotomy},
      {"plane-reduction", 100, check_plane_reduction},
      {"inclusion-exclusion", 20, check_inclusion_exclusion},
      {"wall", 1000, check_wall},
  };
  return defs;
}

const CampaignDef& find_campaign(std::string_view name) {
  for (const auto& d : definitions()) {
    if (d.name == name) return d;
  }
  std::string known;
  for (const auto& d : definitions()) known += (known.empty() ? "" : ", ") + std::string(d.name);
  throw InputError("unknown campaign '" + std::string(name) + "' (known: " + known + ")");
}

// Equal balls in mutual contact above the threshold: the triple overlap makes
// the Monte Carlo union exceed the truncated inclusion-exclusion sum.
std::optional<FailureRecord> contact_overlap_check(const CampaignOptions& opt, std::size_t index,
                                                   unsigned threads) {
  const double delta = 1.2 * kTripletFactor;
  const std::vector<Ball> balls{Ball(Vec2(0.0, 0.0), 1.0), Ball(Vec2(2.0, 0.0), 1.0),
                                Ball(Vec2(1.0, std::sqrt(3.0)), 1.0)};
  const std::uint64_t seed = stream_seed(opt.seed, index);
  const auto est =
      union_volume_mc(balls_as_bodies(balls), delta, opt.contact_samples, seed, threads);
  const double truncated = truncated_inclusion_exclusion(balls, delta);
  const double z = (est.volume - truncated) / est.std_error;
  if (z > 3.0) return std::nullopt;
  return FailureRecord{index, seed, z,
                       "contact triplet at delta = 1.2 (2/sqrt3-1) R: union " + num(est.volume) +
                           " +- " + num(est.std_error) + " does not exceed truncated sum " +
                           num(truncated) + " by 3 standard errors",
                       scene_of(balls_as_bodies(balls), delta)};
}

}  // namespace

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : definitions()) out.emplace_back(d.name);
    return out;
  }();
  return names;
}

std::size_t default_campaign_size(std::string_view name) {
  return find_campaign(name).default_size;
}

CampaignReport run_campaign(std::string_view name, const CampaignOptions& options) {
  const CampaignDef& def = find_campaign(name);
  const std::size_t n = options.n_configs > 0 ? options.n_configs : def.default_size;
  std::vector<Outcome> outcomes(n);
  std::vector<std::uint64_t> seeds(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        seeds[i] = stream_seed(options.seed, i);
        Rng rng(seeds[i]);
        try {
          outcomes[i] = def.check(i, rng, options);
        } catch (const std::exception& e) {
          outcomes[i].problems.push_back(std::string("exception: ") + e.what());
        }
      },
      options.threads);

  CampaignReport report;
  report.name = std::string(def.name);
  report.configurations = n;
  report.seed = options.seed;
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome& o = outcomes[i];
    report.max_violation = std::max(report.max_violation, o.violation);
    if (o.problems.empty()) continue;
    std::string detail;
    for (const auto& p : o.problems) detail += (detail.empty() ? "" : "; ") + p;
    report.failures.push_back({i, seeds[i], o.violation, detail, o.scene});
  }
  if (def.name == "inclusion-exclusion") {
    report.configurations += 1;
    if (auto f = contact_overlap_check(options, n, options.threads)) {
      report.failures.push_back(*f);
    }
  }
  return report;
}

std::string format_report(const CampaignReport& r) {
  std::ostringstream out;
  out << "campaign: " << r.name << '\n'
      << "configurations: " << r.configurations << '\n'
      << "seed: " << r.seed << '\n'
      << "max_violation: " << format_double(r.max_violation) << '\n'
      << "failures: " << r.failures.size() << '\n';
  for (const auto& f : r.failures) {
    out << "failure index=" << f.index << " seed=" << f.seed
        << " violation=" << format_double(f.violation) << " detail=\"" << f.detail
        << "\" scene=" << f.scene << '\n';
  }
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace depletion
