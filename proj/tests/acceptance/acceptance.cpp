// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "depletion/campaign.hpp"
#include "depletion/delta_max.hpp"
#include "depletion/format.hpp"
#include "depletion/geometry.hpp"
#include "depletion/oracle.hpp"
#include "depletion/potential.hpp"
#include "depletion/random_config.hpp"
#include "depletion/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace depletion;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20240611;

int failures = 0;

void run(int id, const char* name, double time_limit_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < time_limit_s;
  const bool pass = v.ok && in_time;
  if (!pass) ++failures;
  std::printf("criterion %d %s: %s | %s | time %.4gs (limit %gs%s)\n", id, name,
              pass ? "PASS" : "FAIL", v.detail.c_str(), secs, time_limit_s,
              in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string num(double x) { return format_double(x); }

ConfigurationTriplet unit_contact(double r) {
  return ConfigurationTriplet(Ball(Vec2(0.0, 0.0), r), Ball(Vec2(2.0 * r, 0.0), r),
                              Ball(Vec2(r, std::sqrt(3.0) * r), r));
}

std::vector<ConvexBody> bodies_of(const ConfigurationTriplet& cfg) {
  return {cfg[0], cfg[1], cfg[2]};
}

Verdict campaign_verdict(const char* name, std::size_t n, const char* tol_label) {
  CampaignOptions opt;
  opt.n_configs = n;
  opt.seed = kSeed;
  const auto r = run_campaign(name, opt);
  Verdict v{r.passed(), r.name + " n=" + std::to_string(r.configurations) +
                            " failures=" + std::to_string(r.failures.size()) +
                            " max_violation=" + num(r.max_violation) + " tol=" + tol_label};
  if (!r.passed()) v.detail += "\n" + format_report(r);
  return v;
}

}  // namespace

int main() {
  // Mathematical value of (2/sqrt3 - 1).
  const double exact_tf = 0.15470053837925152902;

  run(1, "monodisperse critical radius", 1e-3, [&] {
    const auto cfg = unit_contact(1.0);
    const double d = delta_max(cfg).delta_max;
    const double err = std::abs(d - exact_tf);
    return Verdict{err <= 1e-12, "delta_max=" + num(d) + " abs_err=" + num(err) + " tol=1e-12"};
  });

  run(2, "wall critical radius", 1e-3, [&] {
    const double r = 1.0;
    const Ball b1(Vec2(0.0, r), r);
    const Ball b2(Vec2(2.0 * r, r), r);
    const HalfSpace wall(Vec2(0.0, 1.0), 0.0);
    const double d = delta_max_wall(b1, b2, wall).delta_max;
    const double err = std::abs(d - r / 4.0);
    const double limit = descartes_contact_radius(r, r, 1e6 * r);
    const double rel = std::abs(limit - r / 4.0) / (r / 4.0);
    return Verdict{err <= 1e-12 && rel <= 1e-5,
                   "delta_max_wall=" + num(d) + " abs_err=" + num(err) + " tol=1e-12; " +
                       "descartes(1,1,1e6)=" + num(limit) + " rel_err=" + num(rel) + " tol=1e-5"};
  });

  run(3, "Descartes vs Apollonius", 5.0, [] { return campaign_verdict("descartes", 1000, "1e-10"); });

  run(4, "oracle equivalence", 120.0, [] {
    Rng rng(kSeed);
    double worst2 = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto cfg = random_config(rng, {0.1, 10.0}, {0.0, i % 2 == 0 ? 0.5 : 5.0}, 2);
      const double err = std::abs(delta_max(cfg).delta_max - minimax_delta(bodies_of(cfg)).value);
      worst2 = std::max(worst2, err / cfg.max_radius());
    }
    double worst3 = 0.0;
    double worst_plane = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto cfg = random_config(rng, {0.1, 10.0}, {0.0, 2.0}, 3);
      const double scale = cfg.max_radius();
      const double direct = minimax_delta(bodies_of(cfg)).value;
      worst3 = std::max(worst3, std::abs(delta_max(cfg).delta_max - direct) / scale);
      const PlaneReduction plane = reduce_to_plane(cfg);
      const ConfigurationTriplet flat(Ball(plane.centers[0], plane.radii[0]),
                                      Ball(plane.centers[1], plane.radii[1]),
                                      Ball(plane.centers[2], plane.radii[2]));
      worst_plane = std::max(worst_plane, std::abs(delta_max(flat).delta_max - direct) / scale);
    }
    const double tol = 1e-6;
    return Verdict{worst2 <= tol && worst3 <= tol && worst_plane <= tol,
                   "2D max_err=" + num(worst2) + " 3D max_err=" + num(worst3) +
                       " plane-reduced vs 3D minimax max_err=" + num(worst_plane) + " tol=1e-6"};
  });

  run(5, "triple-emptiness equivalence", 120.0, [&] {
    Rng rng(kSeed + 5);
    int nonempty = 0;
    for (int i = 0; i < 10000; ++i) {
      const Range gaps{0.0, i % 2 == 0 ? 0.0 : 3.0};
      const auto cfg = random_config(rng, {0.1, 10.0}, gaps, i % 5 == 4 ? 3 : 2);
      if (!triple_empty(bodies_of(cfg), 0.99 * exact_tf * cfg.min_radius())) ++nonempty;
    }
    const bool contact_empty = triple_empty(bodies_of(unit_contact(1.0)), 1.01 * exact_tf);
    return Verdict{nonempty == 0 && !contact_empty,
                   "sufficiency: " + std::to_string(nonempty) +
                       "/10000 nonempty at 0.99 delta_cr; necessity: contact triple at 1.01 "
                       "delta_cr " + (contact_empty ? "empty" : "nonempty")};
  });

  run(6, "monotonicity", 30.0, [] { return campaign_verdict("monotonicity", 1000, "1e-9"); });

  run(7, "contact lower bound", 60.0, [] { return campaign_verdict("tightness", 10000, "1e-9"); });

  run(8, "inclusion-exclusion exactness", 120.0, [&] {
    Rng rng(kSeed + 8);
    int outside = 0;
    double worst_z = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto cfg = random_config(rng, {0.5, 2.0}, {0.0, 1.0}, i % 2 == 0 ? 2 : 3);
      const double delta = 0.9 * delta_max(cfg).delta_max;
      const std::vector<Ball> balls{cfg[0], cfg[1], cfg[2]};
      const auto est = union_volume_mc(bodies_of(cfg), delta, 1'000'000, rng());
      const double z =
          std::abs(est.volume - truncated_inclusion_exclusion(balls, delta)) / est.std_error;
      worst_z = std::max(worst_z, z);
      if (z > 3.0) ++outside;
    }

    // Above the threshold: a triple overlap exists, so the truncated sum
    // falls short of the union. 2D keeps 1e8 samples affordable.
    const double delta = 1.2 * exact_tf;
    const auto cfg = unit_contact(1.0);
    const std::vector<Ball> balls{cfg[0], cfg[1], cfg[2]};
    const auto est = union_volume_mc(bodies_of(cfg), delta, 100'000'000, rng());
    const double truncated = truncated_inclusion_exclusion(balls, delta);
    const double z = (est.volume - truncated) / est.std_error;
    return Verdict{outside == 0 && z > 3.0,
                   "below threshold: " + std::to_string(outside) +
                       "/20 outside 3 sigma (max |z|=" + num(worst_z) +
                       "); contact at 1.2 delta_cr: union " + num(est.volume) + " +- " +
                       num(est.std_error) + " exceeds truncated " + num(truncated) +
                       " by z=" + num(z) + " (need > 3)"};
  });

  run(9, "potential consistency", 1.0, [] {
    double worst = 0.0;
    double end_value = 0.0;
    for (const AOParameters& p : {AOParameters(1.0, 0.1, 1.0, 1.0), AOParameters(2.5, 0.35, 3.0, 0.7)}) {
      const double lo = 2.0 * p.R;
      const double hi = 2.0 * p.R + 2.0 * p.delta;
      // 99 interior points plus the endpoint, where both sides vanish.
      for (int i = 0; i < 99; ++i) {
        const double r = lo + (hi - lo) * i / 99.0;
        const double lens = pairwise_lens_area(Ball(Eigen::Vector3d(0, 0, 0), p.R),
                                               Ball(Eigen::Vector3d(r, 0, 0), p.R), p.delta);
        const double want = -p.osmotic_pressure() * lens;
        worst = std::max(worst, std::abs(v_dep(r, p) - want) / std::abs(want));
      }
      end_value = std::max(end_value, std::abs(v_dep(hi, p)));
    }
    return Verdict{worst <= 1e-12 && end_value <= 1e-14,
                   "max_rel_err=" + num(worst) + " tol=1e-12 over 100-point grids; |v_dep(2R+2delta)|=" +
                       num(end_value) + " tol=1e-14"};
  });

  std::printf("acceptance: %s (%d failed)\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
