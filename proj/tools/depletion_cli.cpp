// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 input or usage error, 3 numerical failure.

#include "depletion/campaign.hpp"
#include "depletion/criteria.hpp"
#include "depletion/delta_max.hpp"
#include "depletion/errors.hpp"
#include "depletion/format.hpp"
#include "depletion/oracle.hpp"
#include "depletion/potential.hpp"
#include "depletion/scene.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace depletion;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::string scene_path;
  std::optional<std::uint64_t> seed;
  double tol = kDefaultTolerance;
  std::string out_path;
  std::string format = "text";
};

Scene require_scene(const Globals& g) {
  if (g.scene_path.empty()) throw InputError("--scene is required for this command");
  return load_scene(g.scene_path, g.tol);
}

std::string vector_text(const Vec& v, char sep) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += sep;
    s += format_double(v[i]);
  }
  return s;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string run_delta_max(const Globals& g) {
  const Scene scene = require_scene(g);
  std::vector<Ball> balls;
  std::vector<HalfSpace> walls;
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
    if (const auto* b = std::get_if<Ball>(&scene.bodies[i])) {
      balls.push_back(*b);
    } else if (const auto* h = std::get_if<HalfSpace>(&scene.bodies[i])) {
      walls.push_back(*h);
    } else {
      throw InputError("delta-max takes balls and at most one half-space; body " +
                       std::to_string(i) + " is a " + std::string(type_name(scene.bodies[i])));
    }
  }
  DeltaMaxResult r;
  if (balls.size() == 3 && walls.empty()) {
    r = delta_max(ConfigurationTriplet(balls[0], balls[1], balls[2], g.tol), g.tol);
  } else if (balls.size() == 2 && walls.size() == 1) {
    r = delta_max_wall(balls[0], balls[1], walls[0], g.tol);
  } else {
    throw InputError("delta-max needs three balls, or two balls and one half-space");
  }

  std::ostringstream out;
  if (g.format == "csv") {
    out << "delta_max,case,degenerate";
    for (Eigen::Index i = 0; i < r.witness_point.size(); ++i) out << ",witness_" << i;
    out << '\n'
        << format_double(r.delta_max) << ',' << to_string(r.case_tag) << ','
        << yes_no(r.degenerate) << ',' << vector_text(r.witness_point, ',') << '\n';
  } else {
    out << "delta_max: " << format_double(r.delta_max) << '\n'
        << "case: " << to_string(r.case_tag) << '\n'
        << "witness: " << vector_text(r.witness_point, ' ') << '\n'
        << "degenerate: " << yes_no(r.degenerate) << '\n';
    if (r.apollonius_radius) {
      out << "apollonius_radius: " << format_double(*r.apollonius_radius) << '\n';
    }
  }
  return out.str();
}

std::string run_criterion(const Globals& g, bool wall, std::optional<double> delta) {
  const Scene scene = require_scene(g);
  if (!delta) delta = scene.delta;
  if (!delta) throw InputError("criterion needs a depletion radius (scene 'delta' or --delta)");
  const CriterionReport r = wall ? wall_check(scene.bodies, *delta)
                                 : theorem1_check(scene.bodies, *delta);
  std::ostringstream out;
  if (g.format == "csv") {
    out << "delta,threshold,satisfied,strict,limiting_body,usable,warning\n"
        << format_double(*delta) << ',' << format_double(r.threshold) << ','
        << yes_no(r.satisfied) << ',' << yes_no(r.strict) << ',' << r.limiting_body_index << ','
        << yes_no(r.usable) << ",\"" << r.warning << "\"\n";
  } else {
    out << "criterion: " << (wall ? "wall" : "triplet") << '\n'
        << "delta: " << format_double(*delta) << '\n'
        << "threshold: " << format_double(r.threshold) << '\n'
        << "satisfied: " << yes_no(r.satisfied) << '\n'
        << "strict: " << yes_no(r.strict) << '\n'
        << "limiting_body: " << r.limiting_body_index << '\n'
        << "usable: " << yes_no(r.usable) << '\n';
    if (!r.warning.empty()) out << "warning: " << r.warning << '\n';
  }
  return out.str();
}

struct PotentialArgs {
  std::optional<double> R, delta, rho_p, kT, r_min, r_max;
  std::size_t n_points = 101;
};

std::string run_potential(const Globals& g, const PotentialArgs& a) {
  AOParameters p;
  if (!g.scene_path.empty()) {
    const Scene scene = require_scene(g);
    if (scene.depletant) p = *scene.depletant;
  }
  p = AOParameters(a.R.value_or(p.R), a.delta.value_or(p.delta), a.rho_p.value_or(p.rho_p),
                   a.kT.value_or(p.kT));
  const double r_min = a.r_min.value_or(p.sigma_cc());
  const double r_max = a.r_max.value_or(p.range());
  const PotentialTable t = potential_table(p, r_min, r_max, a.n_points);
  std::ostringstream out;
  if (g.format == "csv") {
    write_csv(out, t);
  } else {
    out << "r v_eff v_dep\n";
    for (std::size_t i = 0; i < t.r_values.size(); ++i) {
      out << format_double(t.r_values[i]) << ' ' << format_double(t.v_eff_values[i]) << ' '
          << format_double(t.v_dep_values[i]) << '\n';
    }
  }
  return out.str();
}

struct VerifyArgs {
  std::string campaign;
  std::size_t n_configs = 0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t contact_samples = 100'000'000;
  unsigned threads = 0;
};

std::string run_verify(const Globals& g, const VerifyArgs& a, bool& passed) {
  CampaignOptions opt;
  opt.n_configs = a.n_configs;
  opt.seed = g.seed.value_or(0);
  opt.mc_samples = a.samples;
  opt.contact_samples = a.contact_samples;
  opt.threads = a.threads;
  const CampaignReport r = run_campaign(a.campaign, opt);
  passed = r.passed();
  return format_report(r);
}

std::string run_union_volume(const Globals& g, std::optional<double> delta,
                             std::uint64_t samples, unsigned threads) {
  const Scene scene = require_scene(g);
  if (!delta) delta = scene.delta;
  if (!delta) delta = 0.0;
  const std::uint64_t seed = g.seed ? *g.seed : scene.seed.value_or(0);
  const UnionVolumeEstimate est = union_volume_mc(scene.bodies, *delta, samples, seed, threads);

  std::optional<double> truncated;
  bool all_balls = true;
  for (const auto& b : scene.bodies) all_balls = all_balls && std::holds_alternative<Ball>(b);
  if (all_balls && (scene.dimension == 2 || scene.dimension == 3)) {
    truncated = truncated_inclusion_exclusion(scene_balls(scene), *delta);
  }

  std::ostringstream out;
  if (g.format == "csv") {
    out << "delta,volume,std_error,samples,seed,truncated_inclusion_exclusion\n"
        << format_double(*delta) << ',' << format_double(est.volume) << ','
        << format_double(est.std_error) << ',' << est.sample_count << ',' << est.seed << ','
        << (truncated ? format_double(*truncated) : std::string()) << '\n';
  } else {
    out << "delta: " << format_double(*delta) << '\n'
        << "volume: " << format_double(est.volume) << '\n'
        << "std_error: " << format_double(est.std_error) << '\n'
        << "samples: " << est.sample_count << '\n'
        << "seed: " << est.seed << '\n';
    if (truncated) out << "truncated_inclusion_exclusion: " << format_double(*truncated) << '\n';
  }
  return out.str();
}

void emit(const Globals& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + g.out_path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal depletion-shell radii, triplet criteria and depletion potentials"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--scene", g.scene_path, "Scene file (JSON)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Relative contact tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out_path, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "text"}));

  auto* cmd_delta = app.add_subcommand("delta-max", "Maximal shell radius of a scene");

  auto* cmd_crit = app.add_subcommand("criterion", "Check the triplet or wall criterion");
  bool wall = false;
  std::optional<double> crit_delta;
  cmd_crit->add_flag("--wall", wall, "Use the wall criterion");
  cmd_crit->add_option("--delta", crit_delta, "Depletion radius (overrides the scene)");

  auto* cmd_pot = app.add_subcommand("potential", "Tabulate the depletion pair potential");
  PotentialArgs pa;
  cmd_pot->add_option("--R", pa.R, "Colloid radius (default 1)");
  cmd_pot->add_option("--delta", pa.delta, "Depletion radius (default 0.1)");
  cmd_pot->add_option("--rho-p", pa.rho_p, "Depletant number density (default 1)");
  cmd_pot->add_option("--kT", pa.kT, "Thermal energy (default 1)");
  cmd_pot->add_option("--r-min", pa.r_min, "Smallest separation (default 2R)");
  cmd_pot->add_option("--r-max", pa.r_max, "Largest separation (default 2R + 2 delta)");
  cmd_pot->add_option("--n-points", pa.n_points, "Number of separations");

  auto* cmd_verify = app.add_subcommand("verify", "Run a verification campaign");
  VerifyArgs va;
  std::string names;
  for (const auto& n : campaign_names()) names += (names.empty() ? "" : ", ") + n;
  cmd_verify->add_option("campaign", va.campaign, "One of: " + names)->required();
  cmd_verify->add_option("--n-configs", va.n_configs, "Configurations (default per campaign)");
  cmd_verify->add_option("--samples", va.samples, "Monte Carlo samples per configuration");
  cmd_verify->add_option("--contact-samples", va.contact_samples,
                         "Samples for the triple-overlap contact check");
  cmd_verify->add_option("--threads", va.threads, "Worker threads (0: hardware)");

  auto* cmd_union = app.add_subcommand("union-volume", "Monte Carlo volume of the dilated union");
  std::optional<double> union_delta;
  std::uint64_t union_samples = 1'000'000;
  unsigned union_threads = 0;
  cmd_union->add_option("--delta", union_delta, "Dilation radius (overrides the scene)");
  cmd_union->add_option("--samples", union_samples, "Number of samples");
  cmd_union->add_option("--threads", union_threads, "Worker threads (0: hardware)");

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitInput;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*cmd_delta) {
      emit(g, run_delta_max(g));
    } else if (*cmd_crit) {
      emit(g, run_criterion(g, wall, crit_delta));
    } else if (*cmd_pot) {
      emit(g, run_potential(g, pa));
    } else if (*cmd_verify) {
      bool passed = false;
      emit(g, run_verify(g, va, passed));
      return passed ? kExitOk : kExitVerifyFailed;
    } else if (*cmd_union) {
      emit(g, run_union_volume(g, union_delta, union_samples, union_threads));
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    // InputError, CapabilityError and I/O problems.
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
