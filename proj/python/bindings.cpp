#include "depletion/body.hpp"
#include "depletion/campaign.hpp"
#include "depletion/criteria.hpp"
#include "depletion/delta_max.hpp"
#include "depletion/errors.hpp"
#include "depletion/oracle.hpp"
#include "depletion/potential.hpp"
#include "depletion/scene.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace depletion;

namespace {

ConfigurationTriplet triplet(const std::vector<Ball>& balls) {
  if (balls.size() != 3) throw InputError("expected exactly three balls");
  return {balls[0], balls[1], balls[2]};
}

std::string body_repr(const ConvexBody& b) {
  std::ostringstream out;
  out << "<" << type_name(b) << " in " << dimension(b) << "D>";
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Triple-overlap geometry of dilated convex bodies";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", input_error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_NotImplementedError);

  m.attr("TRIPLET_FACTOR") = kTripletFactor;
  m.attr("WALL_FACTOR") = kWallFactor;

  py::class_<Ball>(m, "Ball")
      .def(py::init<Vec, double>(), py::arg("center"), py::arg("radius"))
      .def_readonly("center", &Ball::center)
      .def_readonly("radius", &Ball::radius)
      .def("__repr__", [](const Ball& b) { return body_repr(b); });
  py::class_<HalfSpace>(m, "HalfSpace")
      .def(py::init<const Vec&, double>(), py::arg("normal"), py::arg("offset"))
      .def_readonly("normal", &HalfSpace::normal)
      .def_readonly("offset", &HalfSpace::offset)
      .def("__repr__", [](const HalfSpace& h) { return body_repr(h); });
  py::class_<Ellipsoid>(m, "Ellipsoid")
      .def(py::init<Vec, Vec, Eigen::MatrixXd>(), py::arg("center"), py::arg("semi_axes"),
           py::arg("axes"))
      .def_static("planar", &Ellipsoid::planar, py::arg("center"), py::arg("a"), py::arg("b"),
                  py::arg("angle") = 0.0)
      .def_readonly("center", &Ellipsoid::center)
      .def_readonly("semi_axes", &Ellipsoid::semi_axes)
      .def("__repr__", [](const Ellipsoid& e) { return body_repr(e); });
  py::class_<ConvexPolygon>(m, "ConvexPolygon")
      .def(py::init<std::vector<Vec2>>(), py::arg("vertices"))
      .def_readonly("vertices", &ConvexPolygon::vertices)
      .def("__repr__", [](const ConvexPolygon& p) { return body_repr(p); });
  py::class_<RoundedPolygon>(m, "RoundedPolygon")
      .def(py::init([](std::vector<Vec2> v, double rho) {
             return RoundedPolygon(ConvexPolygon(std::move(v)), rho);
           }),
           py::arg("vertices"), py::arg("radius"))
      .def_readonly("radius", &RoundedPolygon::radius)
      .def("__repr__", [](const RoundedPolygon& p) { return body_repr(p); });

  m.def("rolling_radius", &rolling_radius, py::arg("body"));
  m.def("signed_distance", &signed_distance, py::arg("body"), py::arg("x"));

  py::enum_<CaseTag>(m, "CaseTag")
      .value("BoundaryContact", CaseTag::BoundaryContact)
      .value("ApolloniusInterior", CaseTag::ApolloniusInterior);

  py::class_<DeltaMaxResult>(m, "DeltaMaxResult")
      .def_readonly("delta_max", &DeltaMaxResult::delta_max)
      .def_readonly("witness_point", &DeltaMaxResult::witness_point)
      .def_readonly("case_tag", &DeltaMaxResult::case_tag)
      .def_readonly("apollonius_radius", &DeltaMaxResult::apollonius_radius)
      .def_readonly("degenerate", &DeltaMaxResult::degenerate);

  m.def(
      "pairwise_thresholds",
      [](const std::vector<Ball>& balls) {
        const auto t = pairwise_thresholds(triplet(balls));
        return std::make_tuple(t.delta, t.order);
      },
      py::arg("balls"),
      "Per-corner thresholds (opposite pair) and the ascending order of corners.");
  m.def("descartes_contact_radius", &descartes_contact_radius, py::arg("r1"), py::arg("r2"),
        py::arg("r3"));
  m.def(
      "apollonius_solve",
      [](const std::vector<Ball>& balls) {
        std::vector<std::tuple<Vec2, double, std::array<int, 3>>> out;
        for (const auto& s : apollonius_solve(triplet(balls))) {
          out.emplace_back(s.center, s.radius, s.tangency_signs);
        }
        return out;
      },
      py::arg("balls"), "Externally tangent circles as (center, radius, signs).");
  m.def(
      "delta_max", [](const std::vector<Ball>& balls) { return delta_max(triplet(balls)); },
      py::arg("balls"));
  m.def(
      "delta_max_wall",
      [](const Ball& a, const Ball& b, const HalfSpace& w) { return delta_max_wall(a, b, w); },
      py::arg("ball1"), py::arg("ball2"), py::arg("wall"));

  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("threshold", &CriterionReport::threshold)
      .def_readonly("satisfied", &CriterionReport::satisfied)
      .def_readonly("strict", &CriterionReport::strict)
      .def_readonly("limiting_body_index", &CriterionReport::limiting_body_index)
      .def_readonly("usable", &CriterionReport::usable)
      .def_readonly("warning", &CriterionReport::warning);
  m.def("theorem1_check", &theorem1_check, py::arg("bodies"), py::arg("delta"));
  m.def("wall_check", &wall_check, py::arg("bodies"), py::arg("delta"));
  m.def(
      "largest_improved_delta",
      [](const ConvexBody& body, const ConvexBody& inner, std::size_t samples) {
        return largest_improved_delta(body, inner, samples);
      },
      py::arg("body"), py::arg("inner"), py::arg("samples") = 0);

  m.def(
      "minimax_delta",
      [](const std::vector<ConvexBody>& bodies) {
        const auto r = minimax_delta(bodies);
        return std::make_tuple(r.value, r.argmin);
      },
      py::arg("bodies"), "Smallest delta with a common point, and that point.");
  m.def("triple_empty", &triple_empty, py::arg("bodies"), py::arg("delta"),
        py::arg("grid_resolution") = 0.0);
  m.def(
      "union_volume_mc",
      [](const std::vector<ConvexBody>& bodies, double delta, std::uint64_t n,
         std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        const auto e = union_volume_mc(bodies, delta, n, seed, threads);
        return std::make_tuple(e.volume, e.std_error);
      },
      py::arg("bodies"), py::arg("delta"), py::arg("n_samples"), py::arg("seed"),
      py::arg("threads") = 0);
  m.def("pairwise_lens_area", &pairwise_lens_area, py::arg("ball1"), py::arg("ball2"),
        py::arg("delta"));
  m.def("truncated_inclusion_exclusion", &truncated_inclusion_exclusion, py::arg("balls"),
        py::arg("delta"));

  py::class_<AOParameters>(m, "AOParameters")
      .def(py::init<double, double, double, double>(), py::arg("R"), py::arg("delta"),
           py::arg("rho_p"), py::arg("kT") = 1.0)
      .def_readonly("R", &AOParameters::R)
      .def_readonly("delta", &AOParameters::delta)
      .def_readonly("rho_p", &AOParameters::rho_p)
      .def_readonly("kT", &AOParameters::kT)
      .def("osmotic_pressure", &AOParameters::osmotic_pressure);
  m.def("v_dep", &v_dep, py::arg("r"), py::arg("params"));
  m.def("v_eff", &v_eff, py::arg("r"), py::arg("params"));
  m.def("exactness_guard", &exactness_guard, py::arg("params"));
  m.def(
      "potential_table",
      [](const AOParameters& p, double lo, double hi, std::size_t n) {
        const auto t = potential_table(p, lo, hi, n);
        return std::make_tuple(t.r_values, t.v_eff_values, t.v_dep_values);
      },
      py::arg("params"), py::arg("r_min"), py::arg("r_max"), py::arg("n_points"));

  m.def(
      "parse_scene",
      [](const std::string& text) {
        const Scene s = parse_scene(text);
        py::dict d;
        d["dimension"] = s.dimension;
        d["bodies"] = s.bodies;
        d["delta"] = s.delta;
        d["seed"] = s.seed;
        return d;
      },
      py::arg("text"));

  m.def("campaign_names", &campaign_names);
  m.def(
      "run_campaign",
      [](const std::string& name, std::size_t n, std::uint64_t seed, unsigned threads) {
        CampaignOptions opt;
        opt.n_configs = n;
        opt.seed = seed;
        opt.threads = threads;
        CampaignReport r;
        {
          py::gil_scoped_release release;
          r = run_campaign(name, opt);
        }
        return std::make_tuple(r.passed(), format_report(r));
      },
      py::arg("name"), py::arg("n_configs") = 0, py::arg("seed") = 0, py::arg("threads") = 0,
      "Returns (passed, report text).");
}
