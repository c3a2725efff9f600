#include "depletion/scene.hpp"

#include "depletion/errors.hpp"
#include "depletion/oracle.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace depletion {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) throw InputError("unknown key '" + item.key() + "' in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw InputError(where + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw InputError(where + "." + key + " must be a number");
  return v.get<double>();
}

Vec vector_of(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw InputError(where + " must be a nonempty array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw InputError(where + " must contain numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

Vec vector_field(const json& obj, const char* key, const std::string& where, Eigen::Index n) {
  if (!obj.contains(key)) throw InputError(where + " is missing '" + key + "'");
  Vec v = vector_of(obj.at(key), where + "." + key);
  if (v.size() != n) {
    throw InputError(where + "." + key + " has " + std::to_string(v.size()) +
                     " entries, expected " + std::to_string(n));
  }
  return v;
}

std::vector<Vec2> vertices_field(const json& obj, const std::string& where) {
  if (!obj.contains("vertices") || !obj.at("vertices").is_array()) {
    throw InputError(where + " needs a 'vertices' array");
  }
  std::vector<Vec2> out;
  for (const auto& v : obj.at("vertices")) {
    const Vec p = vector_of(v, where + ".vertices");
    if (p.size() != 2) throw InputError(where + ".vertices entries must have 2 coordinates");
    out.emplace_back(p[0], p[1]);
  }
  return out;
}

ConvexBody parse_body(const json& j, Eigen::Index n, std::size_t index) {
  const std::string where = "bodies[" + std::to_string(index) + "]";
  check_keys(j, {"type", "params"}, where);
  if (!j.contains("type") || !j.at("type").is_string()) {
    throw InputError(where + " needs a string 'type'");
  }
  if (!j.contains("params")) throw InputError(where + " needs 'params'");
  const std::string type = j.at("type").get<std::string>();
  const json& p = j.at("params");
  const std::string pw = where + ".params";
  auto planar_only = [&] {
    if (n != 2) throw InputError(where + ": type '" + type + "' requires dimension 2");
  };

  if (type == "ball") {
    check_keys(p, {"center", "radius"}, pw);
    return Ball(vector_field(p, "center", pw, n), number(p, "radius", pw));
  }
  if (type == "halfspace") {
    check_keys(p, {"normal", "offset"}, pw);
    return HalfSpace(vector_field(p, "normal", pw, n), number(p, "offset", pw));
  }
  if (type == "ellipse" || type == "ellipsoid") {
    if (type == "ellipse") planar_only();
    if (type == "ellipsoid" && n != 3) {
      throw InputError(where + ": type 'ellipsoid' requires dimension 3");
    }
    check_keys(p, {"center", "semi_axes", "angle", "axes"}, pw);
    const Vec center = vector_field(p, "center", pw, n);
    const Vec semi = vector_field(p, "semi_axes", pw, n);
    if (p.contains("angle") && p.contains("axes")) {
      throw InputError(pw + " takes either 'angle' or 'axes'");
    }
    Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n);
    if (p.contains("angle")) {
      planar_only();
      const double a = number(p, "angle", pw);
      dirs << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    } else if (p.contains("axes")) {
      const json& ax = p.at("axes");
      if (!ax.is_array() || ax.size() != static_cast<std::size_t>(n)) {
        throw InputError(pw + ".axes must list " + std::to_string(n) + " directions");
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        const Vec d = vector_of(ax[static_cast<std::size_t>(k)], pw + ".axes");
        if (d.size() != n) throw InputError(pw + ".axes entries have the wrong dimension");
        dirs.col(k) = d;
      }
    }
    return Ellipsoid(center, semi, dirs);
  }
  if (type == "polygon") {
    planar_only();
    check_keys(p, {"vertices"}, pw);
    return ConvexPolygon(vertices_field(p, pw));
  }
  if (type == "rounded_polygon") {
    planar_only();
    check_keys(p, {"vertices", "radius"}, pw);
    return RoundedPolygon(ConvexPolygon(vertices_field(p, pw)), number(p, "radius", pw));
  }
  throw InputError(where + ": unknown body type '" + type + "'");
}

json to_array(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json vertices_json(const std::vector<Vec2>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(json::array({v.x(), v.y()}));
  return a;
}

json body_json(const ConvexBody& body) {
  json j;
  j["type"] = std::string(type_name(body));
  json& p = j["params"];
  if (const auto* b = std::get_if<Ball>(&body)) {
    p["center"] = to_array(b->center);
    p["radius"] = b->radius;
  } else if (const auto* h = std::get_if<HalfSpace>(&body)) {
    p["normal"] = to_array(h->normal);
    p["offset"] = h->offset;
  } else if (const auto* e = std::get_if<Ellipsoid>(&body)) {
    p["center"] = to_array(e->center);
    p["semi_axes"] = to_array(e->semi_axes);
    json axes = json::array();
    for (Eigen::Index k = 0; k < e->axes.cols(); ++k) axes.push_back(to_array(e->axes.col(k)));
    p["axes"] = axes;
  } else if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
    p["vertices"] = vertices_json(poly->vertices);
  } else if (const auto* r = std::get_if<RoundedPolygon>(&body)) {
    p["vertices"] = vertices_json(r->polygon.vertices);
    p["radius"] = r->radius;
  }
  return j;
}

}  // namespace

Scene parse_scene(std::string_view text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scene is not valid JSON: ") + e.what());
  }
  check_keys(doc, {"dimension", "bodies", "delta", "depletant", "seed"}, "scene");
  Scene s;
  if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer()) {
    throw InputError("scene needs an integer 'dimension'");
  }
  s.dimension = doc.at("dimension").get<Eigen::Index>();
  if (s.dimension < 2) throw InputError("scene dimension must be at least 2");
  if (!doc.contains("bodies") || !doc.at("bodies").is_array()) {
    throw InputError("scene needs a 'bodies' array");
  }
  const json& bodies = doc.at("bodies");
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    s.bodies.push_back(parse_body(bodies[i], s.dimension, i));
  }
  if (doc.contains("delta")) {
    s.delta = number(doc, "delta", "scene");
    if (!(*s.delta >= 0.0)) throw InputError("scene delta must be nonnegative");
  }
  if (doc.contains("depletant")) {
    const json& d = doc.at("depletant");
    check_keys(d, {"R", "delta", "rho_p", "kT"}, "depletant");
    const double kt = d.contains("kT") ? number(d, "kT", "depletant") : 1.0;
    s.depletant = AOParameters(number(d, "R", "depletant"), number(d, "delta", "depletant"),
                               number(d, "rho_p", "depletant"), kt);
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      throw InputError("scene seed must be a nonnegative integer");
    }
    s.seed = doc.at("seed").get<std::uint64_t>();
  }
  require_disjoint(s.bodies, tol);
  return s;
}

Scene load_scene(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), tol);
}

std::string serialize_scene(const Scene& scene) {
  json doc;
  doc["dimension"] = scene.dimension;
  doc["bodies"] = json::array();
  for (const auto& b : scene.bodies) doc["bodies"].push_back(body_json(b));
  if (scene.delta) doc["delta"] = *scene.delta;
  if (scene.depletant) {
    const auto& p = *scene.depletant;
    doc["depletant"] = {{"R", p.R}, {"delta", p.delta}, {"rho_p", p.rho_p}, {"kT", p.kT}};
  }
  if (scene.seed) doc["seed"] = *scene.seed;
  return doc.dump();
}

std::vector<Ball> scene_balls(const Scene& scene) {
  std::vector<Ball> out;
  for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
    const auto* b = std::get_if<Ball>(&scene.bodies[i]);
    if (!b) {
      throw InputError("body " + std::to_string(i) + " is a " +
                       std::string(type_name(scene.bodies[i])) + ", expected a ball");
    }
    out.push_back(*b);
  }
  return out;
}

}  // namespace depletion
