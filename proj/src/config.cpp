#include "retroscat/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "retroscat/boundary.hpp"
#include "retroscat/diagnostics.hpp"

namespace retroscat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "missing");
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  return number(obj, key, path);
}

int integer(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool boolean_or(const json& obj, const char* key, bool fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected true or false");
  return v.get<bool>();
}

std::pair<double, double> pair_of(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(path + "." + key, "expected [lower, upper]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Vec2 point_or(const json& obj, const char* key, Vec2 fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  auto [a, b] = pair_of(obj, key, path);
  return {a, b};
}

PhysicalParams parse_physics(const json& j) {
  const std::string path = "physics";
  try {
    return derive_params(number(j, "omega", path), number_or(j, "eps0", 1.0, path),
                         number_or(j, "mu0", 1.0, path), number(j, "eps_star", path),
                         number_or(j, "mu_star", 1.0, path));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

MeasurementGeometry parse_geometry(const json& j) {
  const std::string path = "geometry";
  auto [lo, hi] = pair_of(j, "aperture", path);
  MeasurementGeometry g{number(j, "gamma0", path), number(j, "gamma1", path), {lo, hi},
                        integer(j, "n_receivers", path)};
  try {
    validate_geometry(g);
  } catch (const GeometryError& e) {
    fail(path, e.what());
  }
  return g;
}

Scene parse_scene(const json& j, const PhysicalParams& params, const MeasurementGeometry& geometry,
                  EngineOptions& engine) {
  const std::string path = "scene";
  const json& obj = require(j, "object", path);
  const std::string opath = path + ".object";
  const json& kind_j = require(obj, "kind", opath);
  if (!kind_j.is_string()) fail(opath + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (j.contains("engine")) {
    const std::string e = j.at("engine").is_string() ? j.at("engine").get<std::string>() : "";
    if (e == "analytic") {
      engine.kind = EngineKind::analytic;
    } else if (e == "bie") {
      engine.kind = EngineKind::bie;
    } else {
      fail(path + ".engine", "expected \"analytic\" or \"bie\"");
    }
  }
  if (j.contains("bie_nodes")) engine.bie_nodes = integer(j, "bie_nodes", path);
  if (j.contains("truncation")) {
    const json& t = j.at("truncation");
    if (t.is_string() && t.get<std::string>() == "auto") {
      engine.truncation.reset();
    } else if (t.is_number_integer() && t.get<int>() >= 0) {
      engine.truncation = t.get<int>();
    } else {
      fail(path + ".truncation", "expected \"auto\" or a non-negative integer");
    }
  }

  Scene scene;
  scene.params = params;
  const Vec2 center = point_or(obj, "center", {0.0, 0.0}, opath);
  try {
    if (kind == "disk") {
      scene.object = DiskScatterer{center, number(obj, "radius", opath)};
    } else if (kind == "curve") {
      const json& name = require(obj, "name", opath);
      if (!name.is_string()) fail(opath + ".name", "expected a catalog name");
      Placement pl{center, number_or(obj, "scale", 1.0, opath), number_or(obj, "rotation", 0.0, opath)};
      auto boundary = std::make_shared<const ParametricBoundary>(
          boundary_from_name(name.get<std::string>(), pl, engine.bie_nodes));
      check_boundary(*boundary);
      scene.object = boundary;
      if (engine.kind == EngineKind::analytic) {
        fail(path + ".engine", "the analytic engine only handles kind \"disk\"");
      }
    } else {
      fail(opath + ".kind", "expected \"disk\" or \"curve\"");
    }
    validate_scene(scene, geometry);
  } catch (const GeometryError& e) {
    fail(opath, e.what());
  }
  return scene;
}

void parse_noise(const json& j, RunConfig& cfg) {
  const std::string path = "noise";
  const std::string model = j.contains("model") && j.at("model").is_string()
                                ? j.at("model").get<std::string>()
                                : std::string("none");
  if (model == "none") {
    cfg.noise.kind = NoiseModel::Kind::none;
  } else if (model == "multiplicative_gaussian") {
    cfg.noise.kind = NoiseModel::Kind::multiplicative_gaussian;
  } else if (model == "additive_gaussian") {
    cfg.noise.kind = NoiseModel::Kind::additive_gaussian;
  } else {
    fail(path + ".model", "expected none, multiplicative_gaussian or additive_gaussian");
  }
  cfg.noise.sigma = number_or(j, "sigma", 0.0, path);
  if (!(cfg.noise.sigma >= 0.0)) fail(path + ".sigma", "must be non-negative");
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) fail(path + ".seed", "expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (cfg.noise.kind != NoiseModel::Kind::none && !cfg.seed) {
    fail(path + ".seed", "required when a noise model is selected");
  }
}

GridSpec parse_grid(const json& j, const MeasurementGeometry& geometry) {
  const std::string path = "grid";
  auto [z1a, z1b] = pair_of(j, "z1", path);
  auto [z2a, z2b] = pair_of(j, "z2", path);
  GridSpec g{z1a, z1b, z2a, z2b, integer(j, "nx", path), integer(j, "ny", path)};
  try {
    validate_grid(g, geometry);
  } catch (const GeometryError& e) {
    fail(path, e.what());
  }
  return g;
}

void parse_imaging(const json& j, RunConfig& cfg) {
  const std::string path = "imaging";
  if (j.contains("tau") && !j.at("tau").is_null()) {
    const double tau = number(j, "tau", path);
    if (!(tau > 0.0)) fail(path + ".tau", "must be positive");
    cfg.imaging.tau = tau;
  }
  cfg.imaging.normalize_coverage = boolean_or(j, "normalize_coverage", false, path);
  cfg.flip_incidence = boolean_or(j, "flip_incidence", false, path);
  if (j.contains("levels")) {
    const json& lv = j.at("levels");
    if (!lv.is_array()) fail(path + ".levels", "expected an array of numbers");
    for (const auto& v : lv) {
      if (!v.is_number()) fail(path + ".levels", "expected an array of numbers");
      cfg.levels.push_back(v.get<double>());
    }
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig cfg;
  try {
    cfg.params = parse_physics(require(root, "physics", "config"));
    cfg.geometry = parse_geometry(require(root, "geometry", "config"));
    if (root.contains("noise")) parse_noise(root.at("noise"), cfg);
    if (root.contains("imaging")) parse_imaging(root.at("imaging"), cfg);
    if (root.contains("scene")) {
      cfg.scene = parse_scene(root.at("scene"), cfg.params, cfg.geometry, cfg.engine);
    }
    if (root.contains("grid")) cfg.grid = parse_grid(root.at("grid"), cfg.geometry);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (seed_override) cfg.seed = seed_override;
  for (const auto& w : geometry_warnings(cfg.geometry, cfg.params)) warn(w);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::optional<std::uint64_t> seed;
  if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
      throw ConfigError(std::string(kSeedEnvVar) + ": expected a non-negative integer");
    }
  }
  return parse_config(ss.str(), seed);
}

}  // namespace retroscat
