#include <doctest.h>

#include <fstream>
#include <string>

#include "retroscat/config.hpp"
#include "retroscat/diagnostics.hpp"

using namespace retroscat;

namespace {

const char* kMinimal = R"({
  "physics": {"omega": 6.283185307179586, "eps_star": 2.0},
  "geometry": {"gamma0": 60, "gamma1": 80, "aperture": [-30, 30], "n_receivers": 121}
})";

std::string with(const std::string& extra) {
  std::string base = kMinimal;
  base.insert(base.rfind('}'), ", " + extra);
  return base;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal config uses the documented defaults") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.params.eps0 == 1.0);
  CHECK(c.params.mu0 == 1.0);
  CHECK(c.params.mu_star == 1.0);
  CHECK(c.params.lambda == doctest::Approx(1.0));
  CHECK(c.geometry.n_receivers == 121);
  CHECK_FALSE(c.scene.has_value());
  CHECK_FALSE(c.grid.has_value());
  CHECK(c.noise.kind == NoiseModel::Kind::none);
  CHECK_FALSE(c.seed.has_value());
  CHECK_FALSE(c.flip_incidence);
  CHECK_FALSE(c.imaging.tau.has_value());
}

TEST_CASE("the reference config parses") {
  std::ifstream in(std::string(RETROSCAT_SOURCE_DIR) + "/configs/reference_disk.json");
  REQUIRE(in);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const RunConfig c = parse_config(text);
  REQUIRE(c.scene.has_value());
  const auto& disk = std::get<DiskScatterer>(c.scene->object);
  CHECK(disk.radius == 0.5);
  CHECK(disk.center == Vec2{0.4, 1.0});
  REQUIRE(c.grid.has_value());
  CHECK(c.grid->nx == 64);
  CHECK(c.grid->ny == 64);
  CHECK(c.engine.kind == EngineKind::analytic);
}

TEST_CASE("curve scenes and engines") {
  const RunConfig c = parse_config(with(R"("scene": {"object": {"kind": "curve", "name": "kite",
      "center": [0, 1], "scale": 0.5, "rotation": 0.3}, "engine": "bie", "bie_nodes": 64})"));
  REQUIRE(c.scene.has_value());
  CHECK(c.engine.kind == EngineKind::bie);
  CHECK(c.engine.bie_nodes == 64);
  CHECK(std::holds_alternative<std::shared_ptr<const ParametricBoundary>>(c.scene->object));

  CHECK(error_of(with(R"("scene": {"object": {"kind": "curve", "name": "kite"}, "engine": "analytic"})"))
            .find("scene.engine") != std::string::npos);
  CHECK(error_of(with(R"("scene": {"object": {"kind": "square"}})")).find("scene.object.kind") !=
        std::string::npos);
  CHECK(error_of(with(R"("scene": {"object": {"kind": "disk", "radius": 0.5, "center": [0, 70]}})"))
            .find("below both") != std::string::npos);
  CHECK(error_of(with(R"("scene": {"object": {"kind": "disk", "radius": 0.5}, "truncation": -2})"))
            .find("scene.truncation") != std::string::npos);
}

TEST_CASE("errors name the offending field") {
  CHECK(error_of("{").find("JSON") != std::string::npos);
  CHECK(error_of("[]").find("top level") != std::string::npos);
  CHECK(error_of(R"({"geometry": {}})").find("config.physics") != std::string::npos);
  CHECK(error_of(R"({"physics": {"omega": 0, "eps_star": 2},
      "geometry": {"gamma0": 60, "gamma1": 80, "aperture": [-30, 30], "n_receivers": 121}})")
            .find("omega") != std::string::npos);
  CHECK(error_of(R"({"physics": {"omega": 1, "eps_star": 2},
      "geometry": {"gamma0": 60, "gamma1": 60, "aperture": [-30, 30], "n_receivers": 121}})")
            .find("gamma0 must differ from gamma1") != std::string::npos);
  CHECK(error_of(R"({"physics": {"omega": 1, "eps_star": 2},
      "geometry": {"gamma0": 60, "gamma1": 80, "aperture": [-30], "n_receivers": 121}})")
            .find("geometry.aperture") != std::string::npos);
  CHECK(error_of(R"({"physics": {"omega": 1, "eps_star": 2},
      "geometry": {"gamma0": 60, "gamma1": 80, "aperture": [-30, 30], "n_receivers": 2.5}})")
            .find("geometry.n_receivers") != std::string::npos);
  CHECK(error_of(with(R"("grid": {"z1": [-1, 1], "z2": [0, 70], "nx": 4, "ny": 4})")).find("grid") !=
        std::string::npos);
  CHECK(error_of(with(R"("noise": {"model": "speckle"})")).find("noise.model") != std::string::npos);
  CHECK(error_of(with(R"("noise": {"model": "additive_gaussian", "sigma": 0.1})")).find("noise.seed") !=
        std::string::npos);
  CHECK(error_of(with(R"("noise": {"model": "additive_gaussian", "sigma": -1, "seed": 1})"))
            .find("noise.sigma") != std::string::npos);
  CHECK(error_of(with(R"("imaging": {"tau": -1})")).find("imaging.tau") != std::string::npos);
  CHECK(error_of(with(R"("imaging": {"levels": [0, "x"]})")).find("imaging.levels") != std::string::npos);
}

TEST_CASE("imaging and noise blocks") {
  const RunConfig c = parse_config(with(R"("noise": {"model": "multiplicative_gaussian", "sigma": 0.05,
      "seed": 12345}, "imaging": {"tau": 1e-9, "normalize_coverage": true, "flip_incidence": true,
      "levels": [-0.001, 0]})"));
  CHECK(c.noise.kind == NoiseModel::Kind::multiplicative_gaussian);
  CHECK(c.noise.sigma == 0.05);
  CHECK(c.seed == 12345u);
  CHECK(c.imaging.tau == 1e-9);
  CHECK(c.imaging.normalize_coverage);
  CHECK(c.flip_incidence);
  CHECK(c.levels == std::vector<double>{-0.001, 0.0});
}

TEST_CASE("seed override replaces the configured seed") {
  const std::string text = with(R"("noise": {"model": "multiplicative_gaussian", "sigma": 0.05, "seed": 1})");
  CHECK(parse_config(text, 99).seed == 99u);
  CHECK(parse_config(text).seed == 1u);
}
