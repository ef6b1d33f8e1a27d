#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "retroscat/core_types.hpp"
#include "retroscat/imaging.hpp"
#include "retroscat/measurement.hpp"

namespace retroscat {

// One experiment: everything `forward` and `image` need. The schema is
// documented in configs/README.md; configs/reference_disk.json is the
// annotated reference.
struct RunConfig {
  PhysicalParams params;
  MeasurementGeometry geometry;
  std::optional<Scene> scene;
  EngineOptions engine;
  NoiseModel noise;
  std::optional<std::uint64_t> seed;
  std::optional<GridSpec> grid;
  ImagingOptions imaging;
  bool flip_incidence = false;
  std::vector<double> levels;
};

// Environment variable that overrides noise.seed.
inline constexpr const char* kSeedEnvVar = "RETROSCAT_SEED";

// Parses and validates every present block. Throws ConfigError naming the
// offending field. `seed_override` replaces noise.seed when set.
RunConfig parse_config(const std::string& json_text,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

// Reads the file and applies RETROSCAT_SEED when it is set.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace retroscat
