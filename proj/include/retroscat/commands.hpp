#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "retroscat/imaging.hpp"
#include "retroscat/level_set.hpp"
#include "retroscat/validation.hpp"

namespace retroscat {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitBadInput = 2,
  kExitSolverFailed = 3,
  kExitNoCoverage = 4,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// threads: 0 selects the hardware concurrency.
int cmd_forward(const std::filesystem::path& config, const std::filesystem::path& out_path,
                int threads, Streams io);

// Writes <prefix>.csv and <prefix>.pgm, plus <prefix>_level<k>.csv for every
// level listed in the config.
int cmd_image(const std::filesystem::path& config, const std::filesystem::path& measurements,
              const std::string& prefix, int threads, Streams io);

int cmd_levelset(const std::filesystem::path& map_path, double level,
                 const std::filesystem::path& out_path, Streams io);

int cmd_validate(const ValidationOptions& options, Streams io);

std::string map_to_csv(const DerivativeMap& map);
DerivativeMap parse_map_csv(const std::string& text);

// P2, 255 at the most negative value, 0 at the most positive; 128 everywhere
// when the map is constant. The first image row is the top of the grid.
std::string map_to_pgm(const DerivativeMap& map);

std::string segments_to_csv(const LevelSet& set);

}  // namespace retroscat
