#pragma once

#include <cstdint>
#include <vector>

#include "retroscat/core_types.hpp"
#include "retroscat/imaging.hpp"

namespace retroscat {

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct LevelSet {
  double level = 0.0;
  std::vector<std::uint8_t> mask;  // d <= level, same layout as DerivativeMap
  std::vector<Segment> contour;
};

// Marching squares over the grid cells with linear interpolation along cell
// edges. Saddle cells are split according to the mean of the four corners.
// Nothing is emitted along the outer frame of the grid.
LevelSet level_set(const DerivativeMap& map, double level);

}  // namespace retroscat
