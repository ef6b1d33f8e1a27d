#include "retroscat/level_set.hpp"

#include <array>

namespace retroscat {

namespace {

// Edge e joins corner e and corner (e + 1) % 4; corners run
// (i,j), (i+1,j), (i+1,j+1), (i,j+1).
constexpr std::array<std::array<int, 2>, 4> kEdgeCorners{{{0, 1}, {1, 2}, {2, 3}, {3, 0}}};

}  // namespace

LevelSet level_set(const DerivativeMap& map, double level) {
  const GridSpec& g = map.grid;
  LevelSet out;
  out.level = level;
  out.mask.resize(map.values.size());
  for (std::size_t k = 0; k < map.values.size(); ++k) out.mask[k] = map.values[k] <= level ? 1 : 0;

  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      const std::array<Vec2, 4> pos{g.node(i, j), g.node(i + 1, j), g.node(i + 1, j + 1),
                                    g.node(i, j + 1)};
      const std::array<double, 4> val{map.at(i, j), map.at(i + 1, j), map.at(i + 1, j + 1),
                                      map.at(i, j + 1)};
      std::array<bool, 4> in{};
      int count = 0;
      for (int c = 0; c < 4; ++c) count += (in[c] = val[c] <= level);
      if (count == 0 || count == 4) continue;

      auto crossing = [&](int e) {
        const int a = kEdgeCorners[e][0];
        const int b = kEdgeCorners[e][1];
        const double t = (level - val[a]) / (val[b] - val[a]);
        return pos[a] + t * (pos[b] - pos[a]);
      };
      auto emit = [&](int e1, int e2) { out.contour.push_back({crossing(e1), crossing(e2)}); };

      const bool saddle = in[0] == in[2] && in[1] == in[3] && in[0] != in[1];
      if (!saddle) {
        std::array<int, 2> edges{};
        int found = 0;
        for (int e = 0; e < 4; ++e) {
          if (in[kEdgeCorners[e][0]] != in[kEdgeCorners[e][1]]) edges[found++] = e;
        }
        emit(edges[0], edges[1]);
        continue;
      }
      const bool center_in = 0.25 * (val[0] + val[1] + val[2] + val[3]) <= level;
      // Corners on the side opposite to the centre are cut off individually.
      const bool cut_even = in[0] != center_in;
      if (cut_even) {
        emit(3, 0);  // around corner 0
        emit(1, 2);  // around corner 2
      } else {
        emit(0, 1);  // around corner 1
        emit(2, 3);  // around corner 3
      }
    }
  }
  return out;
}

}  // namespace retroscat
