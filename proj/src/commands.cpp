#include "retroscat/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "retroscat/config.hpp"
#include "retroscat/diagnostics.hpp"
#include "retroscat/level_set.hpp"
#include "retroscat/measurement.hpp"

namespace retroscat {

namespace {

namespace fs = std::filesystem;

int report(Streams io, int code, const std::string& message) {
  io.err << "error: " << message << "\n";
  return code;
}

// Maps the library's error taxonomy onto exit codes.
template <typename F>
int guarded(Streams io, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    return report(io, kExitBadInput, e.what());
  } catch (const ParseError& e) {
    return report(io, kExitBadInput, e.what());
  } catch (const FormatError& e) {
    return report(io, kExitBadInput, e.what());
  } catch (const GeometryError& e) {
    return report(io, kExitBadInput, e.what());
  } catch (const DomainError& e) {
    return report(io, kExitBadInput, e.what());
  } catch (const CoverageError& e) {
    return report(io, kExitNoCoverage, e.what());
  } catch (const Error& e) {
    return report(io, kExitSolverFailed, e.what());
  } catch (const std::exception& e) {
    return report(io, kExitSolverFailed, e.what());
  }
}

std::pair<double, double> min_max(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

double parse_field(std::string_view text, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line) + ": malformed number '" + std::string(text) + "'",
                     line);
  }
  return v;
}

}  // namespace

std::string map_to_csv(const DerivativeMap& map) {
  std::string out = "z1,z2,d,active_fraction\n";
  for (int j = 0; j < map.grid.ny; ++j) {
    for (int i = 0; i < map.grid.nx; ++i) {
      const Vec2 z = map.grid.node(i, j);
      const std::size_t k = static_cast<std::size_t>(j) * map.grid.nx + i;
      out += format_double(z.x1) + ',' + format_double(z.x2) + ',' + format_double(map.values[k]) +
             ',' + format_double(map.active_fraction[k]) + '\n';
    }
  }
  return out;
}

DerivativeMap parse_map_csv(const std::string& text) {
  std::istringstream in(text);
  std::string row;
  if (!std::getline(in, row) || (row != "z1,z2,d,active_fraction" && row != "z1,z2,d,active_fraction\r")) {
    throw ParseError("line 1: expected header 'z1,z2,d,active_fraction'", 1);
  }
  std::vector<std::array<double, 4>> rows;
  int line = 1;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    std::array<double, 4> v{};
    std::string_view rest(row);
    for (int c = 0; c < 4; ++c) {
      const auto comma = rest.find(',');
      if ((c < 3) == (comma == std::string_view::npos)) {
        throw ParseError("line " + std::to_string(line) + ": expected 4 fields", line);
      }
      v[c] = parse_field(rest.substr(0, comma), line);
      rest = c < 3 ? rest.substr(comma + 1) : std::string_view{};
    }
    rows.push_back(v);
  }
  if (rows.empty()) throw ParseError("map has no data rows", line);

  int nx = 1;
  while (nx < static_cast<int>(rows.size()) && rows[nx][1] == rows[0][1]) ++nx;
  if (rows.size() % nx != 0) throw ParseError("map rows do not form a rectangular grid", line);
  const int ny = static_cast<int>(rows.size() / nx);

  DerivativeMap map;
  map.grid = {rows.front()[0], rows[nx - 1][0], rows.front()[1], rows.back()[1], nx, ny};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto& r = rows[static_cast<std::size_t>(j) * nx + i];
      if (r[0] != rows[i][0] || r[1] != rows[static_cast<std::size_t>(j) * nx][1]) {
        throw ParseError("map rows do not form a rectangular grid in row-major order",
                         2 + j * nx + i);
      }
      map.values.push_back(r[2]);
      map.active_fraction.push_back(r[3]);
    }
  }
  map.floor_flags.assign(map.values.size(), 0);
  return map;
}

std::string map_to_pgm(const DerivativeMap& map) {
  const auto [lo, hi] = min_max(map.values);
  std::string out = "P2\n" + std::to_string(map.grid.nx) + " " + std::to_string(map.grid.ny) + "\n255\n";
  for (int j = map.grid.ny - 1; j >= 0; --j) {
    for (int i = 0; i < map.grid.nx; ++i) {
      long px = 128;
      if (hi > lo) px = std::lround(255.0 * (hi - map.at(i, j)) / (hi - lo));
      if (i > 0) out += ' ';
      out += std::to_string(px);
    }
    out += '\n';
  }
  return out;
}

std::string segments_to_csv(const LevelSet& set) {
  std::string out = "x1a,x2a,x1b,x2b\n";
  for (const auto& s : set.contour) {
    out += format_double(s.a.x1) + ',' + format_double(s.a.x2) + ',' + format_double(s.b.x1) + ',' +
           format_double(s.b.x2) + '\n';
  }
  return out;
}

int cmd_forward(const fs::path& config, const fs::path& out_path, int threads, Streams io) {
  return guarded(io, [&] {
    const RunConfig cfg = load_config(config);
    if (!cfg.scene) throw ConfigError("scene: missing");
    MeasurementSet meas =
        synthesize_monostatic(*cfg.scene, cfg.geometry, cfg.engine, cfg.flip_incidence, threads);
    if (cfg.noise.kind != NoiseModel::Kind::none) meas = add_noise(meas, cfg.noise, *cfg.seed);
    write_csv(meas, out_path);

    const auto [min0, max0] = min_max(meas.amplitudes(Line::gamma0));
    const auto [min1, max1] = min_max(meas.amplitudes(Line::gamma1));
    io.out << "forward: n=" << cfg.geometry.n_receivers << " line0 min=" << format_double(min0)
           << " max=" << format_double(max0) << " line1 min=" << format_double(min1)
           << " max=" << format_double(max1) << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_image(const fs::path& config, const fs::path& measurements, const std::string& prefix,
              int threads, Streams io) {
  return guarded(io, [&] {
    const RunConfig cfg = load_config(config);
    if (!cfg.grid) throw ConfigError("grid: missing");
    const MeasurementSet meas = read_csv(measurements);
    if (!(meas.geometry == cfg.geometry)) {
      throw ConfigError("measurement geometry does not match the config geometry");
    }
    ImagingOptions opts = cfg.imaging;
    opts.threads = threads;
    const DerivativeMap map = scan_grid(*cfg.grid, meas, opts);
    if (std::all_of(map.active_fraction.begin(), map.active_fraction.end(),
                    [](double f) { return f == 0.0; })) {
      throw CoverageError("no grid node has an active line-1 receiver");
    }
    write_file_atomic(prefix + ".csv", map_to_csv(map));
    write_file_atomic(prefix + ".pgm", map_to_pgm(map));
    for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
      write_file_atomic(prefix + "_level" + std::to_string(k) + ".csv",
                        segments_to_csv(level_set(map, cfg.levels[k])));
    }

    const auto best = std::min_element(map.values.begin(), map.values.end()) - map.values.begin();
    const Vec2 zb = map.grid.node(static_cast<int>(best % map.grid.nx),
                                  static_cast<int>(best / map.grid.nx));
    io.out << "image: " << map.grid.nx << "x" << map.grid.ny << " nodes, min d="
           << format_double(map.values[best]) << " at (" << format_double(zb.x1) << ", "
           << format_double(zb.x2) << "), floor hits=" << map.floor_hits << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_levelset(const fs::path& map_path, double level, const fs::path& out_path, Streams io) {
  return guarded(io, [&] {
    std::ifstream in(map_path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + map_path.string(), 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    const DerivativeMap map = parse_map_csv(ss.str());
    const LevelSet set = level_set(map, level);
    write_file_atomic(out_path, segments_to_csv(set));
    io.out << "levelset: " << set.contour.size() << " segments at d0=" << format_double(level)
           << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_validate(const ValidationOptions& options, Streams io) {
  bool all = true;
  for (const auto& r : run_validation(options)) {
    io.out << format_check(r) << "\n";
    all = all && r.pass;
  }
  return all ? kExitOk : kExitValidationFailed;
}

}  // namespace retroscat
