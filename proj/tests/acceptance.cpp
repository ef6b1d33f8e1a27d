// Acceptance suite: one PASS/FAIL line per criterion A1..A6. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "retroscat/commands.hpp"
#include "retroscat/config.hpp"
#include "retroscat/imaging.hpp"
#include "retroscat/measurement.hpp"
#include "retroscat/validation.hpp"

using namespace retroscat;
namespace fs = std::filesystem;

namespace {

constexpr double kA1Seconds = 1.0;
constexpr double kA2Seconds = 30.0;
constexpr double kA3Seconds = 10.0;
constexpr double kA4Seconds = 10.0;
constexpr double kA5Seconds = 300.0;
constexpr double kA6Seconds = 10.0;

constexpr double kA5CleanRadius = 2.0;  // wavelengths
constexpr double kA5NoisyRadius = 3.0;
constexpr double kA5NoiseSigma = 0.05;
constexpr std::uint64_t kA5Seed = 12345;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome from_checks(std::initializer_list<CheckResult> checks) {
  Outcome o{true, ""};
  for (const auto& c : checks) {
    o.pass = o.pass && c.pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3e<%.1e", o.detail.empty() ? "" : " ", c.name.c_str(),
                  c.measured, c.threshold);
    o.detail += buf;
  }
  return o;
}

struct Localization {
  Vec2 node;
  double distance = 0.0;
};

Localization localize(const MeasurementSet& meas, const Vec2 truth, const GridSpec& grid) {
  ImagingOptions opts;
  opts.threads = 0;
  const DerivativeMap map = scan_grid(grid, meas, opts);
  std::size_t best = 0;
  for (std::size_t k = 1; k < map.values.size(); ++k) {
    if (map.values[k] < map.values[best]) best = k;
  }
  const Vec2 z = map.grid.node(static_cast<int>(best % grid.nx), static_cast<int>(best / grid.nx));
  return {z, norm(z - truth)};
}

Outcome a5() {
  const Scene scene = reference_disk_scene();
  const MeasurementGeometry g = reference_geometry();
  const Vec2 truth = std::get<DiskScatterer>(scene.object).center;
  const double lambda = scene.params.lambda;
  const GridSpec grid{-5.0, 5.0, -3.0, 4.0, 64, 64};

  const MeasurementSet clean = synthesize_monostatic(scene, g, {}, false, 0);
  const Localization lc = localize(clean, truth, grid);
  NoiseModel noise;
  noise.kind = NoiseModel::Kind::multiplicative_gaussian;
  noise.sigma = kA5NoiseSigma;
  const Localization ln = localize(add_noise(clean, noise, kA5Seed), truth, grid);

  const bool clean_ok = lc.distance <= kA5CleanRadius * lambda;
  const bool noisy_ok = ln.distance <= kA5NoisyRadius * lambda;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "clean argmin=(%.3f,%.3f) dist=%.3f<=%.1f %s; noisy(sigma=%.2f seed=%llu) "
                "argmin=(%.3f,%.3f) dist=%.3f<=%.1f %s",
                lc.node.x1, lc.node.x2, lc.distance, kA5CleanRadius * lambda, clean_ok ? "ok" : "FAIL",
                kA5NoiseSigma, static_cast<unsigned long long>(kA5Seed), ln.node.x1, ln.node.x2,
                ln.distance, kA5NoisyRadius * lambda, noisy_ok ? "ok" : "FAIL");
  return {clean_ok && noisy_ok, buf};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome a6() {
  const fs::path dir = fs::temp_directory_path() / ("retroscat_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ostringstream sink;
  Streams io{sink, sink};
  const fs::path config = fs::path(RETROSCAT_SOURCE_DIR) / "configs" / "reference_disk.json";

  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };

  expect(cmd_forward(config, dir / "m1.csv", 1, io) == kExitOk, "forward run 1");
  expect(cmd_forward(config, dir / "m2.csv", 0, io) == kExitOk, "forward run 2");
  expect(slurp(dir / "m1.csv") == slurp(dir / "m2.csv"), "forward output differs between runs");

  expect(cmd_image(config, dir / "m1.csv", (dir / "i1").string(), 1, io) == kExitOk, "image run 1");
  expect(cmd_image(config, dir / "m1.csv", (dir / "i2").string(), 0, io) == kExitOk, "image run 2");
  expect(slurp(dir / "i1.csv") == slurp(dir / "i2.csv"), "image map differs between runs");
  expect(slurp(dir / "i1.pgm") == slurp(dir / "i2.pgm"), "image pgm differs between runs");

  // Lossless round trip, including noisy data with awkward values.
  MeasurementSet noisy = read_csv(dir / "m1.csv");
  NoiseModel noise;
  noise.kind = NoiseModel::Kind::multiplicative_gaussian;
  noise.sigma = 0.3;
  noisy = add_noise(noisy, noise, 7);
  const MeasurementSet back = parse_csv(to_csv(noisy));
  expect(back.same_data(noisy), "measurement CSV round trip changed data");
  expect(to_csv(back) == to_csv(noisy), "measurement CSV is not stable under re-serialisation");

  const std::string pgm = slurp(dir / "i1.pgm");
  expect(pgm.rfind("P2\n64 64\n255\n", 0) == 0, "pgm header");

  fs::remove_all(dir);
  Outcome o{problems.empty(), "forward/image repeat, csv round trip, pgm header"};
  for (const auto& p : problems) o.detail += "; " + p;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"A1 special functions", kA1Seconds,
       [] { return from_checks({check_wronskian(), check_bessel_zeros()}); }},
      {"A2 forward oracle agreement", kA2Seconds, [] { return from_checks({check_bie_vs_analytic()}); }},
      {"A3 transport validation", kA3Seconds,
       [] { return from_checks({check_transport_vs_spreading(), check_kernel_identity()}); }},
      {"A4 asymptotic order", kA4Seconds, [] { return from_checks({check_expansion_order()}); }},
      {"A5 localization", kA5Seconds, a5},
      {"A6 determinism and formats", kA6Seconds, a6},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s %-28s %.2fs<%.0fs%s  %s\n", pass ? "PASS" : "FAIL", c.id, secs, c.budget,
                in_time ? "" : " (too slow)", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
