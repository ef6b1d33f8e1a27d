#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "retroscat/core_types.hpp"
#include "retroscat/forward_analytic.hpp"

namespace retroscat {

struct AmplitudeRecord {
  double x1 = 0.0;
  Line line = Line::gamma0;
  double amplitude = 0.0;
  friend bool operator==(const AmplitudeRecord&, const AmplitudeRecord&) = default;
};

struct Provenance {
  std::string scene;
  std::string noise;
  std::optional<std::uint64_t> seed;
};

// Phaseless monostatic data on both lines: n_receivers records for line 0
// followed by n_receivers records for line 1, in increasing x1.
struct MeasurementSet {
  MeasurementGeometry geometry;
  std::vector<AmplitudeRecord> records;
  Provenance provenance;

  std::vector<double> amplitudes(Line line) const;
  // Persisted content only: geometry, records and seed.
  bool same_data(const MeasurementSet& other) const;
};

// Checks record count, ordering and exact abscissas. Throws FormatError.
void validate_measurements(const MeasurementSet& set);

// Computes u_dif(eta, x) for one incidence and one exterior point.
class ForwardEngine {
 public:
  virtual ~ForwardEngine() = default;
  virtual cd scattered(Vec2 eta, Vec2 x) const = 0;
  virtual std::string describe() const = 0;
};

enum class EngineKind { analytic, bie };

struct EngineOptions {
  EngineKind kind = EngineKind::analytic;
  int bie_nodes = 128;
  std::optional<int> truncation;  // modal series; auto when empty
};

// The analytic engine requires a disk; the BIE engine accepts any object
// (disks are discretised with EngineOptions::bie_nodes nodes).
std::unique_ptr<ForwardEngine> make_engine(const Scene& scene, const EngineOptions& options);

// eta = x/|x| (times -1 when flip_incidence) for every receiver on both
// lines, one forward solve each, amplitude |u_dif(eta, x)|. Receivers are
// processed on `threads` workers; the output order is fixed. Engine failures
// are rethrown as SolverError carrying the receiver index.
MeasurementSet synthesize_monostatic(const Scene& scene, const MeasurementGeometry& geometry,
                                     const EngineOptions& options, bool flip_incidence = false,
                                     int threads = 1);

struct NoiseModel {
  enum class Kind { none, multiplicative_gaussian, additive_gaussian };
  Kind kind = Kind::none;
  double sigma = 0.0;
};

std::string describe(const NoiseModel& model);

// Standard normal deviates: mt19937_64 seeded with `seed`, Box-Muller on
// two 53-bit uniforms, both outputs of each pair consumed in order.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// multiplicative: a <- max(0, a (1 + sigma g));
// additive:       a <- max(0, a + sigma g mean(a)), mean over all records.
// Deviates are drawn in record order. Throws DomainError when sigma < 0.
MeasurementSet add_noise(const MeasurementSet& set, const NoiseModel& model, std::uint64_t seed);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::string to_csv(const MeasurementSet& set);
MeasurementSet parse_csv(const std::string& text);

// write_csv replaces the target atomically (temporary file + rename).
void write_csv(const MeasurementSet& set, const std::filesystem::path& path);
MeasurementSet read_csv(const std::filesystem::path& path);

// Writes `content` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace retroscat
