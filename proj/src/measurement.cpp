#include "retroscat/measurement.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "retroscat/boundary.hpp"
#include "retroscat/diagnostics.hpp"
#include "retroscat/forward_bie.hpp"
#include "retroscat/parallel.hpp"

namespace retroscat {

namespace {

class AnalyticEngine final : public ForwardEngine {
 public:
  AnalyticEngine(DiskScatterer disk, PhysicalParams params, std::optional<int> truncation)
      : disk_(disk), params_(params), truncation_(truncation) {}

  // Coefficients are rebuilt for every incidence.
  cd scattered(Vec2 eta, Vec2 x) const override {
    return scattered_field(modal_coefficients(disk_, params_, eta, truncation_), x);
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "analytic disk r=" << format_double(disk_.radius) << " c=("
       << format_double(disk_.center.x1) << "," << format_double(disk_.center.x2) << ")";
    return os.str();
  }

 private:
  DiskScatterer disk_;
  PhysicalParams params_;
  std::optional<int> truncation_;
};

class BieEngine final : public ForwardEngine {
 public:
  BieEngine(const ParametricBoundary& boundary, const PhysicalParams& params)
      : solver_(boundary, params), name_(boundary.name()), nodes_(boundary.n_nodes()) {}

  cd scattered(Vec2 eta, Vec2 x) const override {
    return evaluate_scattered(solver_.solve(eta), x);
  }

  std::string describe() const override {
    return "bie " + name_ + " nodes=" + std::to_string(nodes_);
  }

 private:
  BieSolver solver_;
  std::string name_;
  int nodes_;
};

double parse_number(std::string_view text, int line, const char* what) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": malformed " + what + " '" +
                         std::string(text) + "'",
                     line);
  }
  return v;
}

}  // namespace

std::vector<double> MeasurementSet::amplitudes(Line line) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(geometry.n_receivers));
  for (const auto& r : records) {
    if (r.line == line) out.push_back(r.amplitude);
  }
  return out;
}

bool MeasurementSet::same_data(const MeasurementSet& other) const {
  return geometry == other.geometry && records == other.records &&
         provenance.seed == other.provenance.seed;
}

void validate_measurements(const MeasurementSet& set) {
  validate_geometry(set.geometry);
  const int n = set.geometry.n_receivers;
  if (set.records.size() != static_cast<std::size_t>(2 * n)) {
    throw FormatError("expected " + std::to_string(n) + " records per line, found " +
                      std::to_string(set.records.size()) + " in total");
  }
  for (int k = 0; k < 2 * n; ++k) {
    const auto& r = set.records[k];
    const Line expected_line = k < n ? Line::gamma0 : Line::gamma1;
    if (r.line != expected_line || r.x1 != set.geometry.abscissa(k % n)) {
      throw FormatError("record " + std::to_string(k) + " does not match the receiver grid");
    }
    if (!(r.amplitude >= 0.0)) throw FormatError("record " + std::to_string(k) + " has a negative amplitude");
  }
}

std::unique_ptr<ForwardEngine> make_engine(const Scene& scene, const EngineOptions& options) {
  if (options.kind == EngineKind::analytic) {
    const auto* disk = std::get_if<DiskScatterer>(&scene.object);
    if (!disk) throw ConfigError("the analytic engine requires a disk scatterer");
    return std::make_unique<AnalyticEngine>(*disk, scene.params, options.truncation);
  }
  if (const auto* disk = std::get_if<DiskScatterer>(&scene.object)) {
    return std::make_unique<BieEngine>(
        make_disk_boundary(disk->radius, Placement{disk->center}, options.bie_nodes), scene.params);
  }
  const auto& boundary = std::get<std::shared_ptr<const ParametricBoundary>>(scene.object);
  return std::make_unique<BieEngine>(*boundary, scene.params);
}

MeasurementSet synthesize_monostatic(const Scene& scene, const MeasurementGeometry& geometry,
                                     const EngineOptions& options, bool flip_incidence,
                                     int threads) {
  validate_geometry(geometry);
  validate_scene(scene, geometry);
  const auto engine = make_engine(scene, options);
  const int n = geometry.n_receivers;

  MeasurementSet set;
  set.geometry = geometry;
  set.records.resize(static_cast<std::size_t>(2 * n));
  set.provenance.scene = engine->describe();
  set.provenance.noise = "none";

  parallel_for(set.records.size(), threads, [&](std::size_t k) {
    const Line line = static_cast<int>(k) < n ? Line::gamma0 : Line::gamma1;
    const Vec2 x{geometry.abscissa(static_cast<int>(k) % n), geometry.height(line)};
    Vec2 eta = (1.0 / norm(x)) * x;
    if (flip_incidence) eta = -1.0 * eta;
    try {
      set.records[k] = {x.x1, line, std::abs(engine->scattered(eta, x))};
    } catch (const Error& e) {
      throw SolverError("receiver " + std::to_string(k) + ": " + e.what(), static_cast<int>(k));
    }
  });
  return set;
}

std::string describe(const NoiseModel& model) {
  switch (model.kind) {
    case NoiseModel::Kind::none: return "none";
    case NoiseModel::Kind::multiplicative_gaussian:
      return "multiplicative_gaussian(" + format_double(model.sigma) + ")";
    case NoiseModel::Kind::additive_gaussian:
      return "additive_gaussian(" + format_double(model.sigma) + ")";
  }
  return "none";
}

NormalStream::NormalStream(std::uint64_t seed) : engine_(seed) {}

double NormalStream::next() {
  if (spare_) {
    const double g = *spare_;
    spare_.reset();
    return g;
  }
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
  const double u2 = (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

MeasurementSet add_noise(const MeasurementSet& set, const NoiseModel& model, std::uint64_t seed) {
  if (!(model.sigma >= 0.0)) throw DomainError("noise sigma must be non-negative");
  MeasurementSet out = set;
  if (model.kind == NoiseModel::Kind::none) return out;
  out.provenance.noise = describe(model);
  out.provenance.seed = seed;

  double mean = 0.0;
  for (const auto& r : set.records) mean += r.amplitude;
  if (!set.records.empty()) mean /= static_cast<double>(set.records.size());

  NormalStream normal(seed);
  for (auto& r : out.records) {
    const double g = normal.next();
    const double noisy = model.kind == NoiseModel::Kind::multiplicative_gaussian
                             ? r.amplitude * (1.0 + model.sigma * g)
                             : r.amplitude + model.sigma * g * mean;
    r.amplitude = std::max(0.0, noisy);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string to_csv(const MeasurementSet& set) {
  validate_measurements(set);
  std::string out = "# retroscat-measurements v1, gamma0=" + format_double(set.geometry.gamma0) +
                    ", gamma1=" + format_double(set.geometry.gamma1) +
                    ", n=" + std::to_string(set.geometry.n_receivers) + ", seed=" +
                    (set.provenance.seed ? std::to_string(*set.provenance.seed) : "none") + "\n";
  for (const auto& r : set.records) {
    out += (r.line == Line::gamma0 ? "0," : "1,");
    out += format_double(r.x1);
    out += ',';
    out += format_double(r.amplitude);
    out += '\n';
  }
  return out;
}

MeasurementSet parse_csv(const std::string& text) {
  static const std::regex header_re(
      R"(# retroscat-measurements v1, gamma0=([^,]+), gamma1=([^,]+), n=([0-9]+), seed=([0-9]+|none))");
  std::istringstream in(text);
  std::string row;
  if (!std::getline(in, row)) throw FormatError("empty measurement file");
  if (!row.empty() && row.back() == '\r') row.pop_back();
  std::smatch m;
  if (!std::regex_match(row, m, header_re)) throw ParseError("line 1: malformed header", 1);

  const double gamma0 = parse_number(m[1].str(), 1, "gamma0");
  const double gamma1 = parse_number(m[2].str(), 1, "gamma1");
  const long n = std::stol(m[3].str());
  if (n < 2) throw FormatError("header requires n >= 2");

  MeasurementSet set;
  if (m[4].str() != "none") set.provenance.seed = std::stoull(m[4].str());

  int line_no = 1;
  while (std::getline(in, row)) {
    ++line_no;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : row.find(',', c1 + 1);
    if (c2 == std::string::npos || row.find(',', c2 + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'line,x1,amplitude'", line_no);
    }
    const std::string_view sv(row);
    const auto tag = sv.substr(0, c1);
    if (tag != "0" && tag != "1") {
      throw ParseError("line " + std::to_string(line_no) + ": line index must be 0 or 1", line_no);
    }
    AmplitudeRecord r;
    r.line = tag == "0" ? Line::gamma0 : Line::gamma1;
    r.x1 = parse_number(sv.substr(c1 + 1, c2 - c1 - 1), line_no, "x1");
    r.amplitude = parse_number(sv.substr(c2 + 1), line_no, "amplitude");
    if (r.amplitude < 0.0) {
      throw ParseError("line " + std::to_string(line_no) + ": negative amplitude", line_no);
    }
    set.records.push_back(r);
  }
  if (set.records.size() != static_cast<std::size_t>(2 * n)) {
    throw FormatError("header announces n=" + std::to_string(n) + " receivers per line but the file has " +
                      std::to_string(set.records.size()) + " records");
  }
  try {
    set.geometry = make_geometry(gamma0, gamma1, {set.records.front().x1, set.records[n - 1].x1},
                                 static_cast<int>(n));
  } catch (const GeometryError& e) {
    throw FormatError(std::string("receiver grid inconsistent with header: ") + e.what());
  }
  validate_measurements(set);
  return set;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const MeasurementSet& set, const std::filesystem::path& path) {
  write_file_atomic(path, to_csv(set));
}

MeasurementSet read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace retroscat
