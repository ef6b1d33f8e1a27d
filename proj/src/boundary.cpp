#include "retroscat/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <regex>

#include "retroscat/diagnostics.hpp"

namespace retroscat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x1 - s * v.x2, s * v.x1 + c * v.x2};
}

// Wraps a reference curve with the placement transform.
ParametricBoundary placed(std::string name, ParametricBoundary::CurveMap x,
                          ParametricBoundary::CurveMap dx, ParametricBoundary::CurveMap ddx,
                          Placement pl, int n_nodes) {
  if (!(pl.scale > 0.0)) throw GeometryError("boundary scale must be positive");
  auto linear = [pl](const ParametricBoundary::CurveMap& f) {
    return [pl, f](double t) { return pl.scale * rotate(f(t), pl.rotation); };
  };
  auto pos = [pl, x](double t) { return pl.center + pl.scale * rotate(x(t), pl.rotation); };
  return ParametricBoundary(std::move(name), pos, linear(dx), linear(ddx), n_nodes);
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

}  // namespace

ParametricBoundary::ParametricBoundary(std::string name, CurveMap position, CurveMap d1,
                                       CurveMap d2, int n_nodes)
    : name_(std::move(name)),
      position_(std::move(position)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      n_nodes_(n_nodes) {}

double ParametricBoundary::node_parameter(int i) const { return kTwoPi * i / n_nodes_; }

ParametricBoundary ParametricBoundary::with_nodes(int n_nodes) const {
  ParametricBoundary copy = *this;
  copy.n_nodes_ = n_nodes;
  return copy;
}

double ParametricBoundary::max_height() const {
  constexpr int kSamples = 4096;
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) top = std::max(top, position(kTwoPi * i / kSamples).x2);
  return top;
}

bool ParametricBoundary::contains(Vec2 x) const {
  double winding = 0.0;
  for (int i = 0; i < n_nodes_; ++i) {
    const Vec2 a = position(node_parameter(i)) - x;
    const Vec2 b = position(node_parameter((i + 1) % n_nodes_)) - x;
    winding += std::atan2(cross(a, b), dot(a, b));
  }
  return std::abs(winding) > std::numbers::pi;
}

void check_boundary(const ParametricBoundary& boundary) {
  const int n = boundary.n_nodes();
  if (n < 8 || n % 2 != 0) throw GeometryError("boundary node count must be even and >= 8");
  std::vector<Vec2> pts(static_cast<std::size_t>(n));
  double area = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = boundary.node_parameter(i);
    if (!(norm(boundary.d1(t)) > 0.0)) {
      throw GeometryError("non-regular parametrization: |x'(t)| vanishes at node " +
                          std::to_string(i));
    }
    pts[i] = boundary.position(t);
  }
  for (int i = 0; i < n; ++i) area += 0.5 * cross(pts[i], pts[(i + 1) % n]);
  if (!(area > 0.0)) throw GeometryError("boundary must be oriented counter-clockwise");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) {
        throw GeometryError("boundary polygon self-intersects");
      }
    }
  }
}

ParametricBoundary make_disk_boundary(double radius, Placement placement, int n_nodes) {
  if (!(radius > 0.0)) throw GeometryError("disk radius must be positive");
  return make_ellipse_boundary(radius, radius, placement, n_nodes);
}

ParametricBoundary make_ellipse_boundary(double a, double b, Placement placement, int n_nodes) {
  if (!(a > 0.0) || !(b > 0.0)) throw GeometryError("ellipse semi-axes must be positive");
  return placed(
      "ellipse", [a, b](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; },
      [a, b](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; },
      [a, b](double t) { return Vec2{-a * std::cos(t), -b * std::sin(t)}; }, placement, n_nodes);
}

ParametricBoundary make_kite_boundary(Placement placement, int n_nodes) {
  return placed(
      "kite",
      [](double t) { return Vec2{std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t)}; },
      [](double t) { return Vec2{-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t)}; },
      [](double t) { return Vec2{-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t)}; },
      placement, n_nodes);
}

ParametricBoundary boundary_from_name(const std::string& spec, Placement placement, int n_nodes) {
  static const std::regex disk_re(R"(\s*disk\s*\(\s*([^,\s\)]+)\s*\)\s*)");
  static const std::regex ellipse_re(R"(\s*ellipse\s*\(\s*([^,\s]+)\s*,\s*([^,\s\)]+)\s*\)\s*)");
  static const std::regex kite_re(R"(\s*kite\s*(\(\s*\))?\s*)");
  std::smatch m;
  try {
    if (std::regex_match(spec, m, disk_re)) {
      return make_disk_boundary(std::stod(m[1]), placement, n_nodes);
    }
    if (std::regex_match(spec, m, ellipse_re)) {
      return make_ellipse_boundary(std::stod(m[1]), std::stod(m[2]), placement, n_nodes);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("malformed boundary arguments in '" + spec + "'");
  }
  if (std::regex_match(spec, kite_re)) return make_kite_boundary(placement, n_nodes);
  throw ConfigError("unknown boundary '" + spec + "' (expected disk(r), ellipse(a,b) or kite)");
}

}  // namespace retroscat
