#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace retroscat {

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double cross(Vec2 a, Vec2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }

// Electromagnetic parameters of background and inclusion together with the
// derived wavenumbers. Construct through derive_params().
struct PhysicalParams {
  double omega = 0.0;
  double eps0 = 0.0;
  double mu0 = 0.0;
  double eps_star = 0.0;
  double mu_star = 0.0;
  double k0 = 0.0;
  double k_star = 0.0;
  double lambda = 0.0;
};

// Throws DomainError naming the first non-positive input.
PhysicalParams derive_params(double omega, double eps0, double mu0, double eps_star,
                             double mu_star);

enum class Line { gamma0 = 0, gamma1 = 1 };

struct Aperture {
  double x1_min = 0.0;
  double x1_max = 0.0;
  friend bool operator==(const Aperture&, const Aperture&) = default;
};

// Two horizontal measurement lines x2 = gamma0 and x2 = gamma1 sampled on the
// same uniform grid of first coordinates.
struct MeasurementGeometry {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  Aperture aperture;
  int n_receivers = 0;

  double height(Line line) const { return line == Line::gamma0 ? gamma0 : gamma1; }
  double spacing() const {
    return (aperture.x1_max - aperture.x1_min) / static_cast<double>(n_receivers - 1);
  }
  // x1_j = x1_min + j*spacing; the last abscissa is pinned to x1_max.
  double abscissa(int j) const;

  friend bool operator==(const MeasurementGeometry&, const MeasurementGeometry&) = default;
};

// Validating constructor. Throws GeometryError on non-positive heights,
// coincident lines, a degenerate aperture or fewer than two receivers.
MeasurementGeometry make_geometry(double gamma0, double gamma1, Aperture aperture,
                                  int n_receivers);

void validate_geometry(const MeasurementGeometry& geometry);

// Advisory findings (lines closer than 10 wavelengths, reversed ordering).
std::vector<std::string> geometry_warnings(const MeasurementGeometry& geometry,
                                           const PhysicalParams& params);

std::vector<Vec2> receiver_positions(const MeasurementGeometry& geometry, Line line);

struct DiskScatterer {
  Vec2 center;
  double radius = 0.0;
};

class ParametricBoundary;

using SceneObject = std::variant<DiskScatterer, std::shared_ptr<const ParametricBoundary>>;

struct Scene {
  SceneObject object;
  PhysicalParams params;
};

// Largest x2 reached by the object.
double object_top(const SceneObject& object);

// Throws GeometryError if the disk radius is not positive or the object
// reaches either measurement line.
void validate_scene(const Scene& scene, const MeasurementGeometry& geometry);

// Rectangle of probe centers sampled on an nx-by-ny lattice. An axis with a
// single sample uses its lower bound.
struct GridSpec {
  double z1_min = 0.0;
  double z1_max = 0.0;
  double z2_min = 0.0;
  double z2_max = 0.0;
  int nx = 0;
  int ny = 0;

  Vec2 node(int i, int j) const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

void validate_grid(const GridSpec& grid, const MeasurementGeometry& geometry);

}  // namespace retroscat
