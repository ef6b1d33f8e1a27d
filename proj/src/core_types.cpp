#include "retroscat/core_types.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "retroscat/boundary.hpp"
#include "retroscat/diagnostics.hpp"

namespace retroscat {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive (got " << value << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

PhysicalParams derive_params(double omega, double eps0, double mu0, double eps_star,
                             double mu_star) {
  require_positive(omega, "omega");
  require_positive(eps0, "eps0");
  require_positive(mu0, "mu0");
  require_positive(eps_star, "eps_star");
  require_positive(mu_star, "mu_star");
  PhysicalParams p;
  p.omega = omega;
  p.eps0 = eps0;
  p.mu0 = mu0;
  p.eps_star = eps_star;
  p.mu_star = mu_star;
  p.k0 = omega * std::sqrt(eps0 * mu0);
  p.k_star = omega * std::sqrt(eps_star * mu_star);
  p.lambda = 2.0 * std::numbers::pi / p.k0;
  return p;
}

double MeasurementGeometry::abscissa(int j) const {
  if (j == n_receivers - 1) return aperture.x1_max;
  return aperture.x1_min + static_cast<double>(j) * spacing();
}

void validate_geometry(const MeasurementGeometry& g) {
  if (!(g.gamma0 > 0.0) || !(g.gamma1 > 0.0)) {
    throw GeometryError("gamma0 and gamma1 must be positive");
  }
  if (g.gamma0 == g.gamma1) throw GeometryError("gamma0 must differ from gamma1");
  if (g.n_receivers < 2) throw GeometryError("n_receivers must be at least 2");
  if (!(g.aperture.x1_max > g.aperture.x1_min)) {
    throw GeometryError("degenerate aperture: x1_max must exceed x1_min");
  }
}

MeasurementGeometry make_geometry(double gamma0, double gamma1, Aperture aperture,
                                  int n_receivers) {
  MeasurementGeometry g{gamma0, gamma1, aperture, n_receivers};
  validate_geometry(g);
  return g;
}

std::vector<std::string> geometry_warnings(const MeasurementGeometry& g,
                                           const PhysicalParams& params) {
  std::vector<std::string> out;
  if (std::min(g.gamma0, g.gamma1) < 10.0 * params.lambda) {
    out.emplace_back("measurement lines closer than 10 wavelengths to the origin");
  }
  if (g.gamma0 > g.gamma1) {
    out.emplace_back("gamma0 > gamma1: transport runs towards the object");
  }
  return out;
}

std::vector<Vec2> receiver_positions(const MeasurementGeometry& g, Line line) {
  validate_geometry(g);
  const double h = g.height(line);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(g.n_receivers));
  for (int j = 0; j < g.n_receivers; ++j) pts.push_back({g.abscissa(j), h});
  return pts;
}

double object_top(const SceneObject& object) {
  if (const auto* disk = std::get_if<DiskScatterer>(&object)) {
    return disk->center.x2 + disk->radius;
  }
  const auto& boundary = std::get<std::shared_ptr<const ParametricBoundary>>(object);
  if (!boundary) throw GeometryError("scene has no boundary");
  return boundary->max_height();
}

void validate_scene(const Scene& scene, const MeasurementGeometry& geometry) {
  if (const auto* disk = std::get_if<DiskScatterer>(&scene.object)) {
    if (!(disk->radius > 0.0)) throw GeometryError("disk radius must be positive");
  }
  if (!(object_top(scene.object) < std::min(geometry.gamma0, geometry.gamma1))) {
    throw GeometryError("object must lie strictly below both measurement lines");
  }
}

Vec2 GridSpec::node(int i, int j) const {
  const double z1 = nx == 1 ? z1_min : z1_min + (z1_max - z1_min) * i / (nx - 1);
  const double z2 = ny == 1 ? z2_min : z2_min + (z2_max - z2_min) * j / (ny - 1);
  return {z1, z2};
}

void validate_grid(const GridSpec& grid, const MeasurementGeometry& geometry) {
  if (grid.nx < 1 || grid.ny < 1) throw GeometryError("grid needs at least one node per axis");
  if (grid.nx > 1 && !(grid.z1_max > grid.z1_min)) {
    throw GeometryError("grid z1 range is empty");
  }
  if (grid.ny > 1 && !(grid.z2_max > grid.z2_min)) {
    throw GeometryError("grid z2 range is empty");
  }
  const double top = grid.ny == 1 ? grid.z2_min : grid.z2_max;
  if (!(top < std::min(geometry.gamma0, geometry.gamma1))) {
    throw GeometryError("grid must lie strictly below both measurement lines");
  }
}

}  // namespace retroscat
