#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "retroscat/core_types.hpp"
#include "retroscat/measurement.hpp"

namespace retroscat {

// Ray from a probe point z through a receiver x on line 1, back to line 0.
struct RayGeometry {
  Vec2 z;
  Vec2 x;    // on line 1
  Vec2 p;    // on line 0, colinear with z and x
  Vec2 eta;  // (z - x)/|z - x|
  double t_eta = 0.0;  // -(gamma1 - gamma0)/eta_2
};

// Throws GeometryError unless z lies strictly below both lines and x is on
// line 1.
RayGeometry ray_geometry(const MeasurementGeometry& geometry, Vec2 z, Vec2 x);

// p(x) = z + (gamma0 - z2)/(gamma1 - z2) (x - z), with p_2 = gamma0 exactly.
Vec2 backproject_point(const MeasurementGeometry& geometry, Vec2 x, Vec2 z);

// Inverse map: the point of line 1 on the ray from z through p.
Vec2 forward_project_point(const MeasurementGeometry& geometry, Vec2 p, Vec2 z);

// Amplitude at x obtained by transporting A0(p) along the back-propagation
// ray with the phase of a disk of radius eps centred at z, to first order:
//   A0 sqrt((gamma0 - z2)/(gamma1 - z2)) (1 - eps t_eta / (4 |x - z| |p - z|)).
double transported_amplitude(const MeasurementGeometry& geometry, double a0_at_p, Vec2 z, Vec2 x,
                             double eps);

// Zero- and first-order coefficients per line-1 receiver:
//   a0_j = A0(p(x_j)) sqrt((gamma0 - z2)/(gamma1 - z2))
//   a1_j = -(1/4) a0_j (gamma1 - gamma0) / ((gamma0 - z2) |x_j - z|)
// A0 is linearly interpolated between line-0 samples; receivers whose p(x_j)
// falls outside the aperture are masked (a0 = a1 = 0).
struct TransportKernel {
  Vec2 z;
  std::vector<double> x1;
  std::vector<double> a0;
  std::vector<double> a1;
  std::vector<std::uint8_t> mask;
  int active = 0;
};

// Throws DataError if the line-0 data has fewer than two samples.
TransportKernel build_kernel(Vec2 z, const MeasurementSet& measurements);

// Linear interpolation of uniformly spaced samples; nullopt outside.
std::optional<double> interpolate_line(const MeasurementGeometry& geometry,
                                       std::span<const double> samples, double x1);

// ---------------------------------------------------------------------------
// Characteristic integrator for grad(A).grad(phi) + A lap(phi)/2 = 0.

using PhaseField = std::function<double(Vec2)>;

struct LineSample {
  double x1 = 0.0;
  double amplitude = 0.0;
};

struct TransportBox {
  double x1_min = 0.0;
  double x1_max = 0.0;
  double x2_min = 0.0;
  double x2_max = 0.0;

  bool contains(Vec2 x) const {
    return x.x1 >= x1_min && x.x1 <= x1_max && x.x2 >= x2_min && x.x2 <= x2_max;
  }
};

// Aperture widened by its own width on each side; heights widened by the
// line separation.
TransportBox default_transport_box(const MeasurementGeometry& geometry);

struct TransportedRay {
  double x1_start = 0.0;
  double x1_end = 0.0;
  double amplitude = 0.0;
};

struct TransportResult {
  std::vector<TransportedRay> rays;
  int dropped = 0;
};

// From each line-0 sample, integrates d(ln A)/ds = -lap(phi)/(2|grad phi|)
// along the integral curve of grad(phi)/|grad phi| (oriented towards line 1)
// with classical RK4 of the given step. Derivatives of phi are centred
// differences with spacing step/10. The final step is shortened so the ray
// ends on line 1. Rays leaving the box are dropped and counted. Throws
// DomainError for step <= 0 and DataError when |grad phi| < 1e-12.
TransportResult characteristic_transport(const PhaseField& phase,
                                         std::span<const LineSample> line0_data,
                                         const MeasurementGeometry& geometry, double step,
                                         std::optional<TransportBox> box = std::nullopt);

}  // namespace retroscat
