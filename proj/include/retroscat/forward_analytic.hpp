#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "retroscat/core_types.hpp"

namespace retroscat {

using cd = std::complex<double>;

// Cylindrical-mode solution for a penetrable disk lit by e^{i k0 eta.x}.
//
// In disk-centred polar coordinates (r, theta) and with alpha the incidence
// angle, the fields are
//
//   u_inc = P * sum_n i^|n| J_|n|(k0 r) e^{i n (theta - alpha)}
//   u_dif = P * sum_n b_n   H_|n|(k0 r) e^{i n (theta - alpha)}     (r > a)
//   u_int = P * sum_n c_n   J_|n|(k* r) e^{i n (theta - alpha)}     (r < a)
//
// with P = e^{i k0 eta.center}. Writing the mode index through |n| makes the
// per-mode systems depend on |n| only, hence b_{-n} = b_n and c_{-n} = c_n.
struct ModalCoefficients {
  int truncation = 0;
  std::vector<cd> b;  // index n + truncation, n = -N..N
  std::vector<cd> c;
  DiskScatterer disk;
  PhysicalParams params;
  Vec2 eta;
  double incidence_angle = 0.0;
  cd phase{1.0, 0.0};

  cd b_at(int n) const { return b[static_cast<std::size_t>(n + truncation)]; }
  cd c_at(int n) const { return c[static_cast<std::size_t>(n + truncation)]; }
};

// ceil(k0 a + 4 (k0 a)^{1/3} + 10)
int auto_truncation(double k0_radius);

// Solves the 2x2 continuity system of every mode |n| <= N. Passing no
// truncation selects auto_truncation(). Throws DomainError when |eta| != 1
// and ResonanceError when a mode's determinant vanishes.
ModalCoefficients modal_coefficients(const DiskScatterer& disk, const PhysicalParams& params,
                                     Vec2 eta, std::optional<int> truncation = std::nullopt);

// u_dif(eta, x) for |x - center| > radius; DomainError otherwise.
cd scattered_field(const ModalCoefficients& coeffs, Vec2 x);

// Interior field for |x - center| <= radius.
cd interior_field(const ModalCoefficients& coeffs, Vec2 x);

// Largest jumps of u and of (1/mu) du/dr across r = a, using the exact
// incident plane wave on the exterior side.
struct BoundaryResiduals {
  double max_jump_u = 0.0;
  double max_jump_flux = 0.0;
};

BoundaryResiduals boundary_residuals(const ModalCoefficients& coeffs, int n_points);

// |u| and its principal argument in (-pi, pi]; arg(0) is 0.
std::pair<double, double> amplitude_phase(cd u);

// Unit vector with |eta| = 1 to 1e-12, or DomainError.
void require_unit(Vec2 eta);

}  // namespace retroscat
