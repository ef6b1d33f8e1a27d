#include "retroscat/forward_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "retroscat/diagnostics.hpp"
#include "retroscat/special_functions.hpp"

namespace retroscat {

namespace {

cd i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

struct Polar {
  double r;
  double theta;
};

Polar to_polar(const DiskScatterer& disk, Vec2 x) {
  const Vec2 d = x - disk.center;
  return {norm(d), std::atan2(d.x2, d.x1)};
}

// sum_n coef(|n|) e^{i n phi} = coef(0) + 2 sum_{n>0} coef(n) cos(n phi),
// valid because every coefficient depends on |n| only.
template <typename Coef>
cd symmetric_sum(int truncation, double phi, Coef&& coef) {
  cd s = coef(0);
  for (int n = 1; n <= truncation; ++n) s += 2.0 * coef(n) * std::cos(n * phi);
  return s;
}

}  // namespace

void require_unit(Vec2 eta) {
  if (std::abs(norm(eta) - 1.0) > 1e-12) throw DomainError("incidence direction must be a unit vector");
}

int auto_truncation(double k0_radius) {
  return static_cast<int>(std::ceil(k0_radius + 4.0 * std::cbrt(k0_radius) + 10.0));
}

ModalCoefficients modal_coefficients(const DiskScatterer& disk, const PhysicalParams& params,
                                     Vec2 eta, std::optional<int> truncation) {
  require_unit(eta);
  if (!(disk.radius > 0.0)) throw DomainError("disk radius must be positive");
  const int N = truncation.value_or(auto_truncation(params.k0 * disk.radius));
  if (N < 0) throw DomainError("truncation must be non-negative");

  ModalCoefficients mc;
  mc.truncation = N;
  mc.disk = disk;
  mc.params = params;
  mc.eta = eta;
  mc.incidence_angle = std::atan2(eta.x2, eta.x1);
  mc.phase = std::exp(cd(0.0, params.k0 * dot(eta, disk.center)));
  mc.b.assign(static_cast<std::size_t>(2 * N + 1), cd{});
  mc.c.assign(static_cast<std::size_t>(2 * N + 1), cd{});

  const double xe = params.k0 * disk.radius;
  const double xi = params.k_star * disk.radius;
  const auto out = special::cylinder_table(N + 1, xe);
  const auto in = special::bessel_j_table(N + 1, xi);
  const double we = params.k0 / params.mu0;
  const double wi = params.k_star / params.mu_star;

  for (int n = 0; n <= N; ++n) {
    const cd inc = i_pow(n);
    const double je = out.j[n];
    const double dje = special::table_deriv(out.j, n, xe);
    const cd h{out.j[n], out.y[n]};
    const cd dh{dje, special::table_deriv(out.y, n, xe)};
    const double ji = in[n];
    const double dji = special::table_deriv(in, n, xi);

    //  b h        - c ji        = -inc je
    //  b we dh    - c wi dji    = -inc we dje
    const cd det = -h * wi * dji + we * dh * ji;
    if (std::abs(det) < 1e-300) {
      throw ResonanceError("singular transmission system at mode " + std::to_string(n), n);
    }
    // Cramer's rule, arranged so that the numerator of b cancels exactly at
    // zero contrast.
    const cd b = inc * (je * wi * dji - ji * we * dje) / det;
    const cd c = inc * we * (dh * je - h * dje) / det;
    mc.b[static_cast<std::size_t>(N + n)] = b;
    mc.b[static_cast<std::size_t>(N - n)] = b;
    mc.c[static_cast<std::size_t>(N + n)] = c;
    mc.c[static_cast<std::size_t>(N - n)] = c;
  }
  return mc;
}

cd scattered_field(const ModalCoefficients& mc, Vec2 x) {
  const Polar p = to_polar(mc.disk, x);
  if (!(p.r > mc.disk.radius)) throw DomainError("scattered field requested inside the disk");
  const auto t = special::cylinder_table(mc.truncation, mc.params.k0 * p.r);
  const double phi = p.theta - mc.incidence_angle;
  return mc.phase * symmetric_sum(mc.truncation, phi, [&](int n) { return mc.b_at(n) * t.h1(n); });
}

cd interior_field(const ModalCoefficients& mc, Vec2 x) {
  const Polar p = to_polar(mc.disk, x);
  if (p.r > mc.disk.radius) throw DomainError("interior field requested outside the disk");
  const auto j = special::bessel_j_table(mc.truncation, mc.params.k_star * p.r);
  const double phi = p.theta - mc.incidence_angle;
  return mc.phase * symmetric_sum(mc.truncation, phi, [&](int n) { return mc.c_at(n) * j[n]; });
}

BoundaryResiduals boundary_residuals(const ModalCoefficients& mc, int n_points) {
  const int N = mc.truncation;
  const double a = mc.disk.radius;
  const double k0 = mc.params.k0;
  const double ks = mc.params.k_star;
  const auto out = special::cylinder_table(N + 1, k0 * a);
  const auto in = special::bessel_j_table(N + 1, ks * a);

  BoundaryResiduals res;
  for (int m = 0; m < n_points; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / n_points;
    const Vec2 rhat{std::cos(theta), std::sin(theta)};
    const Vec2 x = mc.disk.center + a * rhat;
    const double phi = theta - mc.incidence_angle;

    const cd uinc = std::exp(cd(0.0, k0 * dot(mc.eta, x)));
    const cd duinc = cd(0.0, k0 * dot(mc.eta, rhat)) * uinc;
    const cd us = mc.phase * symmetric_sum(N, phi, [&](int n) { return mc.b_at(n) * out.h1(n); });
    const cd dus = mc.phase * k0 * symmetric_sum(N, phi, [&](int n) {
                     const cd dh{special::table_deriv(out.j, n, k0 * a),
                                 special::table_deriv(out.y, n, k0 * a)};
                     return mc.b_at(n) * dh;
                   });
    const cd ui = mc.phase * symmetric_sum(N, phi, [&](int n) { return mc.c_at(n) * in[n]; });
    const cd dui = mc.phase * ks * symmetric_sum(N, phi, [&](int n) {
                     return mc.c_at(n) * special::table_deriv(in, n, ks * a);
                   });

    res.max_jump_u = std::max(res.max_jump_u, std::abs(uinc + us - ui));
    res.max_jump_flux = std::max(
        res.max_jump_flux, std::abs((duinc + dus) / mc.params.mu0 - dui / mc.params.mu_star));
  }
  return res;
}

std::pair<double, double> amplitude_phase(cd u) {
  if (u == cd{}) return {0.0, 0.0};
  double phase = std::arg(u);
  if (phase == -std::numbers::pi) phase = std::numbers::pi;
  return {std::abs(u), phase};
}

}  // namespace retroscat
