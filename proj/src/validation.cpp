#include "retroscat/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "retroscat/boundary.hpp"
#include "retroscat/forward_analytic.hpp"
#include "retroscat/forward_bie.hpp"
#include "retroscat/imaging.hpp"
#include "retroscat/measurement.hpp"
#include "retroscat/special_functions.hpp"
#include "retroscat/transport.hpp"

namespace retroscat {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult make(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured < threshold, measured, threshold, std::move(detail)};
}

template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Scene reference_disk_scene() {
  Scene s;
  s.params = derive_params(2.0 * kPi, 1.0, 1.0, 2.0, 1.0);
  s.object = DiskScatterer{{0.4, 1.0}, 0.5};
  return s;
}

MeasurementGeometry reference_geometry() { return make_geometry(60.0, 80.0, {-30.0, 30.0}, 121); }

CheckResult check_wronskian() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> order(0, 59);
  std::uniform_real_distribution<double> arg(0.1, 100.0);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int n = order(rng);
    const double x = arg(rng);
    const auto t = special::cylinder_table(n + 1, x);
    const double w = t.j[n + 1] * t.y[n] - t.j[n] * t.y[n + 1];
    const double expected = 2.0 / (kPi * x);
    worst = std::max(worst, std::abs(w - expected) / expected);
  }
  return make("wronskian", worst, 1e-10, "500 pairs, n <= 60, x in [0.1, 100]");
}

CheckResult check_bessel_zeros() {
  const double j0 = bisect([](double x) { return special::bessel_j(0, x); }, 2.0, 3.0);
  const double y0 = bisect([](double x) { return special::bessel_y(0, x); }, 0.5, 1.5);
  const double err = std::max(std::abs(j0 - 2.404825557695773), std::abs(y0 - 0.8935769662791675));
  return make("bessel_zeros", err, 1e-9, "first zeros of J0 and Y0");
}

CheckResult check_modal_boundary_residual(double perturbation) {
  const double radius = 1.0;
  const PhysicalParams p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);  // k0 a = 2, contrast 4
  const DiskScatterer disk{{0.0, 0.0}, radius};
  const double alpha = 0.3;
  ModalCoefficients mc = modal_coefficients(disk, p, {std::cos(alpha), std::sin(alpha)});
  for (auto& b : mc.b) b *= 1.0 + perturbation;
  const auto r = boundary_residuals(mc, 64);
  return make("modal_boundary_residual", std::max(r.max_jump_u, r.max_jump_flux), 1e-8,
              "k0 a = 2, contrast 4, 64 boundary points");
}

CheckResult check_bie_vs_analytic() {
  const Vec2 center{0.3, -0.2};
  const double radius = 1.0;
  double worst = 0.0;
  for (double ka : {0.5, 2.0, 5.0}) {
    for (double contrast : {2.0, 4.0}) {
      for (double mu : {1.0, 2.0}) {
        const PhysicalParams p = derive_params(ka, 1.0, 1.0, contrast, mu);
        const Vec2 eta{std::cos(0.7), std::sin(0.7)};
        const BieSolver solver(make_disk_boundary(radius, {center}, 128), p);
        const auto dens = solver.solve(eta);
        const auto mc = modal_coefficients({center, radius}, p, eta);
        for (int m = 0; m < 16; ++m) {
          const double th = 2.0 * kPi * m / 16;
          const double r = radius + std::max(0.5 * p.lambda, 0.5) + 0.3 * m;
          const Vec2 x = center + r * Vec2{std::cos(th), std::sin(th)};
          const cd exact = scattered_field(mc, x);
          worst = std::max(worst, std::abs(evaluate_scattered(dens, x) - exact) / std::abs(exact));
        }
      }
    }
  }
  return make("bie_vs_analytic", worst, 1e-6, "12 disk configurations, 128 nodes, 16 points each");
}

CheckResult check_transport_vs_spreading() {
  const MeasurementGeometry g = reference_geometry();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uz1(-5.0, 5.0), uz2(-3.0, 4.0), ux(-30.0, 30.0),
      ua(0.5, 2.0);
  double worst = 0.0;
  int dropped = 0;
  for (int k = 0; k < 100; ++k) {
    const Vec2 z{uz1(rng), uz2(rng)};
    const LineSample s{ux(rng), ua(rng)};
    const PhaseField phase = [z](Vec2 x) { return norm(x - z); };
    const auto res = characteristic_transport(phase, std::span<const LineSample>(&s, 1), g, 0.5);
    dropped += res.dropped;
    if (res.rays.empty()) continue;
    const double expected =
        s.amplitude * std::sqrt((g.gamma0 - z.x2) / (g.gamma1 - z.x2));
    worst = std::max(worst, std::abs(res.rays[0].amplitude - expected) / expected);
  }
  if (dropped > 0) return {"transport_vs_spreading", false, worst, 1e-6, "rays dropped"};
  return make("transport_vs_spreading", worst, 1e-6, "100 random rays, radial phase");
}

CheckResult check_kernel_identity() {
  const MeasurementGeometry g = reference_geometry();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uz1(-5.0, 5.0), uz2(-3.0, 4.0), ua(0.01, 1.0);
  const double eps_values[] = {1e-3, 1e-2, 1e-1};
  MeasurementSet meas;
  meas.geometry = g;
  for (Line line : {Line::gamma0, Line::gamma1}) {
    for (int j = 0; j < g.n_receivers; ++j) meas.records.push_back({g.abscissa(j), line, ua(rng)});
  }
  const std::vector<double> line0 = meas.amplitudes(Line::gamma0);
  double worst = 0.0;
  int count = 0;
  while (count < 1000) {
    const Vec2 z{uz1(rng), uz2(rng)};
    const TransportKernel kernel = build_kernel(z, meas);
    for (int j = 0; j < g.n_receivers && count < 1000; ++j) {
      if (!kernel.mask[j]) continue;
      const double eps = eps_values[count % 3];
      const double lhs = kernel.a0[j] + eps * kernel.a1[j];
      const Vec2 x{kernel.x1[j], g.gamma1};
      const double a0_at_p = *interpolate_line(g, line0, backproject_point(g, x, z).x1);
      const double rhs = transported_amplitude(g, a0_at_p, z, x, eps);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      ++count;
    }
  }
  return make("kernel_identity", worst, 1e-13, "1000 random (z, x, eps)");
}

CheckResult check_expansion_order() {
  const Scene scene = reference_disk_scene();
  const MeasurementGeometry g = reference_geometry();
  const MeasurementSet meas = synthesize_monostatic(scene, g, {});
  const double lambda = scene.params.lambda;
  const double eps[] = {1e-2 * lambda, 0.5e-2 * lambda, 1e-3 * lambda, 0.5e-3 * lambda};
  const GridSpec grid{-5.0, 5.0, -3.0, 4.0, 6, 5};
  double worst = 0.0;
  int nodes = 0;
  for (int j = 0; j < grid.ny && nodes < 20; ++j) {
    for (int i = 0; i < grid.nx && nodes < 20; ++i) {
      const TransportKernel kernel = build_kernel(grid.node(i, j), meas);
      if (kernel.active == 0 || misfit_zero_order(kernel, meas) <= 1e-6) continue;
      const ExpansionCheck ec = expansion_check(kernel, meas, eps);
      if (ec.degenerate) continue;
      for (int k = 0; k < 4; k += 2) {
        const double ratio = ec.residuals[k].second / ec.residuals[k + 1].second;
        worst = std::max(worst, std::abs(ratio - 4.0));
      }
      ++nodes;
    }
  }
  if (nodes < 20) return {"expansion_order", false, worst, 0.5, "fewer than 20 usable nodes"};
  return make("expansion_order", worst, 0.5, "|ratio - 4| over 20 nodes, eps = 1e-2 and 1e-3");
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(check_wronskian());
  out.push_back(check_bessel_zeros());
  out.push_back(check_modal_boundary_residual(options.modal_perturbation));
  out.push_back(check_bie_vs_analytic());
  out.push_back(check_transport_vs_spreading());
  out.push_back(check_kernel_identity());
  out.push_back(check_expansion_order());
  return out;
}

std::string format_check(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %-24s measured=%.3e threshold=%.1e", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.threshold);
  std::string line = buf;
  if (!r.detail.empty()) line += "  (" + r.detail + ")";
  return line;
}

}  // namespace retroscat
