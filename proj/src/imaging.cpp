#include "retroscat/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "retroscat/diagnostics.hpp"
#include "retroscat/parallel.hpp"
#include "retroscat/simd/kernels.hpp"

namespace retroscat {

namespace {

struct Prepared {
  std::vector<double> weights;  // trapezoid weights times mask
  std::vector<double> measured;
  double active_fraction = 0.0;
};

Prepared prepare(const TransportKernel& kernel, const MeasurementSet& meas) {
  const int n = meas.geometry.n_receivers;
  if (static_cast<int>(kernel.a0.size()) != n) {
    throw DataError("kernel and measurements use different line-1 grids");
  }
  if (kernel.active == 0) throw CoverageError("no active line-1 receiver for this probe point");
  Prepared p;
  p.weights = trapezoid_weights(meas.geometry);
  for (int j = 0; j < n; ++j) {
    if (!kernel.mask[j]) p.weights[j] = 0.0;
  }
  p.measured = meas.amplitudes(Line::gamma1);
  p.active_fraction = static_cast<double>(kernel.active) / n;
  return p;
}

}  // namespace

std::vector<double> trapezoid_weights(const MeasurementGeometry& g) {
  std::vector<double> w(static_cast<std::size_t>(g.n_receivers), g.spacing());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double misfit_zero_order(const TransportKernel& kernel, const MeasurementSet& meas) {
  const Prepared p = prepare(kernel, meas);
  return std::sqrt(simd::misfit_moments(p.weights, kernel.a0, kernel.a1, p.measured).norm_sq);
}

double default_floor(const MeasurementSet& meas) {
  const auto a1 = meas.amplitudes(Line::gamma1);
  const double peak = a1.empty() ? 0.0 : *std::max_element(a1.begin(), a1.end());
  return std::max(1e-12 * peak, std::numeric_limits<double>::min());
}

DerivativeValue topological_derivative(const TransportKernel& kernel, const MeasurementSet& meas,
                                       double tau, bool normalize_coverage) {
  if (!(tau > 0.0)) throw DomainError("norm floor tau must be positive");
  const Prepared p = prepare(kernel, meas);
  const auto m = simd::misfit_moments(p.weights, kernel.a0, kernel.a1, p.measured);
  DerivativeValue v;
  v.misfit = std::sqrt(m.norm_sq);
  v.active_fraction = p.active_fraction;
  v.floor_hit = v.misfit < tau;
  v.d = m.inner / std::max(v.misfit, tau);
  if (normalize_coverage) v.d /= std::sqrt(p.active_fraction);
  return v;
}

ExpansionCheck expansion_check(const TransportKernel& kernel, const MeasurementSet& meas,
                               std::span<const double> eps_list, std::optional<double> tau) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw DomainError("expansion radii must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw DomainError("expansion radii must be sorted in decreasing order");
    }
  }
  const double floor = tau.value_or(default_floor(meas));
  const Prepared p = prepare(kernel, meas);
  const auto m = simd::misfit_moments(p.weights, kernel.a0, kernel.a1, p.measured);
  const double base = std::sqrt(m.norm_sq);
  ExpansionCheck out;
  if (base <= floor) {
    out.degenerate = true;
    return out;
  }
  const double d = m.inner / base;
  for (double eps : eps_list) {
    const double shifted =
        std::sqrt(simd::shifted_norm_sq(p.weights, kernel.a0, kernel.a1, p.measured, eps));
    out.residuals.emplace_back(eps, std::abs(shifted - (base + eps * d)));
  }
  return out;
}

DerivativeMap scan_grid(const GridSpec& grid, const MeasurementSet& meas,
                        const ImagingOptions& options) {
  validate_grid(grid, meas.geometry);
  const double tau = options.tau.value_or(default_floor(meas));
  DerivativeMap map;
  map.grid = grid;
  map.values.assign(grid.size(), 0.0);
  map.active_fraction.assign(grid.size(), 0.0);
  map.floor_flags.assign(grid.size(), 0);

  parallel_for(grid.size(), options.threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx % grid.nx);
    const int j = static_cast<int>(idx / grid.nx);
    const TransportKernel kernel = build_kernel(grid.node(i, j), meas);
    if (kernel.active == 0) return;
    const DerivativeValue v = topological_derivative(kernel, meas, tau, options.normalize_coverage);
    map.values[idx] = v.d;
    map.active_fraction[idx] = v.active_fraction;
    map.floor_flags[idx] = v.floor_hit ? 1 : 0;
  });
  for (auto f : map.floor_flags) map.floor_hits += f;
  return map;
}

}  // namespace retroscat
