#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "retroscat/core_types.hpp"
#include "retroscat/measurement.hpp"
#include "retroscat/transport.hpp"

namespace retroscat {

// Norms and inner products live on the line-1 receiver grid with trapezoid
// weights (spacing inside, half spacing at the two ends); masked receivers
// are removed from every sum.
std::vector<double> trapezoid_weights(const MeasurementGeometry& geometry);

// ||a0(., z) - A1||. Throws CoverageError when no receiver is active.
double misfit_zero_order(const TransportKernel& kernel, const MeasurementSet& measurements);

// 1e-12 * max(A1), never below the smallest normal double.
double default_floor(const MeasurementSet& measurements);

struct DerivativeValue {
  double d = 0.0;
  double misfit = 0.0;  // ||a0 - A1||
  double active_fraction = 0.0;
  bool floor_hit = false;
};

// d(z) = <a0 - A1, a1> / max(||a0 - A1||, tau), optionally divided by
// sqrt(active_fraction). Throws CoverageError when no receiver is active and
// DomainError when tau <= 0.
DerivativeValue topological_derivative(const TransportKernel& kernel,
                                       const MeasurementSet& measurements, double tau,
                                       bool normalize_coverage = false);

struct ExpansionCheck {
  bool degenerate = false;
  std::vector<std::pair<double, double>> residuals;  // (eps, residual)
};

// residual(eps) = | ||a0 + eps a1 - A1|| - (||a0 - A1|| + eps d) |.
// eps values must be positive and strictly decreasing. The check is skipped
// (degenerate) when ||a0 - A1|| <= tau.
ExpansionCheck expansion_check(const TransportKernel& kernel, const MeasurementSet& measurements,
                               std::span<const double> eps_list,
                               std::optional<double> tau = std::nullopt);

struct DerivativeMap {
  GridSpec grid;
  std::vector<double> values;           // node (i, j) at j * nx + i
  std::vector<double> active_fraction;
  std::vector<std::uint8_t> floor_flags;
  int floor_hits = 0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
};

struct ImagingOptions {
  std::optional<double> tau;  // default_floor() when empty
  bool normalize_coverage = false;
  int threads = 1;
};

// d at every grid node. Nodes without coverage get d = 0 and
// active_fraction = 0. Each node is reduced sequentially in receiver order,
// so the map does not depend on how nodes are scheduled.
DerivativeMap scan_grid(const GridSpec& grid, const MeasurementSet& measurements,
                        const ImagingOptions& options);

}  // namespace retroscat
