#pragma once

#include <string>
#include <vector>

#include "retroscat/core_types.hpp"

namespace retroscat {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationOptions {
  // Relative perturbation applied to the scattered modal coefficients before
  // the boundary-residual check. Zero in normal runs.
  double modal_perturbation = 0.0;
};

// Disk of radius 0.5 at (0.4, 1.0), lambda = 1, eps_star = 2, lines at 60
// and 80 over [-30, 30] with 121 receivers each.
Scene reference_disk_scene();
MeasurementGeometry reference_geometry();

CheckResult check_wronskian();
CheckResult check_bessel_zeros();
CheckResult check_modal_boundary_residual(double perturbation = 0.0);
CheckResult check_bie_vs_analytic();
CheckResult check_transport_vs_spreading();
CheckResult check_kernel_identity();
CheckResult check_expansion_order();

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

std::string format_check(const CheckResult& result);

}  // namespace retroscat
