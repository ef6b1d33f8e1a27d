#include <cmath>

#include "retroscat/simd/kernels.hpp"

namespace retroscat::simd::scalar {

// Sequential in receiver order.
MisfitMoments misfit_moments(std::span<const double> w, std::span<const double> a0,
                             std::span<const double> a1, std::span<const double> measured) {
  MisfitMoments m;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double r = a0[j] - measured[j];
    m.norm_sq += w[j] * (r * r);
    m.inner += w[j] * (r * a1[j]);
  }
  return m;
}

double shifted_norm_sq(std::span<const double> w, std::span<const double> a0,
                       std::span<const double> a1, std::span<const double> measured, double eps) {
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double r = (a0[j] + eps * a1[j]) - measured[j];
    s += w[j] * (r * r);
  }
  return s;
}

void first_order_kernel(std::span<const double> a0, std::span<const double> x1, double z1,
                        double dz2, double coef, std::span<double> out) {
  const double dz2sq = dz2 * dz2;
  for (std::size_t j = 0; j < a0.size(); ++j) {
    const double dx = x1[j] - z1;
    out[j] = (coef * a0[j]) / std::sqrt(dx * dx + dz2sq);
  }
}

}  // namespace retroscat::simd::scalar
