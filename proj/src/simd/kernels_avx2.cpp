#include <immintrin.h>

#include <cmath>

#include "retroscat/simd/kernels.hpp"

// Compiled with -mavx2 -mfma -ffp-contract=off. Reductions keep four lane
// accumulators combined in a fixed order, so results are deterministic but
// may differ from the scalar reference in the last bits. The element-wise
// kernel uses only correctly rounded operations and matches the scalar
// reference bit for bit.
namespace retroscat::simd::avx2 {

namespace {

double lane_sum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

MisfitMoments misfit_moments(std::span<const double> w, std::span<const double> a0,
                             std::span<const double> a1, std::span<const double> measured) {
  const std::size_t n = w.size();
  __m256d norm_acc = _mm256_setzero_pd();
  __m256d inner_acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d vw = _mm256_loadu_pd(w.data() + j);
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(a0.data() + j), _mm256_loadu_pd(measured.data() + j));
    norm_acc = _mm256_add_pd(norm_acc, _mm256_mul_pd(vw, _mm256_mul_pd(r, r)));
    inner_acc = _mm256_add_pd(
        inner_acc, _mm256_mul_pd(vw, _mm256_mul_pd(r, _mm256_loadu_pd(a1.data() + j))));
  }
  MisfitMoments m{lane_sum(norm_acc), lane_sum(inner_acc)};
  for (; j < n; ++j) {
    const double r = a0[j] - measured[j];
    m.norm_sq += w[j] * (r * r);
    m.inner += w[j] * (r * a1[j]);
  }
  return m;
}

double shifted_norm_sq(std::span<const double> w, std::span<const double> a0,
                       std::span<const double> a1, std::span<const double> measured, double eps) {
  const std::size_t n = w.size();
  const __m256d veps = _mm256_set1_pd(eps);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d shifted =
        _mm256_add_pd(_mm256_loadu_pd(a0.data() + j), _mm256_mul_pd(veps, _mm256_loadu_pd(a1.data() + j)));
    const __m256d r = _mm256_sub_pd(shifted, _mm256_loadu_pd(measured.data() + j));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w.data() + j), _mm256_mul_pd(r, r)));
  }
  double s = lane_sum(acc);
  for (; j < n; ++j) {
    const double r = (a0[j] + eps * a1[j]) - measured[j];
    s += w[j] * (r * r);
  }
  return s;
}

void first_order_kernel(std::span<const double> a0, std::span<const double> x1, double z1,
                        double dz2, double coef, std::span<double> out) {
  const std::size_t n = a0.size();
  const double dz2sq = dz2 * dz2;
  const __m256d vz1 = _mm256_set1_pd(z1);
  const __m256d vdz = _mm256_set1_pd(dz2sq);
  const __m256d vcoef = _mm256_set1_pd(coef);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x1.data() + j), vz1);
    const __m256d dist = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), vdz));
    const __m256d num = _mm256_mul_pd(vcoef, _mm256_loadu_pd(a0.data() + j));
    _mm256_storeu_pd(out.data() + j, _mm256_div_pd(num, dist));
  }
  for (; j < n; ++j) {
    const double dx = x1[j] - z1;
    out[j] = (coef * a0[j]) / std::sqrt(dx * dx + dz2sq);
  }
}

}  // namespace retroscat::simd::avx2
