#include <atomic>

#include "retroscat/diagnostics.hpp"
#include "retroscat/simd/kernels.hpp"

namespace retroscat::simd {

namespace {

Level detect() {
#if defined(RETROSCAT_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Level::avx2;
#endif
  return Level::scalar;
}

std::atomic<Level>& current() {
  static std::atomic<Level> level{detect()};
  return level;
}

}  // namespace

std::string_view level_name(Level level) {
  return level == Level::avx2 ? "avx2" : "scalar";
}

bool level_supported(Level level) {
  if (level == Level::scalar) return true;
  return detect() == Level::avx2;
}

Level active_level() { return current().load(std::memory_order_relaxed); }

void force_level(Level level) {
  if (!level_supported(level)) {
    throw DomainError("SIMD level " + std::string(level_name(level)) + " not supported on this CPU");
  }
  current().store(level, std::memory_order_relaxed);
}

MisfitMoments misfit_moments(std::span<const double> w, std::span<const double> a0,
                             std::span<const double> a1, std::span<const double> measured) {
#if defined(RETROSCAT_WITH_AVX2)
  if (active_level() == Level::avx2) return avx2::misfit_moments(w, a0, a1, measured);
#endif
  return scalar::misfit_moments(w, a0, a1, measured);
}

double shifted_norm_sq(std::span<const double> w, std::span<const double> a0,
                       std::span<const double> a1, std::span<const double> measured, double eps) {
#if defined(RETROSCAT_WITH_AVX2)
  if (active_level() == Level::avx2) return avx2::shifted_norm_sq(w, a0, a1, measured, eps);
#endif
  return scalar::shifted_norm_sq(w, a0, a1, measured, eps);
}

void first_order_kernel(std::span<const double> a0, std::span<const double> x1, double z1,
                        double dz2, double coef, std::span<double> out) {
#if defined(RETROSCAT_WITH_AVX2)
  if (active_level() == Level::avx2) return avx2::first_order_kernel(a0, x1, z1, dz2, coef, out);
#endif
  scalar::first_order_kernel(a0, x1, z1, dz2, coef, out);
}

}  // namespace retroscat::simd
