#pragma once

#include <span>
#include <string_view>

// Receiver-loop kernels of the imaging functional.
//
// Every kernel has a scalar reference in namespace `scalar` and, on x86-64
// builds, an AVX2 variant in namespace `avx2`. The unqualified entry points
// dispatch to the best level the CPU supports; the choice is made once per
// process and can be pinned with force_level() (tests compare the levels
// against each other).
namespace retroscat::simd {

enum class Level { scalar, avx2 };

std::string_view level_name(Level level);
bool level_supported(Level level);
Level active_level();
// Throws DomainError if the level is not supported on this CPU.
void force_level(Level level);

// Weighted sums over receivers with residual r_j = a0_j - a1meas_j:
//   norm_sq = sum w_j r_j^2,  inner = sum w_j r_j a1_j.
// Masked receivers carry w_j = 0.
struct MisfitMoments {
  double norm_sq = 0.0;
  double inner = 0.0;
};

MisfitMoments misfit_moments(std::span<const double> weights, std::span<const double> a0,
                             std::span<const double> a1, std::span<const double> measured);

// sum w_j (a0_j + eps a1_j - a1meas_j)^2, for expansion checks.
double shifted_norm_sq(std::span<const double> weights, std::span<const double> a0,
                       std::span<const double> a1, std::span<const double> measured, double eps);

// out_j = coef * a0_j / sqrt((x1_j - z1)^2 + dz2^2)
void first_order_kernel(std::span<const double> a0, std::span<const double> x1, double z1,
                        double dz2, double coef, std::span<double> out);

namespace scalar {
MisfitMoments misfit_moments(std::span<const double> weights, std::span<const double> a0,
                             std::span<const double> a1, std::span<const double> measured);
double shifted_norm_sq(std::span<const double> weights, std::span<const double> a0,
                       std::span<const double> a1, std::span<const double> measured, double eps);
void first_order_kernel(std::span<const double> a0, std::span<const double> x1, double z1,
                        double dz2, double coef, std::span<double> out);
}  // namespace scalar

#if defined(RETROSCAT_WITH_AVX2)
namespace avx2 {
MisfitMoments misfit_moments(std::span<const double> weights, std::span<const double> a0,
                             std::span<const double> a1, std::span<const double> measured);
double shifted_norm_sq(std::span<const double> weights, std::span<const double> a0,
                       std::span<const double> a1, std::span<const double> measured, double eps);
void first_order_kernel(std::span<const double> a0, std::span<const double> x1, double z1,
                        double dz2, double coef, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace retroscat::simd
