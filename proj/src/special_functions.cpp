#include "retroscat/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "retroscat/diagnostics.hpp"

namespace retroscat::special {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;
// Below this the two-term ascending series is exact to double precision.
constexpr double kTinyArgument = 1e-5;

void check_order(int n) {
  if (n < 0) throw DomainError("negative Bessel order");
}

// Highest order needed for Miller's recurrence to deliver orders up to nmax.
// The margin is measured from max(nmax, x): below x the recurrence runs in
// the oscillatory region and needs a start beyond the turning point.
int miller_start(int nmax, double x) {
  const double m = std::max(static_cast<double>(nmax), std::ceil(x));
  const int start =
      static_cast<int>(m + std::ceil(10.0 + 2.0 * std::sqrt(m * std::max(1.0, x))));
  return start + (start % 2);
}

// J_0 .. J_top for x > 0 (top >= nmax is chosen internally and returned in
// full so that Neumann sums can use the tail).
std::vector<double> miller_full(int nmax, double x) {
  const int top = miller_start(nmax, x);
  std::vector<double> j(static_cast<std::size_t>(top) + 1, 0.0);
  if (x < kTinyArgument) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = 1.0;  // (x/2)^k / k!
    for (int k = 0; k <= top; ++k) {
      if (k > 0) term *= half / k;
      j[k] = term * (1.0 - q / (k + 1) + q * q / (2.0 * (k + 1) * (k + 2)));
    }
    return j;
  }
  double next = 0.0;  // J_{k+1}
  double cur = 1e-30;  // J_k
  double norm_sum = 2.0 * cur;  // top is even
  j[top] = cur;
  for (int k = top; k > 0; --k) {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    j[k - 1] = cur;
    if (k - 1 >= 2 && (k - 1) % 2 == 0) norm_sum += 2.0 * cur;
    if (std::abs(cur) > kRescaleAbove) {
      for (int i = k - 1; i <= top; ++i) j[i] *= kRescaleBy;
      cur *= kRescaleBy;
      next *= kRescaleBy;
      norm_sum *= kRescaleBy;
    }
  }
  const double norm = j[0] + norm_sum;
  for (double& v : j) v /= norm;
  return j;
}

}  // namespace

std::vector<double> bessel_j_table(int nmax, double x) {
  check_order(nmax);
  if (x < 0.0 || !std::isfinite(x)) throw DomainError("Bessel J requires x >= 0");
  if (x == 0.0) {
    std::vector<double> j(static_cast<std::size_t>(nmax) + 1, 0.0);
    j[0] = 1.0;
    return j;
  }
  std::vector<double> j = miller_full(nmax, x);
  j.resize(static_cast<std::size_t>(nmax) + 1);
  return j;
}

CylinderTable cylinder_table(int nmax, double x) {
  check_order(nmax);
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("Bessel Y requires x > 0 (logarithmic singularity at 0)");
  }
  const int need = std::max(nmax, 1);
  std::vector<double> j = miller_full(need, x);
  const int top = static_cast<int>(j.size()) - 1;

  // Neumann series:
  //   Y_0 = (2/pi)(ln(x/2)+g) J_0 - (4/pi) sum_k (-1)^k J_2k / k
  //   Y_1 = -Y_0' = (2/pi)(ln(x/2)+g) J_1 - (2/pi) J_0/x
  //                 + (2/pi) sum_k (-1)^k (J_{2k-1} - J_{2k+1}) / k
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = 1; 2 * k <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / k;
    const double upper = (2 * k + 1 <= top) ? j[2 * k + 1] : 0.0;
    s1 += sign * (j[2 * k - 1] - upper) / k;
  }
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  CylinderTable t;
  t.y.assign(static_cast<std::size_t>(need) + 1, 0.0);
  t.y[0] = two_over_pi * (lg * j[0] - 2.0 * s0);
  t.y[1] = two_over_pi * (lg * j[1] - j[0] / x + s1);
  for (int n = 1; n < need; ++n) t.y[n + 1] = (2.0 * n / x) * t.y[n] - t.y[n - 1];
  j.resize(static_cast<std::size_t>(need) + 1);
  t.j = std::move(j);
  t.j.resize(static_cast<std::size_t>(nmax) + 1);
  t.y.resize(static_cast<std::size_t>(nmax) + 1);
  return t;
}

double bessel_j(int n, double x) {
  check_order(n);
  return bessel_j_table(n, x)[n];
}

double bessel_y(int n, double x) {
  check_order(n);
  return cylinder_table(n, x).y[n];
}

std::complex<double> hankel1(int n, double x) {
  check_order(n);
  return cylinder_table(n, x).h1(n);
}

double table_deriv(const std::vector<double>& c, int n, double x) {
  if (n == 0) return -c[1];
  return c[n - 1] - (n / x) * c[n];
}

double deriv_j(int n, double x) {
  check_order(n);
  if (x == 0.0) return n == 1 ? 0.5 : 0.0;
  const auto j = bessel_j_table(std::max(n, 1), x);
  return table_deriv(j, n, x);
}

double deriv_y(int n, double x) {
  check_order(n);
  const auto t = cylinder_table(std::max(n, 1), x);
  return table_deriv(t.y, n, x);
}

std::complex<double> deriv_h1(int n, double x) {
  check_order(n);
  const auto t = cylinder_table(std::max(n, 1), x);
  return {table_deriv(t.j, n, x), table_deriv(t.y, n, x)};
}

CylEval cyl_eval(int n, double x) {
  check_order(n);
  const auto t = cylinder_table(n, x);
  return {n, x, t.j[n], t.y[n], t.h1(n)};
}

}  // namespace retroscat::special
