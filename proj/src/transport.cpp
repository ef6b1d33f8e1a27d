#include "retroscat/transport.hpp"

#include <array>
#include <cmath>

#include "retroscat/diagnostics.hpp"
#include "retroscat/simd/kernels.hpp"

namespace retroscat {

namespace {

void require_probe_below(const MeasurementGeometry& g, Vec2 z) {
  if (!(z.x2 < std::min(g.gamma0, g.gamma1))) {
    throw GeometryError("probe point must lie strictly below both measurement lines");
  }
}

void require_on_line1(const MeasurementGeometry& g, Vec2 x) {
  if (std::abs(x.x2 - g.gamma1) > 1e-12 * std::max(1.0, std::abs(g.gamma1))) {
    throw GeometryError("receiver is not on line 1");
  }
}

}  // namespace

Vec2 backproject_point(const MeasurementGeometry& g, Vec2 x, Vec2 z) {
  require_probe_below(g, z);
  require_on_line1(g, x);
  const double ratio = (g.gamma0 - z.x2) / (g.gamma1 - z.x2);
  Vec2 p = z + ratio * (x - z);
  p.x2 = g.gamma0;
  return p;
}

Vec2 forward_project_point(const MeasurementGeometry& g, Vec2 p, Vec2 z) {
  require_probe_below(g, z);
  const double ratio = (g.gamma1 - z.x2) / (g.gamma0 - z.x2);
  Vec2 x = z + ratio * (p - z);
  x.x2 = g.gamma1;
  return x;
}

RayGeometry ray_geometry(const MeasurementGeometry& g, Vec2 z, Vec2 x) {
  RayGeometry ray;
  ray.z = z;
  ray.x = x;
  ray.p = backproject_point(g, x, z);
  const Vec2 d = z - x;
  ray.eta = (1.0 / norm(d)) * d;
  ray.t_eta = -(g.gamma1 - g.gamma0) / ray.eta.x2;
  return ray;
}

double transported_amplitude(const MeasurementGeometry& g, double a0_at_p, Vec2 z, Vec2 x,
                             double eps) {
  if (!(a0_at_p >= 0.0)) throw DomainError("transported amplitude must be non-negative");
  if (!(eps >= 0.0)) throw DomainError("probe radius must be non-negative");
  const double radicand = (g.gamma0 - z.x2) / (g.gamma1 - z.x2);
  if (!(radicand > 0.0)) throw GeometryError("probe point lies between or above the lines");
  const RayGeometry ray = ray_geometry(g, z, x);
  const double correction = eps * ray.t_eta / (4.0 * norm(ray.x - z) * norm(ray.p - z));
  return a0_at_p * std::sqrt(radicand) * (1.0 - correction);
}

std::optional<double> interpolate_line(const MeasurementGeometry& g, std::span<const double> samples,
                                       double x1) {
  const int n = g.n_receivers;
  if (x1 < g.aperture.x1_min || x1 > g.aperture.x1_max) return std::nullopt;
  int idx = static_cast<int>(std::floor((x1 - g.aperture.x1_min) / g.spacing()));
  idx = std::clamp(idx, 0, n - 2);
  const double xa = g.abscissa(idx);
  const double xb = g.abscissa(idx + 1);
  const double t = (x1 - xa) / (xb - xa);
  return (1.0 - t) * samples[idx] + t * samples[idx + 1];
}

TransportKernel build_kernel(Vec2 z, const MeasurementSet& meas) {
  const MeasurementGeometry& g = meas.geometry;
  const std::vector<double> line0 = meas.amplitudes(Line::gamma0);
  if (line0.size() < 2 || static_cast<int>(line0.size()) != g.n_receivers) {
    throw DataError("line-0 data needs at least two samples on the receiver grid");
  }
  require_probe_below(g, z);

  const int n = g.n_receivers;
  const double spreading = std::sqrt((g.gamma0 - z.x2) / (g.gamma1 - z.x2));
  TransportKernel k;
  k.z = z;
  k.x1.resize(n);
  k.a0.assign(n, 0.0);
  k.a1.assign(n, 0.0);
  k.mask.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    k.x1[j] = g.abscissa(j);
    const Vec2 p = backproject_point(g, {k.x1[j], g.gamma1}, z);
    if (const auto a = interpolate_line(g, line0, p.x1)) {
      k.a0[j] = *a * spreading;
      k.mask[j] = 1;
      ++k.active;
    }
  }
  const double coef = -0.25 * (g.gamma1 - g.gamma0) / (g.gamma0 - z.x2);
  simd::first_order_kernel(k.a0, k.x1, z.x1, g.gamma1 - z.x2, coef, k.a1);
  return k;
}

TransportBox default_transport_box(const MeasurementGeometry& g) {
  const double width = g.aperture.x1_max - g.aperture.x1_min;
  const double sep = std::abs(g.gamma1 - g.gamma0);
  return {g.aperture.x1_min - width, g.aperture.x1_max + width,
          std::min(g.gamma0, g.gamma1) - sep, std::max(g.gamma0, g.gamma1) + sep};
}

namespace {

using State = std::array<double, 3>;  // x1, x2, ln A

struct RayField {
  const PhaseField& phase;
  double fd;
  double orientation;

  State operator()(const State& y) const {
    const Vec2 x{y[0], y[1]};
    const double c = phase(x);
    const double e = phase({x.x1 + fd, x.x2});
    const double w = phase({x.x1 - fd, x.x2});
    const double nn = phase({x.x1, x.x2 + fd});
    const double s = phase({x.x1, x.x2 - fd});
    const Vec2 grad{(e - w) / (2.0 * fd), (nn - s) / (2.0 * fd)};
    const double lap = (e + w + nn + s - 4.0 * c) / (fd * fd);
    const double g = norm(grad);
    if (!(g >= 1e-12)) throw DataError("phase gradient vanishes along a ray");
    return {orientation * grad.x1 / g, orientation * grad.x2 / g, -orientation * lap / (2.0 * g)};
  }
};

State rk4(const RayField& f, const State& y, double h) {
  auto axpy = [](const State& a, double s, const State& b) {
    return State{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * h, k1));
  const State k3 = f(axpy(y, 0.5 * h, k2));
  const State k4 = f(axpy(y, h, k3));
  State out;
  for (int i = 0; i < 3; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace

TransportResult characteristic_transport(const PhaseField& phase,
                                         std::span<const LineSample> line0_data,
                                         const MeasurementGeometry& g, double step,
                                         std::optional<TransportBox> box) {
  if (!(step > 0.0)) throw DomainError("transport step must be positive");
  const TransportBox domain = box.value_or(default_transport_box(g));
  const double target = g.gamma1;
  const double tol = 1e-13 * std::max(1.0, std::abs(target));
  const long max_steps =
      static_cast<long>(std::ceil(4.0 * ((domain.x1_max - domain.x1_min) + (domain.x2_max - domain.x2_min)) / step)) + 16;

  TransportResult result;
  for (const LineSample& sample : line0_data) {
    if (!(sample.amplitude > 0.0)) {
      // ln A is undefined; a zero amplitude stays zero along the ray.
      throw DataError("characteristic transport needs positive line-0 amplitudes");
    }
    const Vec2 start{sample.x1, g.gamma0};
    const double fd = step / 10.0;
    RayField probe{phase, fd, 1.0};
    const State d0 = probe({start.x1, start.x2, 0.0});
    const double towards = (target - g.gamma0) * d0[1];
    const RayField field{phase, fd, towards < 0.0 ? -1.0 : 1.0};

    State y{start.x1, start.x2, std::log(sample.amplitude)};
    bool crossed = false;
    for (long it = 0; it < max_steps; ++it) {
      State next = rk4(field, y, step);
      const double g0 = y[1] - target;
      const double g1 = next[1] - target;
      if (g0 == 0.0 || (g0 < 0.0) != (g1 < 0.0) || g1 == 0.0) {
        // Regula falsi (Illinois) on the step length.
        double lo = 0.0, hi = step, flo = g0, fhi = g1;
        int side = 0;
        State best = std::abs(g1) < std::abs(g0) ? next : y;
        for (int k = 0; k < 100 && std::abs(best[1] - target) > tol; ++k) {
          const double h = (lo * fhi - hi * flo) / (fhi - flo);
          const State trial = rk4(field, y, h);
          const double ft = trial[1] - target;
          best = trial;
          if ((ft < 0.0) == (flo < 0.0)) {
            lo = h;
            flo = ft;
            if (side == -1) fhi *= 0.5;
            side = -1;
          } else {
            hi = h;
            fhi = ft;
            if (side == 1) flo *= 0.5;
            side = 1;
          }
        }
        result.rays.push_back({sample.x1, best[0], std::exp(best[2])});
        crossed = true;
        break;
      }
      y = next;
      if (!domain.contains({y[0], y[1]})) break;
    }
    if (!crossed) ++result.dropped;
  }
  return result;
}

}  // namespace retroscat
