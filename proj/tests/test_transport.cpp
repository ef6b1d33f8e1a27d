#include <doctest.h>

#include <cmath>
#include <random>

#include "retroscat/diagnostics.hpp"
#include "retroscat/transport.hpp"

using namespace retroscat;

namespace {

MeasurementSet line_data(const MeasurementGeometry& g, const std::vector<double>& a0) {
  MeasurementSet m;
  m.geometry = g;
  for (int j = 0; j < g.n_receivers; ++j) m.records.push_back({g.abscissa(j), Line::gamma0, a0[j]});
  for (int j = 0; j < g.n_receivers; ++j) m.records.push_back({g.abscissa(j), Line::gamma1, 0.0});
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("back-projection examples") {
  const auto g = make_geometry(50.0, 100.0, {-100.0, 100.0}, 3);
  CHECK(backproject_point(g, {10.0, 100.0}, {0.0, 0.0}) == Vec2{5.0, 50.0});
  CHECK(backproject_point(g, {3.25, 100.0}, {3.25, -7.0}) == Vec2{3.25, 50.0});
  const Vec2 p = backproject_point(g, {11.0, 100.0}, {1.0, 2.0});
  CHECK(p.x1 == doctest::Approx(1.0 + 10.0 * 48.0 / 98.0).epsilon(1e-15));
  CHECK(p.x2 == 50.0);
  CHECK(std::abs(cross(p - Vec2{1.0, 2.0}, Vec2{11.0, 100.0} - Vec2{1.0, 2.0})) < 1e-12 * 100.0 * 98.0);
  CHECK_THROWS_AS(backproject_point(g, {0.0, 100.0}, {0.0, 50.0}), GeometryError);
  CHECK_THROWS_AS(backproject_point(g, {0.0, 99.0}, {0.0, 0.0}), GeometryError);
}

TEST_CASE("ray geometry invariants") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uz1(-5, 5), uz2(-3, 4), ux(-30, 30);
  for (bool reversed : {false, true}) {
    const auto g = reversed ? make_geometry(80.0, 60.0, {-30, 30}, 5) : make_geometry(60.0, 80.0, {-30, 30}, 5);
    for (int k = 0; k < 500; ++k) {
      const Vec2 z{uz1(rng), uz2(rng)};
      const Vec2 x{ux(rng), g.gamma1};
      const RayGeometry r = ray_geometry(g, z, x);
      const Vec2 d = z - x;
      REQUIRE(r.eta == (1.0 / norm(d)) * d);
      REQUIRE(r.p.x2 == g.gamma0);
      REQUIRE(std::abs(cross(r.p - z, x - z)) <= 1e-12 * norm(r.p - z) * norm(x - z));
      REQUIRE(r.t_eta == -(g.gamma1 - g.gamma0) / r.eta.x2);
      if (!reversed) REQUIRE(r.t_eta > 0.0);
      // The forward map inverts the back-projection.
      const Vec2 back = forward_project_point(g, r.p, z);
      REQUIRE(std::abs(back.x1 - x.x1) < 1e-12 * std::max(1.0, std::abs(x.x1)));
      REQUIRE(back.x2 == g.gamma1);
    }
  }
}

TEST_CASE("transported amplitude examples") {
  const auto g = make_geometry(50.0, 100.0, {-100.0, 100.0}, 3);
  CHECK(transported_amplitude(g, 1.0, {0, 0}, {7.0, 100.0}, 0.0) ==
        doctest::Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(transported_amplitude(g, 0.0, {0, 0}, {7.0, 100.0}, 0.0) == 0.0);

  // Closed form of the kernels evaluated independently.
  const Vec2 z{0.3, 1.2}, x{4.0, 100.0};
  const double a0 = 0.8 * std::sqrt((50.0 - 1.2) / (100.0 - 1.2));
  const double a1 = -0.25 * a0 * (100.0 - 50.0) / ((50.0 - 1.2) * norm(x - z));
  for (double eps : {0.0, 1e-3, 1e-2, 1e-1}) {
    CHECK(rel(transported_amplitude(g, 0.8, z, x, eps), a0 + eps * a1) < 1e-13);
  }
  CHECK_THROWS_AS(transported_amplitude(g, 1.0, {0.0, 60.0}, x, 0.0), GeometryError);
  CHECK_THROWS_AS(transported_amplitude(g, -1.0, z, x, 0.0), DomainError);
  CHECK_THROWS_AS(transported_amplitude(g, 1.0, z, x, -0.1), DomainError);
}

TEST_CASE("kernel for constant data") {
  const auto g = make_geometry(50.0, 100.0, {-20.0, 20.0}, 41);
  const auto m = line_data(g, std::vector<double>(41, 1.0));
  const auto k = build_kernel({0.0, 0.0}, m);
  int active = 0;
  for (int j = 0; j < 41; ++j) {
    if (!k.mask[j]) {
      CHECK(k.a0[j] == 0.0);
      CHECK(k.a1[j] == 0.0);
      continue;
    }
    ++active;
    CHECK(k.a0[j] == doctest::Approx(0.70710678118654752).epsilon(1e-15));
  }
  CHECK(active == k.active);
  // p = x/2 falls inside [-20, 20] for every receiver.
  CHECK(active == 41);
}

TEST_CASE("receivers whose back-projection leaves the aperture are masked") {
  const auto g = make_geometry(50.0, 100.0, {-20.0, 20.0}, 41);
  const auto m = line_data(g, std::vector<double>(41, 1.0));
  const auto k = build_kernel({60.0, 0.0}, m);
  for (int j = 0; j < 41; ++j) {
    const double p1 = 60.0 + 0.5 * (g.abscissa(j) - 60.0);
    CHECK(static_cast<bool>(k.mask[j]) == (p1 >= -20.0 && p1 <= 20.0));
    if (!k.mask[j]) CHECK(k.a0[j] == 0.0);
  }
  CHECK(k.active > 0);
  CHECK(k.active < 41);
}

TEST_CASE("first-order kernel matches the travel-time form") {
  const auto g = make_geometry(60.0, 80.0, {-30.0, 30.0}, 121);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(0.1, 2.0), uz1(-5, 5), uz2(-3, 4);
  std::vector<double> a(121);
  for (auto& v : a) v = ua(rng);
  const auto m = line_data(g, a);
  for (int t = 0; t < 20; ++t) {
    const Vec2 z{uz1(rng), uz2(rng)};
    const auto k = build_kernel(z, m);
    for (int j = 0; j < 121; ++j) {
      if (!k.mask[j]) continue;
      const Vec2 x{k.x1[j], g.gamma1};
      const RayGeometry r = ray_geometry(g, z, x);
      const double expected = -k.a0[j] * r.t_eta / (4.0 * norm(x - z) * norm(r.p - z));
      REQUIRE(rel(k.a1[j], expected) < 1e-13);
      REQUIRE(k.a0[j] >= 0.0);
    }
  }
}

TEST_CASE("kernel identity with the transported amplitude") {
  const auto g = make_geometry(60.0, 80.0, {-30.0, 30.0}, 61);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ua(0.1, 2.0), uz1(-5, 5), uz2(-3, 4);
  std::vector<double> a(61);
  for (auto& v : a) v = ua(rng);
  const auto m = line_data(g, a);
  for (int t = 0; t < 30; ++t) {
    const Vec2 z{uz1(rng), uz2(rng)};
    const auto k = build_kernel(z, m);
    for (int j = 0; j < 61; ++j) {
      if (!k.mask[j]) continue;
      const Vec2 x{k.x1[j], g.gamma1};
      const double a_p = *interpolate_line(g, a, backproject_point(g, x, z).x1);
      for (double eps : {1e-3, 1e-2, 1e-1}) {
        REQUIRE(rel(k.a0[j] + eps * k.a1[j], transported_amplitude(g, a_p, z, x, eps)) < 1e-13);
      }
    }
  }
}

TEST_CASE("kernel construction errors") {
  const auto g = make_geometry(60.0, 80.0, {-30.0, 30.0}, 3);
  MeasurementSet m;
  m.geometry = g;
  m.records = {{-30.0, Line::gamma0, 1.0}, {-30.0, Line::gamma1, 1.0}};
  CHECK_THROWS_AS(build_kernel({0, 0}, m), DataError);
  const auto ok = line_data(g, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(build_kernel({0, 61}, ok), GeometryError);
}

TEST_CASE("linear interpolation on a line") {
  const auto g = make_geometry(60.0, 80.0, {0.0, 4.0}, 5);
  const std::vector<double> s{0.0, 1.0, 4.0, 9.0, 16.0};
  CHECK(*interpolate_line(g, s, 0.0) == 0.0);
  CHECK(*interpolate_line(g, s, 4.0) == 16.0);
  CHECK(*interpolate_line(g, s, 2.0) == 4.0);
  CHECK(*interpolate_line(g, s, 2.5) == doctest::Approx(6.5));
  CHECK_FALSE(interpolate_line(g, s, -1e-9).has_value());
  CHECK_FALSE(interpolate_line(g, s, 4.0 + 1e-9).has_value());
}

TEST_CASE("characteristic transport with a radial phase") {
  const auto g = make_geometry(60.0, 80.0, {-30.0, 30.0}, 2);
  const double k0 = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uz1(-5, 5), uz2(-3, 4), ux(-30, 30), ua(0.5, 2);
  for (int k = 0; k < 100; ++k) {
    const Vec2 z{uz1(rng), uz2(rng)};
    const LineSample s{ux(rng), ua(rng)};
    const auto res = characteristic_transport([&](Vec2 x) { return k0 * norm(x - z); },
                                              std::span<const LineSample>(&s, 1), g, 0.5);
    REQUIRE(res.dropped == 0);
    REQUIRE(res.rays.size() == 1);
    const double expected = s.amplitude * std::sqrt((g.gamma0 - z.x2) / (g.gamma1 - z.x2));
    REQUIRE(rel(res.rays[0].amplitude, expected) < 1e-6);
    const double x1 = forward_project_point(g, {s.x1, g.gamma0}, z).x1;
    REQUIRE(std::abs(res.rays[0].x1_end - x1) < 1e-5);
  }
}

TEST_CASE("characteristic transport with a linear phase keeps the amplitude") {
  const auto g = make_geometry(60.0, 80.0, {-30.0, 30.0}, 2);
  const double k0 = 2.0 * std::numbers::pi;
  const std::vector<LineSample> line0{{-10.0, 0.3}, {0.0, 1.0}, {17.5, 2.0}};
  const auto res = characteristic_transport([&](Vec2 x) { return k0 * x.x2; }, line0, g, 0.5);
  REQUIRE(res.rays.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rel(res.rays[i].amplitude, line0[i].amplitude) < 1e-10);
    CHECK(std::abs(res.rays[i].x1_end - line0[i].x1) < 1e-10);
  }
  // Phase decreasing upwards: rays are still oriented towards line 1.
  const auto down = characteristic_transport([&](Vec2 x) { return -k0 * x.x2; }, line0, g, 0.5);
  CHECK(down.rays.size() == 3);
}

TEST_CASE("characteristic transport converges at least at second order") {
  const auto g = make_geometry(2.0, 6.0, {-3.0, 3.0}, 2);
  const Vec2 z{0.0, 0.0};
  const LineSample s{1.5, 1.0};
  const double expected = std::sqrt(g.gamma0 / g.gamma1);
  auto error = [&](double step) {
    const auto res = characteristic_transport([&](Vec2 x) { return norm(x - z); },
                                              std::span<const LineSample>(&s, 1), g, step);
    return std::abs(res.rays.at(0).amplitude - expected);
  };
  const double e1 = error(0.8), e2 = error(0.4), e3 = error(0.2);
  MESSAGE("errors " << e1 << " " << e2 << " " << e3);
  CHECK(e1 / e2 >= 2.0);
  CHECK(e2 / e3 >= 2.0);
}

TEST_CASE("characteristic transport failure modes") {
  const auto g = make_geometry(60.0, 80.0, {-30.0, 30.0}, 2);
  const LineSample s{0.0, 1.0};
  const std::span<const LineSample> one(&s, 1);
  CHECK_THROWS_AS(characteristic_transport([](Vec2) { return 1.0; }, one, g, 0.5), DataError);
  const LineSample zero{0.0, 0.0};
  CHECK_THROWS_AS(characteristic_transport([](Vec2 x) { return x.x2; },
                                           std::span<const LineSample>(&zero, 1), g, 0.5),
                  DataError);
  CHECK_THROWS_AS(characteristic_transport([](Vec2 x) { return x.x2; }, one, g, 0.0), DomainError);
  // Rays running parallel to the lines leave the box without crossing.
  const auto res = characteristic_transport([](Vec2 x) { return x.x1 + 1e-9 * x.x2; }, one, g, 2.0);
  CHECK(res.rays.empty());
  CHECK(res.dropped == 1);
}
