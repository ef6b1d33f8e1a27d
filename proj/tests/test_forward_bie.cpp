#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "retroscat/boundary.hpp"
#include "retroscat/diagnostics.hpp"
#include "retroscat/forward_analytic.hpp"
#include "retroscat/forward_bie.hpp"

using namespace retroscat;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct CaptureWarnings {
  std::vector<std::string> seen;
  WarningHandler previous;
  CaptureWarnings() {
    previous = set_warning_handler([this](const std::string& m) { seen.push_back(m); });
  }
  ~CaptureWarnings() { set_warning_handler(previous); }
};

}  // namespace

TEST_CASE("zero contrast gives no scattered field") {
  const auto p = derive_params(2.0, 1.0, 1.0, 1.0, 1.0);
  const auto kite = make_kite_boundary({{0.2, 0.1}}, 64);
  const auto dens = assemble_and_solve(kite, p, unit(0.8));
  for (int m = 0; m < 10; ++m) {
    const Vec2 x = (3.0 + 0.4 * m) * unit(2.0 * kPi * m / 10);
    CHECK(std::abs(evaluate_scattered(dens, x)) < 1e-8);
  }
}

TEST_CASE("disk agrees with the modal series") {
  const auto p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);
  const DiskScatterer disk{{0.0, 0.0}, 1.0};
  const Vec2 eta = unit(0.3);
  const auto dens = assemble_and_solve(make_disk_boundary(1.0, {disk.center}, 128), p, eta);
  const auto mc = modal_coefficients(disk, p, eta);
  for (int m = 0; m < 16; ++m) {
    const Vec2 x = (1.0 + 0.5 * p.lambda + 0.25 * m) * unit(2.0 * kPi * m / 16 + 0.1);
    const cd exact = scattered_field(mc, x);
    CHECK(std::abs(evaluate_scattered(dens, x) - exact) < 1e-6 * std::abs(exact));
  }
}

TEST_CASE("disk agreement across frequencies and contrasts") {
  for (double ka : {0.5, 2.0, 5.0}) {
    for (double mu : {1.0, 2.0}) {
      const auto p = derive_params(ka, 1.0, 1.0, 2.0, mu);
      const DiskScatterer disk{{-0.4, 0.6}, 1.0};
      const Vec2 eta = unit(-1.1);
      const BieSolver solver(make_disk_boundary(1.0, {disk.center}, 128), p);
      CHECK(solver.condition_estimate() < 1e12);
      const auto dens = solver.solve(eta);
      const auto mc = modal_coefficients(disk, p, eta);
      for (int m = 0; m < 8; ++m) {
        const Vec2 x = disk.center + (1.0 + std::max(0.5 * p.lambda, 0.2) + m) * unit(0.7 * m);
        const cd exact = scattered_field(mc, x);
        REQUIRE(std::abs(evaluate_scattered(dens, x) - exact) < 1e-6 * std::abs(exact));
      }
    }
  }
}

TEST_CASE("one factorization serves several incidences") {
  const auto p = derive_params(2.0, 1.0, 1.0, 3.0, 1.0);
  const auto bd = make_ellipse_boundary(1.2, 0.7, {{0.1, 0.0}, 1.0, 0.3}, 96);
  const BieSolver solver(bd, p);
  for (double alpha : {0.0, 1.0, 2.5}) {
    const auto a = solver.solve(unit(alpha));
    const auto b = assemble_and_solve(bd, p, unit(alpha));
    const Vec2 x{4.0, 1.0};
    CHECK(evaluate_scattered(a, x) == evaluate_scattered(b, x));
  }
}

TEST_CASE("kite self-convergence") {
  const auto p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);
  const Vec2 eta = unit(0.4);
  const Vec2 x{4.0, 3.0};
  auto field = [&](int n) {
    return evaluate_scattered(assemble_and_solve(make_kite_boundary({{0.0, 0.0}}, n), p, eta), x);
  };
  const cd u32 = field(32), u64 = field(64), u128 = field(128), u256 = field(256);
  const double e32 = std::abs(u32 - u64);
  const double e64 = std::abs(u64 - u128);
  const double e128 = std::abs(u128 - u256);
  CHECK(e64 * 10.0 < e32);
  CHECK(e128 < e64);
  // Doubling 64 -> 128 shrinks the change by more than a factor of ten.
  CHECK(e128 * 10.0 < e64 + 1e-14);
}

TEST_CASE("interior points are rejected") {
  const auto p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);
  const auto dens = assemble_and_solve(make_kite_boundary({{0.0, 0.0}}, 64), p, unit(0.0));
  CHECK_THROWS_AS(evaluate_scattered(dens, {0.0, 0.0}), DomainError);
}

TEST_CASE("near-boundary evaluation warns but still returns a value") {
  const auto p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);
  const auto dens = assemble_and_solve(make_disk_boundary(1.0, {{0, 0}}, 64), p, unit(0.0));
  CaptureWarnings cap;
  const cd u = evaluate_scattered(dens, {1.01, 0.0});
  CHECK(std::isfinite(u.real()));
  REQUIRE(cap.seen.size() == 1);
  CHECK(cap.seen[0].find("boundary") != std::string::npos);
  evaluate_scattered(dens, {3.0, 0.0});
  CHECK(cap.seen.size() == 1);
}

TEST_CASE("far field of the boundary-integral solution decays like r^(-1/2)") {
  const auto p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);
  const auto dens = assemble_and_solve(make_kite_boundary({{0.0, 0.0}}, 128), p, unit(0.2));
  const Vec2 dir = unit(1.0);
  const double near = std::abs(evaluate_scattered(dens, 100.0 * p.lambda * dir));
  const double far = std::abs(evaluate_scattered(dens, 400.0 * p.lambda * dir));
  CHECK(std::abs(far / near - 0.5) < 0.01);
}

TEST_CASE("boundary checks") {
  CHECK_THROWS_AS(check_boundary(make_disk_boundary(1.0, {}, 7)), GeometryError);
  CHECK_THROWS_AS(check_boundary(make_disk_boundary(1.0, {}, 6)), GeometryError);
  // A curve that stalls at t = 0.
  const ParametricBoundary stalled(
      "stalled", [](double t) { return Vec2{std::cos(t) * (1 - std::cos(t)), std::sin(t) * (1 - std::cos(t))}; },
      [](double t) {
        return Vec2{-std::sin(t) * (1 - std::cos(t)) + std::cos(t) * std::sin(t),
                    std::cos(t) * (1 - std::cos(t)) + std::sin(t) * std::sin(t)};
      },
      [](double) { return Vec2{}; }, 16);
  CHECK_THROWS_AS(check_boundary(stalled), GeometryError);
  const auto p = derive_params(2.0, 1.0, 1.0, 4.0, 1.0);
  CHECK_THROWS_AS(BieSolver(stalled, p), GeometryError);
  // Clockwise orientation.
  const ParametricBoundary cw(
      "cw", [](double t) { return Vec2{std::cos(t), -std::sin(t)}; },
      [](double t) { return Vec2{-std::sin(t), -std::cos(t)}; },
      [](double t) { return Vec2{-std::cos(t), std::sin(t)}; }, 16);
  CHECK_THROWS_AS(check_boundary(cw), GeometryError);
  // Figure eight crosses itself.
  const ParametricBoundary eight(
      "eight", [](double t) { return Vec2{std::sin(2 * t), std::sin(t)}; },
      [](double t) { return Vec2{2 * std::cos(2 * t), std::cos(t)}; },
      [](double t) { return Vec2{-4 * std::sin(2 * t), -std::sin(t)}; }, 32);
  CHECK_THROWS_AS(check_boundary(eight), GeometryError);
}

TEST_CASE("boundary catalog") {
  const auto disk = boundary_from_name("disk(0.5)", {{1.0, 2.0}}, 32);
  CHECK(disk.max_height() == doctest::Approx(2.5));
  CHECK(disk.contains({1.0, 2.0}));
  CHECK_FALSE(disk.contains({1.0, 2.6}));
  const auto ell = boundary_from_name("ellipse(2, 0.5)", {{0.0, 0.0}, 2.0, kPi / 2}, 32);
  CHECK(ell.max_height() == doctest::Approx(4.0).epsilon(1e-6));
  const auto kite = boundary_from_name("kite", {{0.0, 0.0}, 1.0, 0.0}, 32);
  CHECK(kite.max_height() == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(kite.position(0.0).x1 == doctest::Approx(1.0));
  CHECK_THROWS_AS(boundary_from_name("triangle", {}, 32), ConfigError);
  CHECK_THROWS_AS(boundary_from_name("ellipse(1)", {}, 32), ConfigError);
  CHECK(kite.with_nodes(64).n_nodes() == 64);
}
