#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "retroscat/boundary.hpp"
#include "retroscat/core_types.hpp"

namespace retroscat {

using cd = std::complex<double>;

// Boundary geometry sampled at the quadrature nodes.
struct BoundaryNodes {
  std::vector<Vec2> x;
  std::vector<Vec2> dx;
  std::vector<Vec2> ddx;
  std::vector<double> speed;   // |x'(t_i)|
  std::vector<Vec2> normal;    // outward unit normal
  double spacing = 0.0;        // minimum distance between neighbouring nodes

  int size() const { return static_cast<int>(x.size()); }
};

BoundaryNodes sample_boundary(const ParametricBoundary& boundary);

// Cauchy data of the total field on the boundary: phi = u, psi = du/dnu
// taken from the exterior. Exterior scattered field:
//   u_dif(x) = int dPhi_0/dnu_y (x,y) phi(y) - Phi_0(x,y) psi(y) ds(y).
struct TransmissionDensities {
  std::vector<cd> phi;
  std::vector<cd> psi;
  std::shared_ptr<const BoundaryNodes> nodes;
  std::shared_ptr<const ParametricBoundary> boundary;
  PhysicalParams params;
  Vec2 eta;
};

// Assembles and LU-factors the 2N x 2N transmission system once; each
// solve() then handles one incidence direction.
class BieSolver {
 public:
  // Throws GeometryError for an invalid boundary and IllConditionedError
  // when the estimated condition number exceeds 1e12.
  BieSolver(const ParametricBoundary& boundary, const PhysicalParams& params);
  ~BieSolver();
  BieSolver(BieSolver&&) noexcept;
  BieSolver& operator=(BieSolver&&) noexcept;

  TransmissionDensities solve(Vec2 eta) const;

  double condition_estimate() const;
  const BoundaryNodes& nodes() const { return *nodes_; }

 private:
  struct Factorization;
  std::shared_ptr<const BoundaryNodes> nodes_;
  std::shared_ptr<const ParametricBoundary> boundary_;
  PhysicalParams params_;
  std::unique_ptr<Factorization> lu_;
};

TransmissionDensities assemble_and_solve(const ParametricBoundary& boundary,
                                         const PhysicalParams& params, Vec2 eta);

// Scattered field at an exterior point. Throws DomainError for interior
// points; warns when x is within two node spacings of the boundary.
cd evaluate_scattered(const TransmissionDensities& densities, Vec2 x);

}  // namespace retroscat
