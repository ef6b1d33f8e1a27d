#include "retroscat/forward_bie.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "retroscat/diagnostics.hpp"
#include "retroscat/forward_analytic.hpp"
#include "retroscat/special_functions.hpp"

// Transmission problem, direct formulation.
//
// Unknowns are the Cauchy data of the total field on the boundary,
// f = u and g = du/dnu (exterior side); the interior flux is rho*g with
// rho = mu*/mu0. Green's representation on both sides gives
//
//   f/2 - K_e f + S_e g = u_inc          f/2 + K_i f - S_i (rho g) = 0
//   g/2 + K'_e g - T_e f = du_inc/dnu    rho g/2 - K'_i (rho g) + T_i f = 0
//
// and the sums of the two rows are second-kind equations in which the
// hypersingular operators appear only as T_e - T_i. That difference is
// evaluated through Maue's identity
//
//   T_k v = d/ds S_k[dv/ds] + k^2 nu . S_k[nu v]
//
// with trigonometric differentiation, so every kernel is of logarithmic type
// and is integrated with Kress' product quadrature.
namespace retroscat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr cd kI{0.0, 1.0};

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// R_m = -(2pi/n) sum_{l=1}^{n-1} cos(l m pi/n)/l - (pi/n^2) (-1)^m, with 2n nodes.
std::vector<double> kress_weights(int n_nodes) {
  const int n = n_nodes / 2;
  std::vector<double> r(static_cast<std::size_t>(n_nodes));
  for (int m = 0; m < n_nodes; ++m) {
    double s = 0.0;
    for (int l = 1; l < n; ++l) s += std::cos(l * m * kPi / n) / l;
    r[m] = -(2.0 * kPi / n) * s - (kPi / (double(n) * n)) * (m % 2 == 0 ? 1.0 : -1.0);
  }
  return r;
}

// Trigonometric differentiation on the periodic grid.
Eigen::MatrixXd differentiation_matrix(int n_nodes) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  const double h = 2.0 * kPi / n_nodes;
  for (int i = 0; i < n_nodes; ++i) {
    for (int j = 0; j < n_nodes; ++j) {
      if (i == j) continue;
      const int m = i - j;
      d(i, j) = 0.5 * ((m % 2 == 0) ? 1.0 : -1.0) / std::tan(m * h / 2.0);
    }
  }
  return d;
}

struct LayerOperators {
  Matrix single;        // S_k (with |x'| of the source)
  Matrix single_plain;  // kernel Phi_k only
  Matrix single_normal; // Phi_k nu_i.nu_j |x'_j|
  Matrix dbl;           // K_k
  Matrix dbl_adjoint;   // K'_k
};

LayerOperators layer_operators(const BoundaryNodes& nd, double k) {
  const int n = nd.size();
  const double h = 2.0 * kPi / n;
  const auto weights = kress_weights(n);
  LayerOperators op{Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};

  for (int i = 0; i < n; ++i) {
    const double ti = h * i;
    for (int j = 0; j < n; ++j) {
      const double rw = weights[static_cast<std::size_t>(std::abs(i - j))];
      if (i == j) {
        const double sp = nd.speed[i];
        const cd phi1 = -1.0 / (4.0 * kPi);
        const cd phi2 = 0.25 * kI - (kEulerGamma + std::log(0.5 * k * sp)) / (2.0 * kPi);
        const cd base = rw * phi1 + h * phi2;
        op.single(i, i) = base * sp;
        op.single_plain(i, i) = base;
        op.single_normal(i, i) = base * sp;
        const Vec2 d1 = nd.dx[i];
        const Vec2 d2 = nd.ddx[i];
        const double curv = (d2.x1 * d1.x2 - d2.x2 * d1.x1) / (4.0 * kPi * sp * sp);
        op.dbl(i, i) = h * curv;
        op.dbl_adjoint(i, i) = h * curv;
        continue;
      }
      const Vec2 d = nd.x[i] - nd.x[j];
      const double r = norm(d);
      const auto cyl = special::cylinder_table(1, k * r);
      const cd h0{cyl.j[0], cyl.y[0]};
      const cd h1{cyl.j[1], cyl.y[1]};
      const double tj = h * j;
      const double s = std::sin(0.5 * (ti - tj));
      const double logterm = std::log(4.0 * s * s);

      const cd phi = 0.25 * kI * h0;
      const double phi1 = -cyl.j[0] / (4.0 * kPi);
      const cd base = rw * phi1 + h * (phi - phi1 * logterm);
      op.single_plain(i, j) = base;
      op.single(i, j) = base * nd.speed[j];
      op.single_normal(i, j) = base * dot(nd.normal[i], nd.normal[j]) * nd.speed[j];

      // nu_j |x'_j| . (x_i - x_j)
      const double nj = nd.dx[j].x2 * d.x1 - nd.dx[j].x1 * d.x2;
      const cd kd = 0.25 * kI * k * h1 * nj / r;
      const double kd1 = -k * cyl.j[1] * nj / (4.0 * kPi * r);
      op.dbl(i, j) = rw * kd1 + h * (kd - kd1 * logterm);

      // nu_i . (x_i - x_j) |x'_j|
      const double mi = dot(nd.normal[i], d) * nd.speed[j];
      const cd ka = -0.25 * kI * k * h1 * mi / r;
      const double ka1 = k * cyl.j[1] * mi / (4.0 * kPi * r);
      op.dbl_adjoint(i, j) = rw * ka1 + h * (ka - ka1 * logterm);
    }
  }
  return op;
}

}  // namespace

struct BieSolver::Factorization {
  Eigen::PartialPivLU<Matrix> lu;
  double condition = 0.0;
};

BoundaryNodes sample_boundary(const ParametricBoundary& boundary) {
  check_boundary(boundary);
  const int n = boundary.n_nodes();
  BoundaryNodes nd;
  nd.x.resize(n);
  nd.dx.resize(n);
  nd.ddx.resize(n);
  nd.speed.resize(n);
  nd.normal.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = boundary.node_parameter(i);
    nd.x[i] = boundary.position(t);
    nd.dx[i] = boundary.d1(t);
    nd.ddx[i] = boundary.d2(t);
    nd.speed[i] = norm(nd.dx[i]);
    nd.normal[i] = (1.0 / nd.speed[i]) * Vec2{nd.dx[i].x2, -nd.dx[i].x1};
  }
  nd.spacing = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) nd.spacing = std::min(nd.spacing, norm(nd.x[(i + 1) % n] - nd.x[i]));
  return nd;
}

BieSolver::BieSolver(const ParametricBoundary& boundary, const PhysicalParams& params)
    : nodes_(std::make_shared<const BoundaryNodes>(sample_boundary(boundary))),
      boundary_(std::make_shared<const ParametricBoundary>(boundary)),
      params_(params),
      lu_(std::make_unique<Factorization>()) {
  const BoundaryNodes& nd = *nodes_;
  const int n = nd.size();
  const double rho = params.mu_star / params.mu0;
  const double ke = params.k0;
  const double ki = params.k_star;

  const LayerOperators ext = layer_operators(nd, ke);
  const LayerOperators in = layer_operators(nd, ki);

  const Eigen::MatrixXcd deriv = differentiation_matrix(n).cast<cd>();
  Eigen::VectorXcd inv_speed(n);
  for (int i = 0; i < n; ++i) inv_speed(i) = 1.0 / nd.speed[i];
  const Matrix t_diff = inv_speed.asDiagonal() * (deriv * (ext.single_plain - in.single_plain) * deriv) +
                        ke * ke * ext.single_normal - ki * ki * in.single_normal;

  Matrix system(2 * n, 2 * n);
  system.topLeftCorner(n, n) = Matrix::Identity(n, n) + in.dbl - ext.dbl;
  system.topRightCorner(n, n) = ext.single - rho * in.single;
  system.bottomLeftCorner(n, n) = -t_diff;
  system.bottomRightCorner(n, n) =
      0.5 * (1.0 + rho) * Matrix::Identity(n, n) + ext.dbl_adjoint - rho * in.dbl_adjoint;

  lu_->lu.compute(system);
  const double rcond = lu_->lu.rcond();
  lu_->condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(lu_->condition <= 1e12)) {
    std::ostringstream os;
    os << "transmission system ill-conditioned (condition estimate " << lu_->condition
       << "); k0 or k* is close to a spurious frequency";
    throw IllConditionedError(os.str(), lu_->condition);
  }
}

BieSolver::~BieSolver() = default;
BieSolver::BieSolver(BieSolver&&) noexcept = default;
BieSolver& BieSolver::operator=(BieSolver&&) noexcept = default;

double BieSolver::condition_estimate() const { return lu_->condition; }

TransmissionDensities BieSolver::solve(Vec2 eta) const {
  require_unit(eta);
  const BoundaryNodes& nd = *nodes_;
  const int n = nd.size();
  const double k0 = params_.k0;
  Vector rhs(2 * n);
  for (int i = 0; i < n; ++i) {
    const cd uinc = std::exp(cd(0.0, k0 * dot(eta, nd.x[i])));
    rhs(i) = uinc;
    rhs(n + i) = cd(0.0, k0 * dot(eta, nd.normal[i])) * uinc;
  }
  const Vector sol = lu_->lu.solve(rhs);
  TransmissionDensities out;
  out.phi.assign(sol.data(), sol.data() + n);
  out.psi.assign(sol.data() + n, sol.data() + 2 * n);
  out.nodes = nodes_;
  out.boundary = boundary_;
  out.params = params_;
  out.eta = eta;
  return out;
}

TransmissionDensities assemble_and_solve(const ParametricBoundary& boundary,
                                         const PhysicalParams& params, Vec2 eta) {
  return BieSolver(boundary, params).solve(eta);
}

cd evaluate_scattered(const TransmissionDensities& dens, Vec2 x) {
  const BoundaryNodes& nd = *dens.nodes;
  if (dens.boundary->contains(x)) throw DomainError("scattered field requested inside the scatterer");
  const int n = nd.size();
  double closest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) closest = std::min(closest, norm(x - nd.x[j]));
  if (closest < 2.0 * nd.spacing) warn("evaluation point within two node spacings of the boundary");

  const double k = dens.params.k0;
  const double h = 2.0 * kPi / n;
  cd sum{};
  for (int j = 0; j < n; ++j) {
    const Vec2 d = x - nd.x[j];
    const double r = norm(d);
    const auto cyl = special::cylinder_table(1, k * r);
    const cd h0{cyl.j[0], cyl.y[0]};
    const cd h1{cyl.j[1], cyl.y[1]};
    const cd dphi = 0.25 * kI * k * h1 * dot(nd.normal[j], d) / r;
    const cd phi = 0.25 * kI * h0;
    sum += (dphi * dens.phi[j] - phi * dens.psi[j]) * nd.speed[j];
  }
  return h * sum;
}

}  // namespace retroscat
