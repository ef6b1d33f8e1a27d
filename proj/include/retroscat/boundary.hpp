#pragma once

#include <functional>
#include <string>
#include <vector>

#include "retroscat/core_types.hpp"

namespace retroscat {

// Smooth 2pi-periodic counter-clockwise curve t -> x(t) with its first two
// derivatives, discretised at n_nodes equispaced parameter values.
class ParametricBoundary {
 public:
  using CurveMap = std::function<Vec2(double)>;

  ParametricBoundary(std::string name, CurveMap position, CurveMap d1, CurveMap d2, int n_nodes);

  const std::string& name() const { return name_; }
  int n_nodes() const { return n_nodes_; }
  Vec2 position(double t) const { return position_(t); }
  Vec2 d1(double t) const { return d1_(t); }
  Vec2 d2(double t) const { return d2_(t); }

  double node_parameter(int i) const;

  // Same curve, different node count.
  ParametricBoundary with_nodes(int n_nodes) const;

  // max_t x2(t), sampled finely.
  double max_height() const;

  // Winding-number test against the node polygon.
  bool contains(Vec2 x) const;

 private:
  std::string name_;
  CurveMap position_;
  CurveMap d1_;
  CurveMap d2_;
  int n_nodes_;
};

// Throws GeometryError for an odd or too small node count, a vanishing
// speed |x'(t)| at a node, clockwise orientation or a self-intersecting
// node polygon.
void check_boundary(const ParametricBoundary& boundary);

// Placement shared by the catalog shapes: uniform scale, then rotation
// (radians, counter-clockwise), then translation.
struct Placement {
  Vec2 center;
  double scale = 1.0;
  double rotation = 0.0;
};

ParametricBoundary make_disk_boundary(double radius, Placement placement, int n_nodes);
ParametricBoundary make_ellipse_boundary(double a, double b, Placement placement, int n_nodes);
// (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
ParametricBoundary make_kite_boundary(Placement placement, int n_nodes);

// Catalog lookup: "disk(r)", "ellipse(a,b)" or "kite". Throws ConfigError
// for unknown names or malformed arguments.
ParametricBoundary boundary_from_name(const std::string& spec, Placement placement, int n_nodes);

}  // namespace retroscat
