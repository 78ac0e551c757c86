#pragma once

#include <array>

#include <Eigen/Core>

#include "mrplate/geometry.hpp"

namespace mrplate {

/// Value, gradient (d/dx, d/dy) and Hessian (d2/dx2, d2/dy2, d2/dxdy) of one
/// scalar shape function at a point.
struct ShapeEval {
  double value = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Vector3d hess = Eigen::Vector3d::Zero();

  ShapeEval& operator*=(double k) {
    value *= k;
    grad *= k;
    hess *= k;
    return *this;
  }
};

/// The transverse function and the two rotational functions attached to one
/// node: (N, N_x, N_y) for a split node, (phi, phi_x, phi_y) for a full node.
/// Rotation DOFs follow theta_x = dw/dy, theta_y = -dw/dx.
struct ShapeTriple {
  ShapeEval w;
  ShapeEval thx;
  ShapeEval thy;

  const ShapeEval& operator[](int c) const { return c == 0 ? w : (c == 1 ? thx : thy); }
};

/// Scaled and shifted full-node triple of a grid node; the rotational members
/// already include the 1/m factor so nodal rotations stay physical.
using BasisTriple = ShapeTriple;

/// Area coordinates of a hexagon sub-domain at p (relative to the node) and
/// their constant gradients (row i = grad L_i).
struct AreaCoordinates {
  Eigen::Vector3d L;
  Eigen::Matrix<double, 3, 2> grad;
};

AreaCoordinates area_coordinates(HexDomain domain, const Vec2& p, const LocalFrame& frame);

/// Split-node functions on one hexagon sub-domain. D1/D4 use the node-1
/// family, D2/D5 node 3, D3/D6 node 2. Throws OutsideDomain if p is not in it.
ShapeTriple split_shape_eval(HexDomain domain, const Vec2& p, const LocalFrame& frame);

/// Full-node functions centred at the origin; zero outside the hexagon.
ShapeTriple full_node_eval(const Vec2& p, const LocalFrame& frame);

/// Basis triple of node `idx` at scale m, evaluated at local point p of the
/// element.
BasisTriple basis_eval(const LocalFrame& frame, int m, NodeIndex idx, const Vec2& p);

/// Same as basis_eval but on a prescribed sub-domain of the node's hexagon,
/// bypassing classification. Used on sub-triangle edges where one-sided
/// second derivatives are needed.
BasisTriple basis_eval_on(const LocalFrame& frame, int m, NodeIndex idx, HexDomain domain, const Vec2& p);

/// Relative L2 residual of projecting one scale-m basis function
/// (component 0 = w, 1 = theta_x, 2 = theta_y) onto the scale-2m span.
/// Diagnostic only: the nesting of consecutive spans is not guaranteed.
double nesting_residual(const LocalFrame& frame, int m, NodeIndex idx, int component);

}  // namespace mrplate
