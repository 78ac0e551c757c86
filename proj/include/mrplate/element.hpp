#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "mrplate/geometry.hpp"
#include "mrplate/shapefn.hpp"

namespace mrplate {

struct PlateMaterial {
  double E = 1.0;   // Young modulus
  double t = 1.0;   // thickness
  double nu = 0.3;  // Poisson ratio

  /// Throws InvalidMaterial unless E > 0, t > 0 and 0 <= nu < 0.5.
  void validate() const;
  /// C_b = E t^3 / (12 (1 - nu^2))
  double rigidity() const { return E * t * t * t / (12.0 * (1.0 - nu * nu)); }
};

/// C_b [[1, nu, 0], [nu, 1, 0], [0, 0, (1 - nu)/2]]
Eigen::Matrix3d bending_rigidity(const PlateMaterial& material);

/// One multiresolution triangular element: canonical frame, scale m and
/// material. DOFs are (w, theta_x, theta_y) per node in s-major node order.
struct MRElement {
  LocalFrame frame;
  int m = 1;
  PlateMaterial material;

  std::size_t node_count() const { return mrplate::node_count(m); }
  std::size_t dof_count() const { return 3 * node_count(); }
};

struct ElementMatrices {
  Eigen::MatrixXd K;
  Eigen::VectorXd f;  // distributed load
  Eigen::VectorXd F;  // concentrated loads
};

/// True if the local point lies in the element, with a tolerance relative to
/// the element size.
bool element_contains(const MRElement& elem, const Vec2& local, double tol = 1e-12);

/// Curvature operator of one node: columns are the w, theta_x and theta_y
/// functions, rows (kappa_xx, kappa_yy, 2 kappa_xy) with kappa = -d2w.
Eigen::Matrix3d curvature_B(const MRElement& elem, NodeIndex idx, const Vec2& p);
/// As above, on a prescribed hexagon sub-domain of the node.
Eigen::Matrix3d curvature_B_on(const MRElement& elem, NodeIndex idx, HexDomain domain, const Vec2& p);

/// Stiffness by sub-triangle quadrature. Blocks of nodes that share no
/// sub-triangle are never touched and stay exactly zero.
Eigen::MatrixXd element_stiffness(const MRElement& elem, int quadrature_degree = 5);

/// Consistent load vector of a uniform pressure q.
Eigen::VectorXd element_load_uniform(const MRElement& elem, double q, int quadrature_degree = 5);

/// Equivalent nodal loads of a transverse force P at a local point (the
/// element boundary counts as inside). Throws OutsideElement otherwise.
Eigen::VectorXd element_load_point(const MRElement& elem, double P, const Vec2& loc);

}  // namespace mrplate
