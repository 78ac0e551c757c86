#pragma once

#include <vector>

#include <Eigen/Core>

namespace mrplate {

/// Quadrature on a triangle in barycentric coordinates; weights sum to one
/// (multiply by the triangle area).
struct TriangleRule {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Rule exact for polynomials of total degree `degree`. Degrees 3..5 give the
/// symmetric 7-point rule; higher degrees use a collapsed Gauss-Legendre product.
TriangleRule triangle_rule(int degree);

/// Gauss-Legendre nodes and weights mapped to [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace mrplate
