#pragma once

#include <memory>

#include <Eigen/Core>

#include "mrplate/assembly.hpp"

namespace mrplate {

/// Nodal DOFs of a solved model in global axes. Immutable once built.
struct Solution {
  Eigen::VectorXd dofs;       // (w, theta_X, theta_Y) per global node
  Eigen::VectorXd reactions;  // K a - rhs, nonzero only on constrained DOFs
  double residual = 0.0;      // |K_red a_red - rhs_red| / |rhs_red|
  std::shared_ptr<const GlobalSystem> system;
};

struct FieldValue {
  double w = 0.0;
  double theta_x = 0.0;
  double theta_y = 0.0;
};

/// Moments per unit length in global axes.
struct MomentTriple {
  double Mx = 0.0;
  double My = 0.0;
  double Mxy = 0.0;
};

/// Factorizes the reduced stiffness (sparse LDL^T). Throws SingularSystem if
/// rigid modes remain and NotConverged if the residual exceeds 1e-10.
Solution solve_system(std::shared_ptr<const GlobalSystem> sys);
Solution solve_system(GlobalSystem sys);

/// Deflection and rotations at a global point. Throws OutsideModel.
FieldValue field_eval(const Solution& sol, const Vec2& p);

/// Bending moments at a global point, averaged over every sub-triangle of
/// every element that contains it. Throws OutsideModel.
MomentTriple moment_eval(const Solution& sol, const Vec2& p);

/// Rotates a moment tensor given in axes turned by `angle` into the base axes.
MomentTriple rotate_moments(const MomentTriple& m, double angle);

enum class CoefficientKind { Deflection, Moment };

/// alpha = 100 w D / (q L^4), beta = 10 M / (q L^2). Throws DivisionByZero
/// for q = 0 or L <= 0.
double normalize_coefficient(double value, CoefficientKind kind, double L, double q, double rigidity);

}  // namespace mrplate
