#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "mrplate/element.hpp"
#include "mrplate/geometry.hpp"

namespace mrplate {

enum class SupportKind {
  Clamped,              // w, theta_x, theta_y fixed
  SimplySupported,      // w fixed ("soft")
  SimplySupportedHard,  // w and the tangential slope fixed
  Symmetry,             // normal slope fixed
  Free,
};

const char* to_string(SupportKind kind) noexcept;

/// Support along the segment p1-p2; p1 == p2 gives a point support.
struct BoundaryCondition {
  Vec2 p1 = Vec2::Zero();
  Vec2 p2 = Vec2::Zero();
  SupportKind kind = SupportKind::Free;
};

struct PointLoad {
  Vec2 position = Vec2::Zero();
  double magnitude = 0.0;
};

struct ElementSpec {
  std::array<Vec2, 3> vertices;
  int m = 1;
};

/// A plate problem: multiresolution elements in global coordinates spliced
/// along shared edges, plus loads and supports.
struct Model {
  std::vector<ElementSpec> elements;
  PlateMaterial material;
  std::vector<BoundaryCondition> bcs;
  double uniform_q = 0.0;
  std::vector<PointLoad> point_loads;
  std::optional<double> merge_tolerance;  // default: 1e-9 x bounding-box diagonal
  int quadrature_degree = 5;
  /// Reject point loads on shared edges instead of giving them to the
  /// lowest-index element.
  bool strict_point_loads = false;

  double resolved_merge_tolerance() const;
};

/// Block-diagonal local-to-global DOF transform: one 3x3 lambda per node.
struct BlockTransform {
  std::vector<Eigen::Matrix3d> blocks;

  Eigen::Index size() const { return 3 * static_cast<Eigen::Index>(blocks.size()); }
  Eigen::MatrixXd dense() const;
};

/// lambda = [[1, 0, 0], [0, cos(xX), cos(xY)], [0, cos(yX), cos(yY)]] for a
/// coplanar element rotated by `rotation`.
Eigen::Matrix3d node_transform(double rotation);
BlockTransform transformation_matrix(const LocalFrame& frame, std::size_t node_count);

/// K' = T^T K T, f' = T^T f, F' = T^T F. Throws DimensionMismatch.
ElementMatrices to_global(const ElementMatrices& local, const BlockTransform& T);

/// Assembled plate system. Before apply_boundary_conditions only the full
/// K and rhs are filled.
struct GlobalSystem {
  std::vector<MRElement> elements;
  std::vector<Vec2> nodes;                               // merged global nodes
  std::vector<std::vector<std::size_t>> element_nodes;  // local ordinal -> global node
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd rhs;
  double merge_tolerance = 0.0;
  double applied_transverse_load = 0.0;

  bool constrained_applied = false;
  std::vector<std::size_t> constrained;    // DOFs touched by a support, sorted
  Eigen::SparseMatrix<double> free_basis;  // dofs x free, orthonormal columns
  Eigen::SparseMatrix<double> K_reduced;
  Eigen::VectorXd rhs_reduced;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t dof_count() const { return 3 * nodes.size(); }
  std::size_t free_dof_count() const { return static_cast<std::size_t>(free_basis.cols()); }
  std::size_t global_dof(std::size_t element, NodeIndex idx, int component) const;
};

/// Merges coincident nodes and scatters element blocks already expressed in
/// global axes. Shared by the multiresolution and the conventional paths.
GlobalSystem scatter_elements(std::vector<MRElement> elements, const std::vector<std::vector<Vec2>>& node_positions,
                              const std::vector<ElementMatrices>& global_matrices, double merge_tolerance);

/// Builds element matrices, transforms them to global axes and splices the
/// elements. Throws NodeMismatch if neighbouring grids do not coincide.
GlobalSystem assemble(const Model& model);

/// Finds the element owning a global point: lowest index among containing
/// elements. Returns nullopt outside the model.
std::optional<std::size_t> owner_element(const std::vector<MRElement>& elements, const Vec2& global,
                                         double tol = 1e-9);

/// Nodes within `tol` of the segment p1-p2.
std::vector<std::size_t> nodes_on_segment(const std::vector<Vec2>& nodes, const Vec2& p1, const Vec2& p2,
                                          double tol);

/// Eliminates constrained DOFs. Axis-aligned constraints reduce to row and
/// column removal; rotation constraints on skew edges use the in-plane
/// complement. Throws EmptyEdge if a support edge touches no node.
GlobalSystem apply_boundary_conditions(GlobalSystem sys, const std::vector<BoundaryCondition>& bcs);

}  // namespace mrplate
