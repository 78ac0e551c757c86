#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "mrplate/assembly.hpp"
#include "mrplate/solve.hpp"

namespace mrplate {

/// A conventional mesh of 3-node BCIZ triangles.
struct MonoModel {
  std::vector<std::array<Vec2, 3>> triangles;  // global vertices
  PlateMaterial material;
  std::vector<BoundaryCondition> bcs;
  double uniform_q = 0.0;
  std::vector<PointLoad> point_loads;
  std::optional<double> merge_tolerance;
  bool strict_point_loads = false;
};

/// One conventional triangle per sub-triangle of every element, with the
/// supports and loads copied over.
MonoModel build_equivalent_mono(const Model& model);

/// Exact element matrices of a 3-node BCIZ triangle in its canonical frame,
/// integrated monomial by monomial in area coordinates.
ElementMatrices bciz_element(const LocalFrame& frame, const PlateMaterial& material, double q);

/// Classical assembly of the mono model (supports not yet applied).
GlobalSystem assemble_mono(const MonoModel& mono);

struct EquivalenceOptions {
  double tolerance = 1e-9;
  /// Test hook: relative perturbation added to one diagonal entry of the
  /// mono stiffness. The entry is picked by `seed`.
  double perturb_k = 0.0;
  unsigned seed = 0;
};

struct EquivalenceReport {
  std::size_t multi_nodes = 0;
  std::size_t mono_nodes = 0;
  std::size_t mono_triangles = 0;
  double max_K_diff = 0.0;         // relative to max |K_multi|
  double max_solution_diff = 0.0;  // relative to max |a_multi|
  std::vector<std::size_t> permutation;  // multi node -> mono node
  bool pass = false;
};

/// Matches the two node sets by position (PermutationNotFound if they
/// differ), then compares permuted global stiffness and solutions.
EquivalenceReport equivalence_check(const Model& model, const MonoModel& mono, const EquivalenceOptions& options = {});

}  // namespace mrplate
