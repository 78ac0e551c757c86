#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mrplate {

using Vec2 = Eigen::Vector2d;

/// Canonical placement of a triangle: local vertex 0 at the origin, local
/// vertex 1 on the positive x-axis at (a, 0) and the apex at (a(1 - h/b), h).
/// The three sidelines are y/h = 0, x/a + y/b = 1 and x/a - (1/h - 1/b) y = 0.
struct LocalFrame {
  double a = 1.0;  // bottom sideline length
  double h = 1.0;  // height
  double b = 1.0;  // vertical intercept of the far sideline, b >= h
  Vec2 origin = Vec2::Zero();
  double rotation = 0.0;  // angle of the local x-axis in the global frame
  /// Local vertex k is input vertex vertex_order[k].
  std::array<int, 3> vertex_order{0, 1, 2};

  double apex_x() const { return a * (1.0 - h / b); }
  Vec2 apex() const { return {apex_x(), h}; }
  /// The coefficient (1/h - 1/b) that recurs in the sideline equations.
  double skew() const { return 1.0 / h - 1.0 / b; }
  double area() const { return 0.5 * a * h; }

  /// Coordinates along the lattice directions e1 = (a, 0), e2 = apex.
  Vec2 lattice(const Vec2& local) const { return {local.x() / a - skew() * local.y(), local.y() / h}; }

  Vec2 to_global(const Vec2& local) const;
  Vec2 to_local(const Vec2& global) const;
  /// Rotates a local vector (no translation) into global axes.
  Vec2 rotate_to_global(const Vec2& v) const;
  Vec2 rotate_to_local(const Vec2& v) const;
};

/// Grid node (r, s) of a scale-m element, m >= r >= s >= 0.
struct NodeIndex {
  int r = 0;
  int s = 0;

  friend auto operator<=>(const NodeIndex&, const NodeIndex&) = default;
};

enum class Orientation { Upward, Downward };

/// Sub-domains of the hexagonal support around a node, plus Outside.
enum class HexDomain { D1 = 1, D2, D3, D4, D5, D6, Outside };

const char* to_string(HexDomain d) noexcept;

struct SubTriangle {
  std::array<Vec2, 3> vertices;  // local coordinates, counter-clockwise
  Orientation orientation = Orientation::Upward;
  std::array<NodeIndex, 3> corner_nodes;
  /// Which hexagon sub-domain of each corner node this sub-triangle is.
  std::array<HexDomain, 3> corner_domains;

  double area() const;
  Vec2 centroid() const { return (vertices[0] + vertices[1] + vertices[2]) / 3.0; }
  /// Barycentric coordinates of a local point with respect to `vertices`.
  Eigen::Vector3d barycentric(const Vec2& p) const;
};

/// Maps three non-collinear global points onto a canonical frame. Clockwise
/// input is reversed to counter-clockwise; vertices are then relabeled
/// cyclically until b >= h (apex abscissa in [0, a)).
LocalFrame canonicalize_triangle(const Vec2& v1, const Vec2& v2, const Vec2& v3);

std::size_t node_count(int m);
/// Position of (r, s) in the s-major ordering: s = 0 row first, r ascending.
std::size_t node_ordinal(int m, NodeIndex idx);
NodeIndex node_at(int m, std::size_t ordinal);
std::vector<NodeIndex> grid_nodes(int m);
bool in_grid(int m, NodeIndex idx) noexcept;

/// Local position ((a/m)(r - s h/b), (s/m) h).
Vec2 node_position(const LocalFrame& frame, int m, NodeIndex idx);

/// The m^2 sub-triangles of the uniform partition: m(m+1)/2 upward copies of
/// the element shape and m(m-1)/2 point-reflected (downward) copies.
std::vector<SubTriangle> subtriangle_partition(const LocalFrame& frame, int m);

/// Classifies a point given relative to a node (at scale one) into the six
/// hexagon sub-domains. Points on a shared edge go to the lower-numbered one.
HexDomain hexagon_domain_of(const Vec2& p, const LocalFrame& frame);

/// Vertices of hexagon sub-domain d (relative to the node), ordered as
/// area-coordinate nodes 1, 2, 3 of that domain's split-node functions.
std::array<Vec2, 3> domain_vertices(HexDomain d, const LocalFrame& frame);

/// Resolution level label: (m+1)(m+2)/2 nodes written as a p x q product.
std::string rl_label(int m);

}  // namespace mrplate
