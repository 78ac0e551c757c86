#include "mrplate/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "mrplate/error.hpp"

namespace mrplate {

namespace {

double cross(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

constexpr double kDegenerateArea = 1e-12;  // relative to (longest side)^2
constexpr double kLabelTolerance = 1e-12;  // relative to a
constexpr double kDomainTolerance = 1e-12;

}  // namespace

const char* to_string(HexDomain d) noexcept {
  switch (d) {
    case HexDomain::D1: return "D1";
    case HexDomain::D2: return "D2";
    case HexDomain::D3: return "D3";
    case HexDomain::D4: return "D4";
    case HexDomain::D5: return "D5";
    case HexDomain::D6: return "D6";
    case HexDomain::Outside: return "Outside";
  }
  return "?";
}

Vec2 LocalFrame::rotate_to_global(const Vec2& v) const {
  const double c = std::cos(rotation), s = std::sin(rotation);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

Vec2 LocalFrame::rotate_to_local(const Vec2& v) const {
  const double c = std::cos(rotation), s = std::sin(rotation);
  return {c * v.x() + s * v.y(), -s * v.x() + c * v.y()};
}

Vec2 LocalFrame::to_global(const Vec2& local) const { return origin + rotate_to_global(local); }

Vec2 LocalFrame::to_local(const Vec2& global) const { return rotate_to_local(global - origin); }

double SubTriangle::area() const { return 0.5 * cross(vertices[1] - vertices[0], vertices[2] - vertices[0]); }

Eigen::Vector3d SubTriangle::barycentric(const Vec2& p) const {
  const double twice = cross(vertices[1] - vertices[0], vertices[2] - vertices[0]);
  const double l1 = cross(vertices[1] - p, vertices[2] - p) / twice;
  const double l2 = cross(vertices[2] - p, vertices[0] - p) / twice;
  return {l1, l2, 1.0 - l1 - l2};
}

LocalFrame canonicalize_triangle(const Vec2& v1, const Vec2& v2, const Vec2& v3) {
  const std::array<Vec2, 3> in{v1, v2, v3};
  const double longest =
      std::max({(v2 - v1).squaredNorm(), (v3 - v2).squaredNorm(), (v1 - v3).squaredNorm()});
  const double twice_area = cross(v2 - v1, v3 - v1);
  if (!(longest > 0.0) || std::abs(0.5 * twice_area) <= kDegenerateArea * longest) {
    throw Error(ErrorCode::CollinearVertices, "triangle area below tolerance");
  }

  std::array<int, 3> order = twice_area > 0.0 ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};

  for (int shift = 0; shift < 3; ++shift) {
    const std::array<int, 3> lab{order[shift], order[(shift + 1) % 3], order[(shift + 2) % 3]};
    const Vec2& p0 = in[lab[0]];
    const Vec2 base = in[lab[1]] - p0;
    const Vec2 side = in[lab[2]] - p0;
    const double a = base.norm();
    const Vec2 dir = base / a;
    double x3 = dir.dot(side);
    const double h = cross(dir, side);
    if (x3 < -kLabelTolerance * a || x3 >= a * (1.0 - kLabelTolerance)) continue;
    x3 = std::max(x3, 0.0);

    LocalFrame f;
    f.a = a;
    f.h = h;
    f.b = h * a / (a - x3);
    f.origin = p0;
    f.rotation = std::atan2(dir.y(), dir.x());
    f.vertex_order = lab;
    return f;
  }
  throw Error(ErrorCode::NoValidLabeling, "no cyclic labeling satisfies b >= h");
}

std::size_t node_count(int m) { return static_cast<std::size_t>((m + 1) * (m + 2) / 2); }

bool in_grid(int m, NodeIndex idx) noexcept { return m >= 1 && idx.s >= 0 && idx.r >= idx.s && idx.r <= m; }

std::size_t node_ordinal(int m, NodeIndex idx) {
  if (!in_grid(m, idx)) {
    throw Error(ErrorCode::IndexOutOfGrid,
                "(" + std::to_string(idx.r) + "," + std::to_string(idx.s) + ") at m=" + std::to_string(m));
  }
  // rows s' < s hold (m + 1 - s') nodes each
  const int s = idx.s;
  const int before = s * (m + 1) - s * (s - 1) / 2;
  return static_cast<std::size_t>(before + (idx.r - s));
}

NodeIndex node_at(int m, std::size_t ordinal) {
  std::size_t left = ordinal;
  for (int s = 0; s <= m; ++s) {
    const auto row = static_cast<std::size_t>(m + 1 - s);
    if (left < row) return {s + static_cast<int>(left), s};
    left -= row;
  }
  throw Error(ErrorCode::IndexOutOfGrid, "ordinal " + std::to_string(ordinal) + " at m=" + std::to_string(m));
}

std::vector<NodeIndex> grid_nodes(int m) {
  std::vector<NodeIndex> out;
  out.reserve(node_count(m));
  for (int s = 0; s <= m; ++s)
    for (int r = s; r <= m; ++r) out.push_back({r, s});
  return out;
}

Vec2 node_position(const LocalFrame& frame, int m, NodeIndex idx) {
  if (!in_grid(m, idx)) {
    throw Error(ErrorCode::IndexOutOfGrid,
                "(" + std::to_string(idx.r) + "," + std::to_string(idx.s) + ") at m=" + std::to_string(m));
  }
  const double r = idx.r, s = idx.s;
  return {(frame.a / m) * (r - s * frame.h / frame.b), (s / m) * frame.h};
}

std::vector<SubTriangle> subtriangle_partition(const LocalFrame& frame, int m) {
  std::vector<SubTriangle> out;
  out.reserve(static_cast<std::size_t>(m) * m);
  auto pos = [&](int r, int s) { return node_position(frame, m, {r, s}); };
  for (int s = 0; s < m; ++s) {
    for (int r = s; r < m; ++r) {
      SubTriangle up;
      up.orientation = Orientation::Upward;
      up.corner_nodes = {NodeIndex{r, s}, NodeIndex{r + 1, s}, NodeIndex{r + 1, s + 1}};
      up.corner_domains = {HexDomain::D1, HexDomain::D3, HexDomain::D5};
      up.vertices = {pos(r, s), pos(r + 1, s), pos(r + 1, s + 1)};
      out.push_back(up);
      if (r + 2 <= m) {
        SubTriangle down;
        down.orientation = Orientation::Downward;
        down.corner_nodes = {NodeIndex{r + 2, s + 1}, NodeIndex{r + 1, s + 1}, NodeIndex{r + 1, s}};
        down.corner_domains = {HexDomain::D4, HexDomain::D6, HexDomain::D2};
        down.vertices = {pos(r + 2, s + 1), pos(r + 1, s + 1), pos(r + 1, s)};
        out.push_back(down);
      }
    }
  }
  return out;
}

HexDomain hexagon_domain_of(const Vec2& p, const LocalFrame& frame) {
  const Vec2 l = frame.lattice(p);
  const double u = l.x(), v = l.y(), w = u + v;
  constexpr double eps = kDomainTolerance;
  if (u > 1 + eps || u < -1 - eps || v > 1 + eps || v < -1 - eps || w > 1 + eps || w < -1 - eps) {
    return HexDomain::Outside;
  }
  if (u >= -eps && v >= -eps) return HexDomain::D1;
  if (u <= eps && w >= -eps) return HexDomain::D2;
  if (w <= eps && v >= -eps) return HexDomain::D3;
  if (u <= eps && v <= eps) return HexDomain::D4;
  if (w <= eps && u >= -eps) return HexDomain::D5;
  return HexDomain::D6;
}

std::array<Vec2, 3> domain_vertices(HexDomain d, const LocalFrame& frame) {
  const Vec2 o = Vec2::Zero();
  const Vec2 e1{frame.a, 0.0};
  const Vec2 e2 = frame.apex();
  switch (d) {
    case HexDomain::D1: return {o, e1, e2};
    case HexDomain::D2: return {e2, e2 - e1, o};
    case HexDomain::D3: return {Vec2(-e1), o, e2 - e1};
    case HexDomain::D4: return {o, Vec2(-e1), Vec2(-e2)};
    case HexDomain::D5: return {Vec2(-e2), e1 - e2, o};
    case HexDomain::D6: return {e1, o, e1 - e2};
    case HexDomain::Outside: break;
  }
  throw Error(ErrorCode::OutsideDomain, "no vertices for the Outside domain");
}

std::string rl_label(int m) {
  if (m % 2 == 0) return std::to_string(m / 2 + 1) + "x" + std::to_string(m + 1);
  return std::to_string((m + 1) / 2) + "x" + std::to_string(m + 2);
}

}  // namespace mrplate
