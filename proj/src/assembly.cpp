#include "mrplate/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "mrplate/error.hpp"

namespace mrplate {

const char* to_string(SupportKind kind) noexcept {
  switch (kind) {
    case SupportKind::Clamped: return "clamped";
    case SupportKind::SimplySupported: return "simply_supported";
    case SupportKind::SimplySupportedHard: return "simply_supported_hard";
    case SupportKind::Symmetry: return "symmetry";
    case SupportKind::Free: return "free";
  }
  return "?";
}

double Model::resolved_merge_tolerance() const {
  if (merge_tolerance) return *merge_tolerance;
  Vec2 lo = Vec2::Constant(INFINITY), hi = Vec2::Constant(-INFINITY);
  for (const ElementSpec& e : elements)
    for (const Vec2& v : e.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  if (elements.empty()) return 1e-9;
  return 1e-9 * (hi - lo).norm();
}

Eigen::MatrixXd BlockTransform::dense() const {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(size(), size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto o = 3 * static_cast<Eigen::Index>(i);
    T.block<3, 3>(o, o) = blocks[i];
  }
  return T;
}

Eigen::Matrix3d node_transform(double rotation) {
  const double c = std::cos(rotation), s = std::sin(rotation);
  Eigen::Matrix3d lambda;
  // rows: local (w, theta_x, theta_y); columns: global (w, theta_X, theta_Y)
  lambda << 1.0, 0.0, 0.0, 0.0, c, s, 0.0, -s, c;
  return lambda;
}

BlockTransform transformation_matrix(const LocalFrame& frame, std::size_t node_count) {
  return BlockTransform{std::vector<Eigen::Matrix3d>(node_count, node_transform(frame.rotation))};
}

ElementMatrices to_global(const ElementMatrices& local, const BlockTransform& T) {
  const Eigen::Index n = T.size();
  if (local.K.rows() != n || local.K.cols() != n || local.f.size() != n || local.F.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "element matrices do not match the transform");
  }
  ElementMatrices out;
  out.K.resize(n, n);
  out.f.resize(n);
  out.F.resize(n);
  const auto nodes = static_cast<Eigen::Index>(T.blocks.size());
  for (Eigen::Index i = 0; i < nodes; ++i) {
    const Eigen::Matrix3d& li = T.blocks[static_cast<std::size_t>(i)];
    out.f.segment<3>(3 * i) = li.transpose() * local.f.segment<3>(3 * i);
    out.F.segment<3>(3 * i) = li.transpose() * local.F.segment<3>(3 * i);
    for (Eigen::Index j = 0; j < nodes; ++j) {
      const Eigen::Matrix3d kij = local.K.block<3, 3>(3 * i, 3 * j);
      if (kij.isZero(0.0)) {
        out.K.block<3, 3>(3 * i, 3 * j).setZero();
        continue;
      }
      out.K.block<3, 3>(3 * i, 3 * j) = li.transpose() * kij * T.blocks[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

std::size_t GlobalSystem::global_dof(std::size_t element, NodeIndex idx, int component) const {
  const MRElement& e = elements.at(element);
  return 3 * element_nodes.at(element).at(node_ordinal(e.m, idx)) + static_cast<std::size_t>(component);
}

namespace {

// Spatial hash for merging points closer than `tol`.
class NodeMerger {
 public:
  explicit NodeMerger(double tol) : tol_(tol), cell_(4.0 * tol) {}

  std::size_t insert(const Vec2& p) {
    const auto key = cell_of(p);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find({key.first + dx, key.second + dy});
        if (it == grid_.end()) continue;
        for (std::size_t id : it->second)
          if ((points_[id] - p).norm() <= tol_) return id;
      }
    const std::size_t id = points_.size();
    points_.push_back(p);
    grid_[key].push_back(id);
    return id;
  }

  const std::vector<Vec2>& points() const { return points_; }

 private:
  std::pair<long long, long long> cell_of(const Vec2& p) const {
    return {static_cast<long long>(std::floor(p.x() / cell_)), static_cast<long long>(std::floor(p.y() / cell_))};
  }

  double tol_;
  double cell_;
  std::vector<Vec2> points_;
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> grid_;
};

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  if (d.squaredNorm() == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (a + t * d - p).norm();
}

void check_splicing(const GlobalSystem& sys) {
  for (std::size_t e = 0; e < sys.elements.size(); ++e) {
    const MRElement& el = sys.elements[e];
    const std::set<std::size_t> own(sys.element_nodes[e].begin(), sys.element_nodes[e].end());
    const std::array<Vec2, 3> corners{el.frame.to_global(Vec2::Zero()), el.frame.to_global(Vec2(el.frame.a, 0.0)),
                                      el.frame.to_global(el.frame.apex())};
    for (std::size_t g = 0; g < sys.nodes.size(); ++g) {
      if (own.count(g)) continue;
      for (int k = 0; k < 3; ++k) {
        if (segment_distance(sys.nodes[g], corners[k], corners[(k + 1) % 3]) <= sys.merge_tolerance) {
          throw Error(ErrorCode::NodeMismatch, "node " + std::to_string(g) + " lies on an edge of element " +
                                                   std::to_string(e) + " without matching one of its nodes");
        }
      }
    }
  }
}

}  // namespace

GlobalSystem scatter_elements(std::vector<MRElement> elements, const std::vector<std::vector<Vec2>>& node_positions,
                              const std::vector<ElementMatrices>& global_matrices, double merge_tolerance) {
  if (elements.size() != node_positions.size() || elements.size() != global_matrices.size()) {
    throw Error(ErrorCode::DimensionMismatch, "element lists differ in length");
  }
  GlobalSystem sys;
  sys.merge_tolerance = merge_tolerance;
  NodeMerger merger(merge_tolerance);
  for (const auto& positions : node_positions) {
    std::vector<std::size_t> ids;
    ids.reserve(positions.size());
    for (const Vec2& p : positions) ids.push_back(merger.insert(p));
    sys.element_nodes.push_back(std::move(ids));
  }
  sys.nodes = merger.points();
  sys.elements = std::move(elements);

  const auto ndof = static_cast<Eigen::Index>(sys.dof_count());
  sys.rhs = Eigen::VectorXd::Zero(ndof);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t e = 0; e < global_matrices.size(); ++e) {
    const ElementMatrices& em = global_matrices[e];
    const auto& ids = sys.element_nodes[e];
    const auto n = static_cast<Eigen::Index>(ids.size());
    if (em.K.rows() != 3 * n) throw Error(ErrorCode::DimensionMismatch, "element matrix size");
    for (Eigen::Index i = 0; i < 3 * n; ++i) {
      const auto gi = static_cast<Eigen::Index>(3 * ids[static_cast<std::size_t>(i / 3)]) + i % 3;
      sys.rhs(gi) += em.f(i) + em.F(i);
      for (Eigen::Index j = 0; j < 3 * n; ++j) {
        const double v = em.K(i, j);
        if (v == 0.0) continue;
        const auto gj = static_cast<Eigen::Index>(3 * ids[static_cast<std::size_t>(j / 3)]) + j % 3;
        triplets.emplace_back(gi, gj, v);
      }
    }
  }
  sys.K.resize(ndof, ndof);
  sys.K.setFromTriplets(triplets.begin(), triplets.end());
  check_splicing(sys);
  return sys;
}

std::optional<std::size_t> owner_element(const std::vector<MRElement>& elements, const Vec2& global, double tol) {
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (element_contains(elements[e], elements[e].frame.to_local(global), tol)) return e;
  }
  return std::nullopt;
}

GlobalSystem assemble(const Model& model) {
  model.material.validate();
  std::vector<MRElement> elements;
  elements.reserve(model.elements.size());
  for (const ElementSpec& spec : model.elements) {
    if (spec.m < 1) throw Error(ErrorCode::IndexOutOfGrid, "scale m must be positive");
    elements.push_back({canonicalize_triangle(spec.vertices[0], spec.vertices[1], spec.vertices[2]), spec.m,
                        model.material});
  }

  std::vector<ElementMatrices> local(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const MRElement& el = elements[e];
    local[e].K = element_stiffness(el, model.quadrature_degree);
    local[e].f = element_load_uniform(el, model.uniform_q, model.quadrature_degree);
    local[e].F = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(el.dof_count()));
  }

  for (const PointLoad& load : model.point_loads) {
    std::vector<std::size_t> owners;
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (element_contains(elements[e], elements[e].frame.to_local(load.position), 1e-9)) owners.push_back(e);
    }
    if (owners.empty()) throw Error(ErrorCode::OutsideModel, "point load outside every element");
    if (owners.size() > 1 && model.strict_point_loads) {
      throw Error(ErrorCode::AmbiguousPointLoad, "point load on a shared edge");
    }
    const MRElement& el = elements[owners.front()];
    local[owners.front()].F += element_load_point(el, load.magnitude, el.frame.to_local(load.position));
  }

  std::vector<std::vector<Vec2>> positions;
  std::vector<ElementMatrices> global;
  double total = 0.0;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const MRElement& el = elements[e];
    std::vector<Vec2> pos;
    for (const NodeIndex& idx : grid_nodes(el.m)) pos.push_back(el.frame.to_global(node_position(el.frame, el.m, idx)));
    positions.push_back(std::move(pos));
    global.push_back(to_global(local[e], transformation_matrix(el.frame, el.node_count())));
    total += model.uniform_q * el.frame.area();
  }
  for (const PointLoad& load : model.point_loads) total += load.magnitude;

  GlobalSystem sys = scatter_elements(std::move(elements), positions, global, model.resolved_merge_tolerance());
  sys.applied_transverse_load = total;
  return sys;
}

std::vector<std::size_t> nodes_on_segment(const std::vector<Vec2>& nodes, const Vec2& p1, const Vec2& p2,
                                          double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (segment_distance(nodes[i], p1, p2) <= tol) out.push_back(i);
  return out;
}

GlobalSystem apply_boundary_conditions(GlobalSystem sys, const std::vector<BoundaryCondition>& bcs) {
  struct NodeConstraint {
    bool w = false;
    std::vector<Vec2> rotation;  // constraint directions on (theta_X, theta_Y)
  };
  std::map<std::size_t, NodeConstraint> constraints;

  for (const BoundaryCondition& bc : bcs) {
    const Vec2 d = bc.p2 - bc.p1;
    const bool point = !(d.norm() > 0.0);
    if (point && (bc.kind == SupportKind::SimplySupportedHard || bc.kind == SupportKind::Symmetry)) {
      throw Error(ErrorCode::EmptyEdge, std::string(to_string(bc.kind)) + " support needs an edge direction");
    }
    const Vec2 t = point ? Vec2(1.0, 0.0) : Vec2(d / d.norm());
    const auto nodes = nodes_on_segment(sys.nodes, bc.p1, bc.p2, sys.merge_tolerance);
    if (nodes.empty()) throw Error(ErrorCode::EmptyEdge, std::string("no nodes on ") + to_string(bc.kind) + " edge");
    for (std::size_t g : nodes) {
      NodeConstraint& c = constraints[g];
      switch (bc.kind) {
        case SupportKind::Clamped:
          c.w = true;
          c.rotation.push_back({1.0, 0.0});
          c.rotation.push_back({0.0, 1.0});
          break;
        case SupportKind::SimplySupported: c.w = true; break;
        case SupportKind::SimplySupportedHard:
          // dw/dt = t_y theta_X - t_x theta_Y
          c.w = true;
          c.rotation.push_back({t.y(), -t.x()});
          break;
        case SupportKind::Symmetry:
          // dw/dn = t_x theta_X + t_y theta_Y with n = (-t_y, t_x)
          c.rotation.push_back({t.x(), t.y()});
          break;
        case SupportKind::Free: break;
      }
    }
  }

  const auto ndof = static_cast<Eigen::Index>(sys.dof_count());
  std::vector<Eigen::Triplet<double>> basis;
  std::vector<std::size_t> constrained;
  Eigen::Index col = 0;
  auto snap = [](Vec2 v) {
    for (int k = 0; k < 2; ++k)
      if (std::abs(v[k]) < 1e-14) v[k] = 0.0;
    return Vec2(v / v.norm());
  };
  for (std::size_t g = 0; g < sys.node_count(); ++g) {
    const auto base = static_cast<Eigen::Index>(3 * g);
    auto it = constraints.find(g);
    if (it == constraints.end()) {
      for (int c = 0; c < 3; ++c) basis.emplace_back(base + c, col++, 1.0);
      continue;
    }
    const NodeConstraint& nc = it->second;
    if (nc.w) {
      constrained.push_back(static_cast<std::size_t>(base));
    } else {
      basis.emplace_back(base, col++, 1.0);
    }
    // rank of the rotation constraints
    std::vector<Vec2> dirs;
    for (const Vec2& v : nc.rotation) {
      const Vec2 u = snap(v);
      if (dirs.empty()) {
        dirs.push_back(u);
      } else if (std::abs(dirs.front().x() * u.y() - dirs.front().y() * u.x()) > 1e-12) {
        dirs.push_back(u);
        break;
      }
    }
    if (dirs.empty()) {
      basis.emplace_back(base + 1, col++, 1.0);
      basis.emplace_back(base + 2, col++, 1.0);
    } else if (dirs.size() == 1) {
      const Vec2 n = dirs.front();
      const Vec2 free{-n.y(), n.x()};
      if (free.x() != 0.0) basis.emplace_back(base + 1, col, free.x());
      if (free.y() != 0.0) basis.emplace_back(base + 2, col, free.y());
      ++col;
      if (n.x() != 0.0) constrained.push_back(static_cast<std::size_t>(base + 1));
      if (n.y() != 0.0) constrained.push_back(static_cast<std::size_t>(base + 2));
    } else {
      constrained.push_back(static_cast<std::size_t>(base + 1));
      constrained.push_back(static_cast<std::size_t>(base + 2));
    }
  }

  sys.free_basis.resize(ndof, col);
  sys.free_basis.setFromTriplets(basis.begin(), basis.end());
  sys.K_reduced = (sys.free_basis.transpose() * sys.K * sys.free_basis).pruned();
  sys.rhs_reduced = sys.free_basis.transpose() * sys.rhs;
  std::sort(constrained.begin(), constrained.end());
  sys.constrained = std::move(constrained);
  sys.constrained_applied = true;
  return sys;
}

}  // namespace mrplate
