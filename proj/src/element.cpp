#include "mrplate/element.hpp"

#include <vector>

#include "mrplate/error.hpp"
#include "mrplate/kernels.hpp"
#include "mrplate/quadrature.hpp"

namespace mrplate {

void PlateMaterial::validate() const {
  if (!(E > 0.0) || !(t > 0.0) || !(nu >= 0.0 && nu < 0.5)) {
    throw Error(ErrorCode::InvalidMaterial, "require E > 0, t > 0, 0 <= nu < 0.5");
  }
}

Eigen::Matrix3d bending_rigidity(const PlateMaterial& material) {
  const double nu = material.nu;
  Eigen::Matrix3d d;
  d << 1.0, nu, 0.0, nu, 1.0, 0.0, 0.0, 0.0, 0.5 * (1.0 - nu);
  return material.rigidity() * d;
}

bool element_contains(const MRElement& elem, const Vec2& local, double tol) {
  const Vec2 l = elem.frame.lattice(local);
  return l.x() >= -tol && l.y() >= -tol && l.x() + l.y() <= 1.0 + tol;
}

namespace {

Eigen::Matrix3d curvature_columns(const BasisTriple& t) {
  Eigen::Matrix3d b;
  for (int c = 0; c < 3; ++c) {
    const Eigen::Vector3d& h = t[c].hess;
    b.col(c) = -Eigen::Vector3d(h[0], h[1], 2.0 * h[2]);
  }
  return b;
}

Vec2 map_point(const SubTriangle& t, const Eigen::Vector3d& bary) {
  return bary[0] * t.vertices[0] + bary[1] * t.vertices[1] + bary[2] * t.vertices[2];
}

void check_subtriangle(const SubTriangle& t) {
  if (!(t.area() > 0.0)) throw Error(ErrorCode::QuadratureFailure, "degenerate sub-triangle");
}

}  // namespace

Eigen::Matrix3d curvature_B(const MRElement& elem, NodeIndex idx, const Vec2& p) {
  return curvature_columns(basis_eval(elem.frame, elem.m, idx, p));
}

Eigen::Matrix3d curvature_B_on(const MRElement& elem, NodeIndex idx, HexDomain domain, const Vec2& p) {
  return curvature_columns(basis_eval_on(elem.frame, elem.m, idx, domain, p));
}

Eigen::MatrixXd element_stiffness(const MRElement& elem, int quadrature_degree) {
  elem.material.validate();
  const auto n = static_cast<Eigen::Index>(elem.dof_count());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);

  const Eigen::Matrix3d D = bending_rigidity(elem.material);
  std::array<double, 9> d{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) d[3 * r + c] = D(r, c);

  const TriangleRule rule = triangle_rule(quadrature_degree);
  const std::size_t npts = rule.size();
  constexpr int kCols = 9;
  std::vector<double> b(3 * kCols * npts), w(npts);
  std::array<double, kCols * kCols> kt{};

  for (const SubTriangle& t : subtriangle_partition(elem.frame, elem.m)) {
    check_subtriangle(t);
    const double area = t.area();
    for (std::size_t q = 0; q < npts; ++q) {
      const Vec2 p = map_point(t, rule.points[q]);
      w[q] = rule.weights[q] * area;
      for (int k = 0; k < 3; ++k) {
        const Eigen::Matrix3d bk = curvature_B(elem, t.corner_nodes[k], p);
        for (int row = 0; row < 3; ++row)
          for (int c = 0; c < 3; ++c) b[(row * kCols + 3 * k + c) * npts + q] = bk(row, c);
      }
    }
    kt.fill(0.0);
    kernels::accumulate_btdb(b, w, d, kCols, kt);

    std::array<Eigen::Index, 3> base{};
    for (int k = 0; k < 3; ++k) base[k] = 3 * static_cast<Eigen::Index>(node_ordinal(elem.m, t.corner_nodes[k]));
    for (int i = 0; i < kCols; ++i)
      for (int j = 0; j < kCols; ++j) K(base[i / 3] + i % 3, base[j / 3] + j % 3) += kt[i * kCols + j];
  }
  return K;
}

Eigen::VectorXd element_load_uniform(const MRElement& elem, double q, int quadrature_degree) {
  const auto n = static_cast<Eigen::Index>(elem.dof_count());
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  if (q == 0.0) return f;

  const TriangleRule rule = triangle_rule(quadrature_degree);
  const std::size_t npts = rule.size();
  constexpr int kCols = 9;
  std::vector<double> values(kCols * npts), w(npts);
  std::array<double, kCols> ft{};

  for (const SubTriangle& t : subtriangle_partition(elem.frame, elem.m)) {
    check_subtriangle(t);
    const double area = t.area();
    for (std::size_t qp = 0; qp < npts; ++qp) {
      const Vec2 p = map_point(t, rule.points[qp]);
      w[qp] = rule.weights[qp] * area;
      for (int k = 0; k < 3; ++k) {
        const BasisTriple bt = basis_eval(elem.frame, elem.m, t.corner_nodes[k], p);
        for (int c = 0; c < 3; ++c) values[(3 * k + c) * npts + qp] = bt[c].value;
      }
    }
    ft.fill(0.0);
    kernels::accumulate_weighted_sum(values, w, kCols, ft);
    for (int k = 0; k < 3; ++k) {
      const auto base = 3 * static_cast<Eigen::Index>(node_ordinal(elem.m, t.corner_nodes[k]));
      for (int c = 0; c < 3; ++c) f(base + c) += q * ft[3 * k + c];
    }
  }
  return f;
}

Eigen::VectorXd element_load_point(const MRElement& elem, double P, const Vec2& loc) {
  if (!element_contains(elem, loc, 1e-9)) throw Error(ErrorCode::OutsideElement, "point load outside element");
  const auto n = static_cast<Eigen::Index>(elem.dof_count());
  Eigen::VectorXd F = Eigen::VectorXd::Zero(n);
  const auto nodes = grid_nodes(elem.m);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const BasisTriple bt = basis_eval(elem.frame, elem.m, nodes[i], loc);
    for (int c = 0; c < 3; ++c) F(3 * static_cast<Eigen::Index>(i) + c) = bt[c].value * P;
  }
  return F;
}

}  // namespace mrplate
