#include "mrplate/shapefn.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "mrplate/error.hpp"
#include "mrplate/quadrature.hpp"

namespace mrplate {

namespace {

// Second-order jet of a polynomial in (L1, L2, L3) treated as independent.
struct Jet {
  double v = 0.0;
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  Eigen::Matrix3d dd = Eigen::Matrix3d::Zero();
};

Jet variable(const Eigen::Vector3d& L, int i) {
  Jet j;
  j.v = L[i];
  j.d[i] = 1.0;
  return j;
}

Jet operator*(const Jet& f, const Jet& g) {
  Jet p;
  p.v = f.v * g.v;
  p.d = f.d * g.v + g.d * f.v;
  p.dd = f.dd * g.v + g.dd * f.v + f.d * g.d.transpose() + g.d * f.d.transpose();
  return p;
}

Jet operator+(const Jet& f, const Jet& g) { return {f.v + g.v, f.d + g.d, f.dd + g.dd}; }
Jet operator-(const Jet& f, const Jet& g) { return {f.v - g.v, f.d - g.d, f.dd - g.dd}; }
Jet operator*(double k, const Jet& f) { return {k * f.v, k * f.d, k * f.dd}; }

ShapeEval to_xy(const Jet& f, const Eigen::Matrix<double, 3, 2>& G) {
  ShapeEval e;
  e.value = f.v;
  e.grad = G.transpose() * f.d;
  const Eigen::Matrix2d H = G.transpose() * f.dd * G;
  e.hess = {H(0, 0), H(1, 1), H(0, 1)};
  return e;
}

// Split-node functions of area-coordinate node i (0-based) on a triangle
// whose sideline coefficients are b, c.
ShapeTriple family(int i, const AreaCoordinates& ac, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  const int j = (i + 1) % 3, k = (i + 2) % 3;
  const Jet li = variable(ac.L, i), lj = variable(ac.L, j), lk = variable(ac.L, k);
  const Jet lii = li * li;
  const Jet half_bubble = 0.5 * (li * lj * lk);

  const Jet n = li + lii * lj + lii * lk - li * lj * lj - li * lk * lk;
  const Jet tk = lii * lk + half_bubble;
  const Jet tj = lii * lj + half_bubble;
  const Jet nx = b[j] * tk - b[k] * tj;
  const Jet ny = c[j] * tk - c[k] * tj;

  return {to_xy(n, ac.grad), to_xy(nx, ac.grad), to_xy(ny, ac.grad)};
}

int family_node(HexDomain d) {
  switch (d) {
    case HexDomain::D1:
    case HexDomain::D4: return 0;
    case HexDomain::D3:
    case HexDomain::D6: return 1;
    case HexDomain::D2:
    case HexDomain::D5: return 2;
    case HexDomain::Outside: break;
  }
  throw Error(ErrorCode::OutsideDomain, "no split-node family outside the hexagon");
}

constexpr double kInsideTolerance = 1e-9;

void scale_basis(ShapeTriple& t, int m) {
  const double k = m;
  for (ShapeEval* e : {&t.w, &t.thx, &t.thy}) {
    e->grad *= k;
    e->hess *= k * k;
  }
  t.thx *= 1.0 / k;
  t.thy *= 1.0 / k;
}

Vec2 scaled_argument(const LocalFrame& frame, int m, NodeIndex idx, const Vec2& p) {
  if (!in_grid(m, idx)) {
    throw Error(ErrorCode::IndexOutOfGrid,
                "(" + std::to_string(idx.r) + "," + std::to_string(idx.s) + ") at m=" + std::to_string(m));
  }
  const double r = idx.r, s = idx.s;
  return {m * p.x() - (r - s * frame.h / frame.b) * frame.a, m * p.y() - s * frame.h};
}

}  // namespace

AreaCoordinates area_coordinates(HexDomain domain, const Vec2& p, const LocalFrame& frame) {
  const double ia = 1.0 / frame.a, ib = 1.0 / frame.b, ih = 1.0 / frame.h, k = frame.skew();
  const double x = p.x(), y = p.y();
  const double sum = x * ia + y * ib;  // x/a + y/b
  const double dif = x * ia - k * y;   // x/a - (1/h - 1/b) y
  const double hy = y * ih;            // y/h
  AreaCoordinates ac;
  // rows: grad L1, grad L2, grad L3
  Eigen::Matrix<double, 3, 2> up;
  up << -ia, -ib, ia, -k, 0.0, ih;
  switch (domain) {
    case HexDomain::D1:
      ac.L = {1.0 - sum, dif, hy};
      ac.grad = up;
      break;
    case HexDomain::D2:
      ac.L = {sum, -dif, 1.0 - hy};
      ac.grad = -up;
      break;
    case HexDomain::D3:
      ac.L = {-sum, 1.0 + dif, hy};
      ac.grad = up;
      break;
    case HexDomain::D4:
      ac.L = {1.0 + sum, -dif, -hy};
      ac.grad = -up;
      break;
    case HexDomain::D5:
      ac.L = {-sum, dif, 1.0 + hy};
      ac.grad = up;
      break;
    case HexDomain::D6:
      ac.L = {sum, 1.0 - dif, -hy};
      ac.grad = -up;
      break;
    case HexDomain::Outside:
      throw Error(ErrorCode::OutsideDomain, "area coordinates requested outside the hexagon");
  }
  return ac;
}

ShapeTriple split_shape_eval(HexDomain domain, const Vec2& p, const LocalFrame& frame) {
  const AreaCoordinates ac = area_coordinates(domain, p, frame);
  if (ac.L.minCoeff() < -kInsideTolerance) {
    throw Error(ErrorCode::OutsideDomain, std::string("point not in ") + to_string(domain));
  }
  const auto v = domain_vertices(domain, frame);
  const Eigen::Vector3d b{v[1].y() - v[2].y(), v[2].y() - v[0].y(), v[0].y() - v[1].y()};
  const Eigen::Vector3d c{v[2].x() - v[1].x(), v[0].x() - v[2].x(), v[1].x() - v[0].x()};
  return family(family_node(domain), ac, b, c);
}

ShapeTriple full_node_eval(const Vec2& p, const LocalFrame& frame) {
  const HexDomain d = hexagon_domain_of(p, frame);
  if (d == HexDomain::Outside) return {};
  return split_shape_eval(d, p, frame);
}

BasisTriple basis_eval(const LocalFrame& frame, int m, NodeIndex idx, const Vec2& p) {
  ShapeTriple t = full_node_eval(scaled_argument(frame, m, idx, p), frame);
  scale_basis(t, m);
  return t;
}

BasisTriple basis_eval_on(const LocalFrame& frame, int m, NodeIndex idx, HexDomain domain, const Vec2& p) {
  ShapeTriple t = split_shape_eval(domain, scaled_argument(frame, m, idx, p), frame);
  scale_basis(t, m);
  return t;
}

double nesting_residual(const LocalFrame& frame, int m, NodeIndex idx, int component) {
  if (component < 0 || component > 2) throw Error(ErrorCode::DimensionMismatch, "component must be 0, 1 or 2");
  const int fine = 2 * m;
  const auto nodes = grid_nodes(fine);
  const auto tris = subtriangle_partition(frame, fine);
  const TriangleRule rule = triangle_rule(6);
  const Eigen::Index n = static_cast<Eigen::Index>(3 * nodes.size());

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  double norm2 = 0.0;
  Eigen::VectorXd psi(n);
  for (const SubTriangle& t : tris) {
    const double area = t.area();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.points[q][0] * t.vertices[0] + rule.points[q][1] * t.vertices[1] +
                     rule.points[q][2] * t.vertices[2];
      const double wq = rule.weights[q] * area;
      const double f = basis_eval(frame, m, idx, p)[component].value;
      psi.setZero();
      for (int k = 0; k < 3; ++k) {
        const auto o = static_cast<Eigen::Index>(node_ordinal(fine, t.corner_nodes[k]));
        const BasisTriple bt = basis_eval_on(frame, fine, t.corner_nodes[k], t.corner_domains[k], p);
        for (int c = 0; c < 3; ++c) psi[3 * o + c] = bt[c].value;
      }
      gram.noalias() += wq * psi * psi.transpose();
      rhs += wq * f * psi;
      norm2 += wq * f * f;
    }
  }
  const Eigen::VectorXd coef = gram.ldlt().solve(rhs);
  double res2 = 0.0;
  for (const SubTriangle& t : tris) {
    const double area = t.area();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.points[q][0] * t.vertices[0] + rule.points[q][1] * t.vertices[1] +
                     rule.points[q][2] * t.vertices[2];
      double r = basis_eval(frame, m, idx, p)[component].value;
      for (int k = 0; k < 3; ++k) {
        const auto o = static_cast<Eigen::Index>(node_ordinal(fine, t.corner_nodes[k]));
        const BasisTriple bt = basis_eval_on(frame, fine, t.corner_nodes[k], t.corner_domains[k], p);
        for (int c = 0; c < 3; ++c) r -= coef[3 * o + c] * bt[c].value;
      }
      res2 += rule.weights[q] * area * r * r;
    }
  }
  return norm2 > 0.0 ? std::sqrt(res2 / norm2) : 0.0;
}

}  // namespace mrplate
