#include "mrplate/solve.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>

#include "mrplate/error.hpp"

namespace mrplate {

Solution solve_system(GlobalSystem sys) { return solve_system(std::make_shared<const GlobalSystem>(std::move(sys))); }

Solution solve_system(std::shared_ptr<const GlobalSystem> sys) {
  if (!sys->constrained_applied) throw Error(ErrorCode::SingularSystem, "boundary conditions not applied");
  Solution sol;
  sol.system = sys;
  const Eigen::Index nfree = sys->K_reduced.rows();
  Eigen::VectorXd reduced = Eigen::VectorXd::Zero(nfree);
  if (nfree > 0) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys->K_reduced);
    if (ldlt.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "factorization failed");
    const Eigen::VectorXd d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (!(d.minCoeff() > 1e-12 * dmax)) {
      throw Error(ErrorCode::SingularSystem, "stiffness is not positive definite; supports leave rigid modes");
    }
    reduced = ldlt.solve(sys->rhs_reduced);
    // one step of iterative refinement
    reduced += ldlt.solve(sys->rhs_reduced - sys->K_reduced * reduced);
    const double rnorm = sys->rhs_reduced.norm();
    const double res = (sys->K_reduced * reduced - sys->rhs_reduced).norm();
    sol.residual = rnorm > 0.0 ? res / rnorm : res;
    if (!(sol.residual <= 1e-10) && !(rnorm == 0.0 && res == 0.0)) {
      throw Error(ErrorCode::NotConverged, "residual " + std::to_string(sol.residual));
    }
  }
  sol.dofs = sys->free_basis * reduced;
  sol.reactions = sys->K * sol.dofs - sys->rhs;
  return sol;
}

namespace {

Eigen::VectorXd local_dofs(const Solution& sol, std::size_t e) {
  const GlobalSystem& sys = *sol.system;
  const auto& ids = sys.element_nodes[e];
  const Eigen::Matrix3d lambda = node_transform(sys.elements[e].frame.rotation);
  Eigen::VectorXd a(3 * static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    a.segment<3>(3 * static_cast<Eigen::Index>(i)) =
        lambda * sol.dofs.segment<3>(3 * static_cast<Eigen::Index>(ids[i]));
  }
  return a;
}

}  // namespace

FieldValue field_eval(const Solution& sol, const Vec2& p) {
  const GlobalSystem& sys = *sol.system;
  const auto owner = owner_element(sys.elements, p);
  if (!owner) throw Error(ErrorCode::OutsideModel, "point outside the model");
  const MRElement& el = sys.elements[*owner];
  const Vec2 loc = el.frame.to_local(p);
  const Eigen::VectorXd a = local_dofs(sol, *owner);
  const auto nodes = grid_nodes(el.m);
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const BasisTriple bt = basis_eval(el.frame, el.m, nodes[i], loc);
    for (int c = 0; c < 3; ++c) {
      const double ac = a(3 * static_cast<Eigen::Index>(i) + c);
      v[0] += bt[c].value * ac;
      // theta_x = dw/dy, theta_y = -dw/dx in local axes
      v[1] += bt[c].grad.y() * ac;
      v[2] -= bt[c].grad.x() * ac;
    }
  }
  const Vec2 th = el.frame.rotate_to_global(Vec2(v[1], v[2]));
  return {v[0], th.x(), th.y()};
}

MomentTriple rotate_moments(const MomentTriple& m, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix2d R;
  R << c, -s, s, c;
  Eigen::Matrix2d M;
  M << m.Mx, m.Mxy, m.Mxy, m.My;
  const Eigen::Matrix2d G = R * M * R.transpose();
  return {G(0, 0), G(1, 1), 0.5 * (G(0, 1) + G(1, 0))};
}

MomentTriple moment_eval(const Solution& sol, const Vec2& p) {
  const GlobalSystem& sys = *sol.system;
  MomentTriple sum;
  int count = 0;
  for (std::size_t e = 0; e < sys.elements.size(); ++e) {
    const MRElement& el = sys.elements[e];
    const Vec2 loc = el.frame.to_local(p);
    if (!element_contains(el, loc, 1e-9)) continue;
    const Eigen::VectorXd a = local_dofs(sol, e);
    const Eigen::Matrix3d D = bending_rigidity(el.material);
    for (const SubTriangle& st : subtriangle_partition(el.frame, el.m)) {
      if (st.barycentric(loc).minCoeff() < -1e-9) continue;
      Eigen::Vector3d kappa = Eigen::Vector3d::Zero();
      for (int k = 0; k < 3; ++k) {
        const auto i = static_cast<Eigen::Index>(node_ordinal(el.m, st.corner_nodes[k]));
        kappa += curvature_B_on(el, st.corner_nodes[k], st.corner_domains[k], loc) * a.segment<3>(3 * i);
      }
      const Eigen::Vector3d m = D * kappa;
      const MomentTriple g = rotate_moments({m[0], m[1], m[2]}, el.frame.rotation);
      sum.Mx += g.Mx;
      sum.My += g.My;
      sum.Mxy += g.Mxy;
      ++count;
    }
  }
  if (count == 0) throw Error(ErrorCode::OutsideModel, "point outside the model");
  return {sum.Mx / count, sum.My / count, sum.Mxy / count};
}

double normalize_coefficient(double value, CoefficientKind kind, double L, double q, double rigidity) {
  if (q == 0.0 || !(L > 0.0)) throw Error(ErrorCode::DivisionByZero, "coefficient needs q != 0 and L > 0");
  if (kind == CoefficientKind::Deflection) return 100.0 * value * rigidity / (q * std::pow(L, 4));
  return 10.0 * value / (q * L * L);
}

}  // namespace mrplate
