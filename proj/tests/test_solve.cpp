#include <doctest.h>

#include <cmath>
#include <memory>

#include "mrplate/error.hpp"
#include "mrplate/solve.hpp"

using namespace mrplate;

namespace {

Model square(int m, SupportKind kind, double q = 1.0) {
  Model model;
  model.material = {1.0, 1.0, 0.3};
  model.uniform_q = q;
  const Vec2 A(0, 0), B(1, 0), C(1, 1), D(0, 1);
  model.elements = {{{A, B, C}, m}, {{A, C, D}, m}};
  model.bcs = {{A, B, kind}, {B, C, kind}, {C, D, kind}, {D, A, kind}};
  return model;
}

Solution run(const Model& model) { return solve_system(apply_boundary_conditions(assemble(model), model.bcs)); }

double constrained_w_reaction(const Solution& sol) {
  double r = 0.0;
  for (std::size_t d : sol.system->constrained)
    if (d % 3 == 0) r += sol.reactions(static_cast<Eigen::Index>(d));
  return r;
}

// w of one element's own interpolation at a global point
double element_w(const Solution& sol, std::size_t e, const Vec2& p) {
  const GlobalSystem& sys = *sol.system;
  const MRElement& el = sys.elements[e];
  const Eigen::Matrix3d l = node_transform(el.frame.rotation);
  const Vec2 loc = el.frame.to_local(p);
  double w = 0.0;
  for (const NodeIndex& n : grid_nodes(el.m)) {
    const std::size_t g = sys.element_nodes[e][node_ordinal(el.m, n)];
    const Eigen::Vector3d a = l * sol.dofs.segment<3>(3 * static_cast<Eigen::Index>(g));
    const BasisTriple b = basis_eval(el.frame, el.m, n, loc);
    w += a[0] * b.w.value + a[1] * b.thx.value + a[2] * b.thy.value;
  }
  return w;
}

}  // namespace

TEST_CASE("zero load gives a zero solution") {
  const Solution sol = run(square(3, SupportKind::Clamped, 0.0));
  CHECK(sol.dofs.norm() == 0.0);
  CHECK(field_eval(sol, Vec2(0.4, 0.4)).w == 0.0);
}

TEST_CASE("point load at the free corner of a cantilevered element") {
  Model model;
  model.material = {1.0, 0.1, 0.3};
  const Vec2 A(0, 0), B(2, 0), C(0.5, 1.5);
  model.elements = {{{A, B, C}, 1}};
  model.bcs = {{A, C, SupportKind::Clamped}};
  model.point_loads = {{B, 1.0}};
  const Solution sol = run(model);
  CHECK(field_eval(sol, B).w > 0.0);
  CHECK(constrained_w_reaction(sol) == doctest::Approx(-1.0));
}

TEST_CASE("rigid modes left by the supports are reported") {
  Model model = square(2, SupportKind::Free);
  model.bcs.clear();
  model.bcs.push_back({Vec2(0, 0), Vec2(0, 0), SupportKind::SimplySupported});
  try {
    run(model);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}

TEST_CASE("residual, constrained values and reaction balance") {
  for (SupportKind kind : {SupportKind::Clamped, SupportKind::SimplySupported, SupportKind::SimplySupportedHard}) {
    for (int m : {1, 2, 5, 8}) {
      Model model = square(m, kind, 2.5);
      model.point_loads = {{Vec2(0.3, 0.6), -0.7}};
      const Solution sol = run(model);
      CHECK(sol.residual <= 1e-10);
      for (std::size_t d : sol.system->constrained) CHECK(sol.dofs(static_cast<Eigen::Index>(d)) == 0.0);
      CHECK(constrained_w_reaction(sol) == doctest::Approx(-(2.5 - 0.7)).epsilon(1e-10));
      // free equations are in equilibrium
      const Eigen::VectorXd free = Eigen::MatrixXd(sol.system->free_basis).transpose() * sol.reactions;
      CHECK(free.norm() <= 1e-10 * sol.system->rhs.norm());
    }
  }
}

TEST_CASE("field at a node returns the nodal dofs") {
  const Solution sol = run(square(4, SupportKind::SimplySupported));
  const GlobalSystem& sys = *sol.system;
  const double wmax = sol.dofs.cwiseAbs().maxCoeff();
  for (std::size_t g = 0; g < sys.node_count(); ++g) {
    const FieldValue f = field_eval(sol, sys.nodes[g]);
    CHECK(std::abs(f.w - sol.dofs(3 * g)) < 1e-12 * wmax);
    CHECK(std::abs(f.theta_x - sol.dofs(3 * g + 1)) < 1e-10 * wmax);
    CHECK(std::abs(f.theta_y - sol.dofs(3 * g + 2)) < 1e-10 * wmax);
  }
}

TEST_CASE("deflection is continuous across the spliced edge") {
  const Solution sol = run(square(5, SupportKind::SimplySupported));
  for (double t : {0.05, 0.13, 0.37, 0.5, 0.71, 0.93}) {
    const Vec2 p(t, t);
    CHECK(std::abs(element_w(sol, 0, p) - element_w(sol, 1, p)) < 1e-10);
  }
}

TEST_CASE("field and moment evaluation are linear in the loads") {
  Model a = square(4, SupportKind::Clamped, 1.0);
  Model b = square(4, SupportKind::Clamped, 0.0);
  b.point_loads = {{Vec2(0.7, 0.2), 3.0}};
  Model ab = square(4, SupportKind::Clamped, 1.0);
  ab.point_loads = b.point_loads;
  const Solution sa = run(a), sb = run(b), sab = run(ab);
  CHECK((sa.dofs + sb.dofs - sab.dofs).norm() <= 1e-10 * sab.dofs.norm());
  for (const Vec2& p : {Vec2(0.5, 0.5), Vec2(0.2, 0.6), Vec2(0.9, 0.1)}) {
    CHECK(field_eval(sa, p).w + field_eval(sb, p).w == doctest::Approx(field_eval(sab, p).w).epsilon(1e-10));
    const MomentTriple ma = moment_eval(sa, p), mb = moment_eval(sb, p), mab = moment_eval(sab, p);
    CHECK(ma.Mx + mb.Mx == doctest::Approx(mab.Mx).epsilon(1e-10));
    CHECK(std::abs(ma.Mxy + mb.Mxy - mab.Mxy) <= 1e-10 * std::abs(mab.Mx));
  }
}

TEST_CASE("constant curvature field gives D times the curvature everywhere") {
  for (double angle : {0.0, 0.9}) {
    Model model;
    model.material = {3.0, 0.2, 0.25};
    const double c = std::cos(angle), s = std::sin(angle);
    auto R = [&](double x, double y) { return Vec2(c * x - s * y, s * x + c * y); };
    model.elements = {{{R(0.1, 0.2), R(1.3, 0.1), R(0.6, 1.1)}, 3}};
    auto sys = std::make_shared<GlobalSystem>(assemble(model));
    Solution sol;
    sol.system = sys;
    sol.dofs.resize(static_cast<Eigen::Index>(sys->dof_count()));
    // w = X^2 / 2 in global axes: kappa = (-1, 0, 0)
    for (std::size_t g = 0; g < sys->node_count(); ++g) {
      const Vec2 x = sys->nodes[g];
      sol.dofs.segment<3>(3 * static_cast<Eigen::Index>(g)) << 0.5 * x.x() * x.x(), 0.0, -x.x();
    }
    const Eigen::Vector3d M = bending_rigidity(model.material) * Eigen::Vector3d(-1.0, 0.0, 0.0);
    for (const Vec2& p : {R(0.6, 0.4), R(0.5, 0.3), R(0.9, 0.5)}) {
      const MomentTriple mt = moment_eval(sol, p);
      CHECK(mt.Mx == doctest::Approx(M[0]).epsilon(1e-10));
      CHECK(mt.My == doctest::Approx(M[1]).epsilon(1e-10));
      CHECK(std::abs(mt.Mxy) < 1e-10 * std::abs(M[0]));
      CHECK(field_eval(sol, p).w == doctest::Approx(0.5 * p.x() * p.x()).epsilon(1e-12));
    }
  }
}

TEST_CASE("moment tensor rotation") {
  const MomentTriple m{1.0, -2.0, 0.5};
  const MomentTriple r = rotate_moments(m, 0.3);
  CHECK(r.Mx + r.My == doctest::Approx(m.Mx + m.My));
  CHECK(r.Mx * r.My - r.Mxy * r.Mxy == doctest::Approx(m.Mx * m.My - m.Mxy * m.Mxy));
  const MomentTriple q = rotate_moments(m, M_PI / 2);
  CHECK(q.Mx == doctest::Approx(m.My));
  CHECK(q.My == doctest::Approx(m.Mx));
  CHECK(q.Mxy == doctest::Approx(-m.Mxy));
}

TEST_CASE("points outside the model") {
  const Solution sol = run(square(2, SupportKind::Clamped));
  CHECK_THROWS_AS(field_eval(sol, Vec2(1.2, 0.5)), Error);
  CHECK_THROWS_AS(moment_eval(sol, Vec2(-0.1, 0.5)), Error);
}

TEST_CASE("coefficient normalization") {
  CHECK(normalize_coefficient(0.004062, CoefficientKind::Deflection, 1.0, 1.0, 1.0) == doctest::Approx(0.4062));
  CHECK(normalize_coefficient(0.004062 * 16.0 * 3.0 / 2.0, CoefficientKind::Deflection, 2.0, 3.0, 2.0) ==
        doctest::Approx(0.4062));
  CHECK(normalize_coefficient(0.0479, CoefficientKind::Moment, 1.0, 1.0, 1.0) == doctest::Approx(0.479));
  CHECK(normalize_coefficient(0.0479 * 4.0 * 2.0, CoefficientKind::Moment, 2.0, 2.0, 9.0) == doctest::Approx(0.479));
  CHECK(normalize_coefficient(0.0, CoefficientKind::Deflection, 1.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(normalize_coefficient(1.0, CoefficientKind::Deflection, 1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(normalize_coefficient(1.0, CoefficientKind::Moment, 0.0, 1.0, 1.0), Error);
}
