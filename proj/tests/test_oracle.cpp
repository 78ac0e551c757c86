#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mrplate/error.hpp"
#include "mrplate/oracle.hpp"

using namespace mrplate;

namespace {

Model square(int m, SupportKind kind) {
  Model model;
  model.material = {1.0, 1.0, 0.3};
  model.uniform_q = 1.0;
  const Vec2 A(0, 0), B(1, 0), C(1, 1), D(0, 1);
  model.elements = {{{A, B, C}, m}, {{A, C, D}, m}};
  model.bcs = {{A, B, kind}, {B, C, kind}, {C, D, kind}, {D, A, kind}};
  return model;
}

Model skew(int m) {
  const double h = std::sqrt(3.0) / 2.0;
  Model model;
  model.material = {1.0, 1.0, 0.3};
  model.uniform_q = 1.0;
  const Vec2 A(0, 0), B(1, 0), C(1.5, h), D(0.5, h);
  model.elements = {{{A, B, D}, m}, {{B, C, D}, m}};
  model.bcs = {{A, B, SupportKind::SimplySupported}, {D, C, SupportKind::SimplySupported}};
  return model;
}

Model quadrant(int m) {
  const double s = 1.0 / std::sqrt(2.0);
  Model model;
  model.material = {1.0, 1.0, 0.3};
  model.uniform_q = 1.0;
  const Vec2 O(0, 0), X(1, 0), M(s, s), Y(0, 1);
  model.elements = {{{O, X, M}, m}, {{O, M, Y}, m}};
  model.bcs = {{O, X, SupportKind::Symmetry},
               {O, Y, SupportKind::Symmetry},
               {X, M, SupportKind::Clamped},
               {M, Y, SupportKind::Clamped}};
  return model;
}

}  // namespace

TEST_CASE("conventional element is exact for quadratic fields") {
  const LocalFrame f = canonicalize_triangle({0, 0}, {1.3, 0.2}, {0.4, 0.8});
  const PlateMaterial mat{1.0, 1.0, 0.3};
  const ElementMatrices em = bciz_element(f, mat, 2.0);
  CHECK((em.K - em.K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(em.K);
  CHECK(eig.eigenvalues()(2) < 1e-12 * eig.eigenvalues().maxCoeff());
  CHECK(eig.eigenvalues()(3) > 1e-6 * eig.eigenvalues().maxCoeff());
  // w = x^2: kappa = (-2, 0, 0)
  const std::array<Vec2, 3> v{Vec2::Zero(), Vec2(f.a, 0.0), f.apex()};
  Eigen::VectorXd a(9);
  for (int i = 0; i < 3; ++i) a.segment<3>(3 * i) << v[i].x() * v[i].x(), 0.0, -2.0 * v[i].x();
  const Eigen::Vector3d kappa(-2.0, 0.0, 0.0);
  CHECK(a.dot(em.K * a) == doctest::Approx(kappa.dot(bending_rigidity(mat) * kappa) * f.area()));
  double wsum = 0.0;
  for (int i = 0; i < 9; i += 3) wsum += em.f(i);
  CHECK(wsum == doctest::Approx(2.0 * f.area()));
}

TEST_CASE("mono twin sizes") {
  CHECK(build_equivalent_mono(square(2, SupportKind::Clamped)).triangles.size() == 8);
  Model one = square(3, SupportKind::Clamped);
  one.elements.pop_back();
  CHECK(build_equivalent_mono(one).triangles.size() == 9);
  const GlobalSystem sys = assemble_mono(build_equivalent_mono(square(2, SupportKind::Clamped)));
  CHECK(sys.node_count() == 9);
  CHECK(sys.applied_transverse_load == doctest::Approx(1.0));
}

TEST_CASE("scale-one element is its own twin") {
  Model model = square(1, SupportKind::Clamped);
  model.elements.pop_back();
  model.bcs = {{Vec2(0, 0), Vec2(1, 0), SupportKind::Clamped}};
  const MonoModel mono = build_equivalent_mono(model);
  REQUIRE(mono.triangles.size() == 1);
  const EquivalenceReport r = equivalence_check(model, mono);
  CHECK(r.pass);
  CHECK(r.max_K_diff < 1e-14);
}

TEST_CASE("multiresolution and conventional systems coincide") {
  for (int m : {2, 4, 8, 16}) {
    for (SupportKind kind : {SupportKind::SimplySupported, SupportKind::Clamped}) {
      const Model model = square(m, kind);
      const EquivalenceReport r = equivalence_check(model, build_equivalent_mono(model));
      CHECK(r.pass);
      CHECK(r.max_K_diff < 1e-9);
      CHECK(r.max_solution_diff < 1e-9);
      CHECK(r.multi_nodes == r.mono_nodes);
      CHECK(r.mono_triangles == static_cast<std::size_t>(2 * m * m));
    }
  }
  for (const Model& model : {skew(8), quadrant(3), quadrant(6)}) {
    CHECK(equivalence_check(model, build_equivalent_mono(model)).pass);
  }
}

TEST_CASE("point loads and hard supports carry over") {
  Model model = square(3, SupportKind::SimplySupportedHard);
  model.point_loads = {{Vec2(0.25, 0.6), 1.5}, {Vec2(0.5, 0.5), -0.5}};
  CHECK(equivalence_check(model, build_equivalent_mono(model)).pass);
}

TEST_CASE("negative controls") {
  const Model model = square(4, SupportKind::SimplySupported);
  MonoModel mono = build_equivalent_mono(model);
  EquivalenceOptions perturbed;
  perturbed.perturb_k = 1e-6;
  perturbed.seed = 3;
  CHECK_FALSE(equivalence_check(model, mono, perturbed).pass);

  // moving one interior vertex of the twin breaks the node matching
  for (auto& tri : mono.triangles)
    for (Vec2& p : tri)
      if ((p - Vec2(0.25, 0.5)).norm() < 1e-12) p += Vec2(1e-3, 0.0);
  try {
    equivalence_check(model, mono);
    FAIL("expected PermutationNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PermutationNotFound);
  }
}
