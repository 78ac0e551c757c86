#include "mrplate/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "mrplate/error.hpp"

namespace mrplate {

namespace {

// Polynomial in the area coordinates L1, L2, L3.
class LPoly {
 public:
  using Exponent = std::array<int, 3>;

  static LPoly monomial(double c, int e1, int e2, int e3) {
    LPoly p;
    p.terms_[{e1, e2, e3}] = c;
    return p;
  }

  LPoly& operator+=(const LPoly& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    return *this;
  }
  friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
  friend LPoly operator*(double k, LPoly p) {
    for (auto& [e, c] : p.terms_) c *= k;
    return p;
  }
  friend LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.terms_[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
    return p;
  }

  LPoly derivative(int i) const {
    LPoly p;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      p.terms_[d] += c * e[i];
    }
    return p;
  }

  double operator()(const Eigen::Vector3d& L) const {
    double v = 0.0;
    for (const auto& [e, c] : terms_) v += c * std::pow(L[0], e[0]) * std::pow(L[1], e[1]) * std::pow(L[2], e[2]);
    return v;
  }

  /// Integral over a triangle of area A:
  /// int L1^a L2^b L3^c dA = 2A a! b! c! / (a + b + c + 2)!
  double integrate(double area) const {
    double v = 0.0;
    for (const auto& [e, c] : terms_) {
      v += c * 2.0 * area * std::tgamma(e[0] + 1.0) * std::tgamma(e[1] + 1.0) * std::tgamma(e[2] + 1.0) /
           std::tgamma(e[0] + e[1] + e[2] + 3.0);
    }
    return v;
  }

 private:
  std::map<Exponent, double> terms_;
};

LPoly L(int i) { return LPoly::monomial(1.0, i == 0, i == 1, i == 2); }

// Shape functions of vertex i: w, theta_x = dw/dy, theta_y = -dw/dx.
std::array<LPoly, 3> bciz_shapes(int i, const std::array<Vec2, 3>& v) {
  const int j = (i + 1) % 3, k = (i + 2) % 3;
  auto bcoef = [&](int n) { return v[(n + 1) % 3].y() - v[(n + 2) % 3].y(); };
  auto ccoef = [&](int n) { return v[(n + 2) % 3].x() - v[(n + 1) % 3].x(); };
  const LPoly li = L(i), lj = L(j), lk = L(k);
  const LPoly l123 = 0.5 * (L(0) * L(1) * L(2));
  const LPoly w = li + li * li * lj + li * li * lk + (-1.0) * (li * lj * lj) + (-1.0) * (li * lk * lk);
  const LPoly lik = li * li * lk + l123;
  const LPoly lij = li * li * lj + l123;
  const LPoly thx = bcoef(j) * lik + (-bcoef(k)) * lij;
  const LPoly thy = ccoef(j) * lik + (-ccoef(k)) * lij;
  return {w, thx, thy};
}

}  // namespace

ElementMatrices bciz_element(const LocalFrame& frame, const PlateMaterial& material, double q) {
  const std::array<Vec2, 3> v{Vec2::Zero(), Vec2(frame.a, 0.0), frame.apex()};
  const double area = frame.area();
  Eigen::Matrix<double, 3, 2> grad;
  for (int n = 0; n < 3; ++n) {
    grad(n, 0) = (v[(n + 1) % 3].y() - v[(n + 2) % 3].y()) / (2.0 * area);
    grad(n, 1) = (v[(n + 2) % 3].x() - v[(n + 1) % 3].x()) / (2.0 * area);
  }

  std::array<LPoly, 9> shapes;
  for (int i = 0; i < 3; ++i) {
    const auto s = bciz_shapes(i, v);
    for (int c = 0; c < 3; ++c) shapes[3 * i + c] = s[c];
  }

  // curvature rows (-w_xx, -w_yy, -2 w_xy) per column
  std::array<std::array<LPoly, 3>, 9> B;
  for (int col = 0; col < 9; ++col) {
    LPoly xx, yy, xy;
    for (int p = 0; p < 3; ++p)
      for (int r = 0; r < 3; ++r) {
        const LPoly d = shapes[col].derivative(p).derivative(r);
        xx += (grad(p, 0) * grad(r, 0)) * d;
        yy += (grad(p, 1) * grad(r, 1)) * d;
        xy += (grad(p, 0) * grad(r, 1)) * d;
      }
    B[col] = {(-1.0) * xx, (-1.0) * yy, (-2.0) * xy};
  }

  const Eigen::Matrix3d D = bending_rigidity(material);
  ElementMatrices out;
  out.K = Eigen::MatrixXd::Zero(9, 9);
  out.f = Eigen::VectorXd::Zero(9);
  out.F = Eigen::VectorXd::Zero(9);
  for (int i = 0; i < 9; ++i) {
    out.f(i) = q * shapes[i].integrate(area);
    for (int j = i; j < 9; ++j) {
      LPoly e;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          if (D(r, c) != 0.0) e += D(r, c) * (B[i][r] * B[j][c]);
      out.K(i, j) = out.K(j, i) = e.integrate(area);
    }
  }
  return out;
}

MonoModel build_equivalent_mono(const Model& model) {
  MonoModel mono;
  mono.material = model.material;
  mono.bcs = model.bcs;
  mono.uniform_q = model.uniform_q;
  mono.point_loads = model.point_loads;
  mono.merge_tolerance = model.resolved_merge_tolerance();
  mono.strict_point_loads = model.strict_point_loads;
  for (const ElementSpec& spec : model.elements) {
    const LocalFrame frame = canonicalize_triangle(spec.vertices[0], spec.vertices[1], spec.vertices[2]);
    for (const SubTriangle& st : subtriangle_partition(frame, spec.m)) {
      mono.triangles.push_back(
          {frame.to_global(st.vertices[0]), frame.to_global(st.vertices[1]), frame.to_global(st.vertices[2])});
    }
  }
  return mono;
}

GlobalSystem assemble_mono(const MonoModel& mono) {
  mono.material.validate();
  std::vector<MRElement> elements;
  std::vector<std::vector<Vec2>> positions;
  std::vector<ElementMatrices> local;
  double total = 0.0;
  for (const auto& tri : mono.triangles) {
    const LocalFrame frame = canonicalize_triangle(tri[0], tri[1], tri[2]);
    elements.push_back({frame, 1, mono.material});
    positions.push_back({frame.to_global(Vec2::Zero()), frame.to_global(Vec2(frame.a, 0.0)),
                         frame.to_global(frame.apex())});
    local.push_back(bciz_element(frame, mono.material, mono.uniform_q));
    total += mono.uniform_q * frame.area();
  }

  for (const PointLoad& load : mono.point_loads) {
    std::vector<std::size_t> owners;
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (element_contains(elements[e], elements[e].frame.to_local(load.position), 1e-9)) owners.push_back(e);
    }
    if (owners.empty()) throw Error(ErrorCode::OutsideModel, "point load outside every triangle");
    if (owners.size() > 1 && mono.strict_point_loads) {
      throw Error(ErrorCode::AmbiguousPointLoad, "point load on a shared edge");
    }
    const LocalFrame& frame = elements[owners.front()].frame;
    const std::array<Vec2, 3> v{Vec2::Zero(), Vec2(frame.a, 0.0), frame.apex()};
    const Vec2 p = frame.to_local(load.position);
    const double twice = 2.0 * frame.area();
    Eigen::Vector3d Lp;
    for (int n = 0; n < 3; ++n) {
      const Vec2& a = v[(n + 1) % 3];
      const Vec2& b = v[(n + 2) % 3];
      Lp[n] = ((a.x() - p.x()) * (b.y() - p.y()) - (b.x() - p.x()) * (a.y() - p.y())) / twice;
    }
    for (int i = 0; i < 3; ++i) {
      const auto s = bciz_shapes(i, v);
      for (int c = 0; c < 3; ++c) local[owners.front()].F(3 * i + c) += load.magnitude * s[c](Lp);
    }
    total += load.magnitude;
  }

  std::vector<ElementMatrices> global;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    global.push_back(to_global(local[e], transformation_matrix(elements[e].frame, 3)));
  }
  double tol = 1e-9;
  if (mono.merge_tolerance) {
    tol = *mono.merge_tolerance;
  } else if (!mono.triangles.empty()) {
    Vec2 lo = mono.triangles.front()[0], hi = lo;
    for (const auto& tri : mono.triangles)
      for (const Vec2& p : tri) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
      }
    tol = 1e-9 * (hi - lo).norm();
  }
  GlobalSystem sys = scatter_elements(std::move(elements), positions, global, tol);
  sys.applied_transverse_load = total;
  return sys;
}

EquivalenceReport equivalence_check(const Model& model, const MonoModel& mono, const EquivalenceOptions& options) {
  GlobalSystem multi = assemble(model);
  GlobalSystem conv = assemble_mono(mono);

  EquivalenceReport report;
  report.multi_nodes = multi.node_count();
  report.mono_nodes = conv.node_count();
  report.mono_triangles = mono.triangles.size();
  if (report.multi_nodes != report.mono_nodes) {
    throw Error(ErrorCode::PermutationNotFound, "node counts differ: " + std::to_string(report.multi_nodes) +
                                                    " vs " + std::to_string(report.mono_nodes));
  }

  const double tol = std::max(multi.merge_tolerance, conv.merge_tolerance);
  std::vector<bool> used(conv.node_count(), false);
  report.permutation.resize(multi.node_count());
  for (std::size_t i = 0; i < multi.node_count(); ++i) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < conv.node_count(); ++j) {
      if (!used[j] && (multi.nodes[i] - conv.nodes[j]).norm() <= tol) {
        hit = j;
        break;
      }
    }
    if (!hit) throw Error(ErrorCode::PermutationNotFound, "multiresolution node " + std::to_string(i) + " has no twin");
    used[*hit] = true;
    report.permutation[i] = *hit;
  }

  if (options.perturb_k != 0.0) {
    std::mt19937 rng(options.seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, conv.K.rows() - 1);
    const Eigen::Index d = pick(rng);
    conv.K.coeffRef(d, d) *= 1.0 + options.perturb_k;
  }

  // P maps mono DOFs onto multiresolution DOFs
  const auto ndof = static_cast<Eigen::Index>(multi.dof_count());
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < report.permutation.size(); ++i)
    for (int c = 0; c < 3; ++c)
      trip.emplace_back(static_cast<Eigen::Index>(3 * i + c), static_cast<Eigen::Index>(3 * report.permutation[i] + c),
                        1.0);
  Eigen::SparseMatrix<double> P(ndof, ndof);
  P.setFromTriplets(trip.begin(), trip.end());

  const Eigen::MatrixXd Km = Eigen::MatrixXd(multi.K);
  const Eigen::MatrixXd Kc = Eigen::MatrixXd(P * conv.K * P.transpose());
  const double kscale = Km.cwiseAbs().maxCoeff();
  report.max_K_diff = (Km - Kc).cwiseAbs().maxCoeff() / (kscale > 0.0 ? kscale : 1.0);

  const Solution sm = solve_system(apply_boundary_conditions(std::move(multi), model.bcs));
  const Solution sc = solve_system(apply_boundary_conditions(std::move(conv), mono.bcs));
  const Eigen::VectorXd ac = P * sc.dofs;
  const double ascale = sm.dofs.cwiseAbs().maxCoeff();
  report.max_solution_diff = (sm.dofs - ac).cwiseAbs().maxCoeff() / (ascale > 0.0 ? ascale : 1.0);
  report.pass = report.max_K_diff < options.tolerance && report.max_solution_diff < options.tolerance;
  return report;
}

}  // namespace mrplate
