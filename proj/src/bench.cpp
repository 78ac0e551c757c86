#include "mrplate/bench.hpp"

#include <algorithm>
#include <cmath>

#include "mrplate/error.hpp"
#include "mrplate/oracle.hpp"

namespace mrplate {

const char* to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Deflection: return "deflection";
    case Quantity::MomentX: return "moment_x";
    case Quantity::MomentY: return "moment_y";
    case Quantity::MomentXY: return "moment_xy";
  }
  return "?";
}

namespace {

const PlateMaterial kMaterial{1.0, 1.0, 0.3};

SupportKind edge_kind(SupportKind kind, const BenchOptions& options) {
  return options.hard_ss && kind == SupportKind::SimplySupported ? SupportKind::SimplySupportedHard : kind;
}

Probe probe(std::string label, Vec2 point, Quantity quantity, std::map<int, double> expected, double tolerance,
            double scale = 1.0) {
  Probe p;
  p.label = std::move(label);
  p.point = point;
  p.quantity = quantity;
  p.expected = std::move(expected);
  p.tolerance = tolerance;
  p.scale = scale;
  return p;
}

Model base_model(const BenchmarkCase& bc, const BenchOptions& options) {
  Model model;
  model.material = bc.material;
  model.uniform_q = bc.q;
  model.quadrature_degree = options.quadrature_degree;
  return model;
}

BenchmarkCase square_case() {
  BenchmarkCase bc;
  bc.name = "square";
  bc.material = kMaterial;
  bc.default_m = {2, 4, 8, 16};
  const Vec2 centre(0.5, 0.5), side(0.5, 0.0);
  bc.variants.push_back(
      {"ss",
       SupportKind::SimplySupported,
       {probe("alpha", centre, Quantity::Deflection, {{2, 0.3950}, {4, 0.4039}, {8, 0.4058}, {16, 0.4062}}, 0.0005),
        probe("beta_center", centre, Quantity::MomentX, {{2, 0.5026}, {4, 0.4880}, {8, 0.4824}, {16, 0.4800}},
              0.002)}});
  bc.variants.push_back(
      {"clamped",
       SupportKind::Clamped,
       {probe("alpha", centre, Quantity::Deflection, {{2, 0.0998}, {4, 0.1194}, {8, 0.1249}, {16, 0.1262}}, 0.0005),
        probe("beta_center", centre, Quantity::MomentX, {}, 0.0),
        probe("beta_side_middle", side, Quantity::MomentY,
              {{2, -0.3551}, {4, -0.4761}, {8, -0.5028}, {16, -0.5104}}, 0.002)}});
  bc.build = [](const BenchmarkCase& c, const BenchmarkVariant& v, int m, const BenchOptions& o) {
    Model model = base_model(c, o);
    const double L = c.length;
    const Vec2 A(0, 0), B(L, 0), C(L, L), D(0, L);
    model.elements = {{{A, B, C}, m}, {{A, C, D}, m}};
    const SupportKind k = edge_kind(v.support, o);
    model.bcs = {{A, B, k}, {B, C, k}, {C, D, k}, {D, A, k}};
    return model;
  };
  return bc;
}

BenchmarkCase skew_case() {
  BenchmarkCase bc;
  bc.name = "skew60";
  bc.material = kMaterial;
  bc.default_m = {8, 12, 16};
  const double h = std::sqrt(3.0) / 2.0;
  Probe alpha = probe("alpha", Vec2(0.75, 0.5 * h), Quantity::Deflection, {{8, 0.7920}, {12, 0.7937}, {16, 0.7930}},
                      0.001);
  bc.variants.push_back({"ss", SupportKind::SimplySupported, {alpha}});
  bc.build = [h](const BenchmarkCase& c, const BenchmarkVariant& v, int m, const BenchOptions& o) {
    Model model = base_model(c, o);
    const double L = c.length;
    const Vec2 A(0, 0), B(L, 0), C(1.5 * L, h * L), D(0.5 * L, h * L);
    // split along the short diagonal B-D
    model.elements = {{{A, B, D}, m}, {{B, C, D}, m}};
    const SupportKind k = edge_kind(v.support, o);
    model.bcs = {{A, B, k}, {D, C, k}};
    return model;
  };
  return bc;
}

BenchmarkCase circular_case() {
  BenchmarkCase bc;
  bc.name = "circular";
  bc.material = kMaterial;
  bc.default_m = {3, 6, 12};
  const Vec2 centre(0.0, 0.0);
  const double nu = kMaterial.nu;
  Probe clamped = probe("alpha", centre, Quantity::Deflection, {{3, 0.0145}, {6, 0.0153}}, 0.001, 0.01);
  clamped.limit = 1.0 / 64.0;
  clamped.limit_rel_tolerance = 0.02;
  clamped.limit_m = {12};
  Probe ss = probe("alpha", centre, Quantity::Deflection, {{3, 0.0638}, {6, 0.0637}}, 0.001, 0.01);
  ss.limit = (5.0 + nu) / (64.0 * (1.0 + nu));
  ss.limit_rel_tolerance = 0.02;
  ss.limit_m = {12};
  Probe moment = probe("beta_center", centre, Quantity::MomentX, {{3, 0.2103}, {6, 0.2073}}, 0.003, 0.1);
  moment.limit = (3.0 + nu) / 16.0;
  moment.limit_rel_tolerance = 0.02;
  moment.limit_m = {12};
  bc.variants.push_back({"clamped", SupportKind::Clamped, {clamped}});
  bc.variants.push_back({"ss", SupportKind::SimplySupported, {ss, moment}});
  bc.variants.push_back({"free", SupportKind::Free, {probe("alpha_rim", Vec2(1.0, 0.0), Quantity::Deflection, {}, 0.0, 0.01)}});
  bc.build = [](const BenchmarkCase& c, const BenchmarkVariant& v, int m, const BenchOptions& o) {
    Model model = base_model(c, o);
    const double r = c.length;
    const Vec2 O(0, 0), X(r, 0), Y(0, r), M(r / std::sqrt(2.0), r / std::sqrt(2.0));
    model.elements = {{{O, X, M}, m}, {{O, M, Y}, m}};
    model.bcs = {{O, X, SupportKind::Symmetry}, {O, Y, SupportKind::Symmetry}};
    if (v.support == SupportKind::Free) {
      // only the rigid translation is left by the symmetry supports
      model.bcs.push_back({O, O, SupportKind::SimplySupported});
    } else {
      const SupportKind k = edge_kind(v.support, o);
      model.bcs.push_back({X, M, k});
      model.bcs.push_back({M, Y, k});
    }
    return model;
  };
  return bc;
}

double probe_value(const Solution& sol, const BenchmarkCase& bc, const Probe& p) {
  const Vec2 x = p.point * bc.length;
  const double D = bc.material.rigidity();
  if (p.quantity == Quantity::Deflection) {
    return p.scale * normalize_coefficient(field_eval(sol, x).w, CoefficientKind::Deflection, bc.length, bc.q, D);
  }
  const MomentTriple mt = moment_eval(sol, x);
  const double v = p.quantity == Quantity::MomentX ? mt.Mx : (p.quantity == Quantity::MomentY ? mt.My : mt.Mxy);
  return p.scale * normalize_coefficient(v, CoefficientKind::Moment, bc.length, bc.q, D);
}

const char* status_of(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

std::vector<std::string> benchmark_names() { return {"square", "skew60", "circular"}; }

BenchmarkCase benchmark_case(const std::string& name) {
  if (name == "square") return square_case();
  if (name == "skew60") return skew_case();
  if (name == "circular" || name == "circular_quadrant") return circular_case();
  throw Error(ErrorCode::UnknownCase, "unknown benchmark '" + name + "'");
}

std::vector<BenchRow> run_benchmark(const BenchmarkCase& bc, const std::vector<int>& m_list,
                                    const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (const BenchmarkVariant& variant : bc.variants) {
    const std::string name = bc.name + "_" + variant.name;
    for (int m : m_list) {
      if (m < 1) throw Error(ErrorCode::InvalidConfig, "scale m must be positive");
      const Model model = bc.build(bc, variant, m, options);
      const std::string rl = rl_label(m);
      auto row = [&](std::string quantity, double value) {
        BenchRow r;
        r.case_name = name;
        r.m = m;
        r.rl_label = rl;
        r.quantity = std::move(quantity);
        r.value = value;
        r.status = "INFO";
        return r;
      };

      if (options.check_equivalence) {
        const MonoModel mono = build_equivalent_mono(model);
        const EquivalenceReport eq = equivalence_check(model, mono);
        BenchRow r = row("equivalence", std::max(eq.max_K_diff, eq.max_solution_diff));
        r.expected = 0.0;
        r.tolerance = 1e-9;
        r.status = status_of(eq.pass);
        rows.push_back(r);
        rows.push_back(row("multi_nodes", static_cast<double>(eq.multi_nodes)));
        BenchRow n = row("mono_nodes", static_cast<double>(eq.mono_nodes));
        n.expected = static_cast<double>(eq.multi_nodes);
        n.tolerance = 0.0;
        n.status = status_of(eq.mono_nodes == eq.multi_nodes);
        rows.push_back(n);
      }

      const Solution sol = solve_system(apply_boundary_conditions(assemble(model), model.bcs));
      for (const Probe& p : variant.probes) {
        const double value = probe_value(sol, bc, p);
        BenchRow r = row(p.label, value);
        if (auto it = p.expected.find(m); it != p.expected.end()) {
          r.expected = it->second;
          r.tolerance = p.tolerance;
          r.status = status_of(std::abs(value - r.expected) <= r.tolerance);
        }
        rows.push_back(r);
        if (std::find(p.limit_m.begin(), p.limit_m.end(), m) != p.limit_m.end()) {
          BenchRow l = row(p.label + "_vs_analytical", value);
          l.expected = p.limit;
          l.tolerance = p.limit_rel_tolerance * std::abs(p.limit);
          l.status = status_of(std::abs(value - l.expected) <= l.tolerance);
          rows.push_back(l);
        }
      }
    }
  }
  return rows;
}

bool all_passed(const std::vector<BenchRow>& rows) {
  return std::none_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.status == "FAIL"; });
}

}  // namespace mrplate
