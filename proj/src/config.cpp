#include "mrplate/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "mrplate/error.hpp"

namespace mrplate {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void check_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) invalid(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) invalid("unknown key '" + key + "' in " + where);
}

double number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) invalid("missing '" + key + "' in " + where);
  if (!j.at(key).is_number()) invalid("'" + key + "' in " + where + " must be a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) invalid("'" + key + "' in " + where + " must be finite");
  return v;
}

Vec2 point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid(where + " must be a pair [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string fmt6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

json optional_number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

SupportKind support_kind_from_string(const std::string& s) {
  for (SupportKind k : {SupportKind::Clamped, SupportKind::SimplySupported, SupportKind::SimplySupportedHard,
                        SupportKind::Symmetry, SupportKind::Free})
    if (s == to_string(k)) return k;
  invalid("unknown support kind '" + s + "'");
}

Quantity quantity_from_string(const std::string& s) {
  for (Quantity q : {Quantity::Deflection, Quantity::MomentX, Quantity::MomentY, Quantity::MomentXY})
    if (s == to_string(q)) return q;
  invalid("unknown probe quantity '" + s + "'");
}

ProblemConfig parse_config(const json& j) {
  check_keys(j, "config", {"name", "material", "elements", "loads", "bcs", "probes", "solver", "reference_length"});
  ProblemConfig cfg;
  cfg.name = j.value("name", std::string("problem"));

  if (!j.contains("material")) invalid("missing 'material'");
  const json& mat = j.at("material");
  check_keys(mat, "material", {"E", "t", "nu"});
  cfg.model.material = {number(mat, "E", "material"), number(mat, "t", "material"), number(mat, "nu", "material")};

  if (!j.contains("elements") || !j.at("elements").is_array() || j.at("elements").empty()) {
    invalid("'elements' must be a non-empty array");
  }
  for (const json& e : j.at("elements")) {
    check_keys(e, "element", {"vertices", "m"});
    if (!e.contains("vertices") || !e.at("vertices").is_array() || e.at("vertices").size() != 3) {
      invalid("element needs three vertices");
    }
    if (!e.contains("m") || !e.at("m").is_number_integer() || e.at("m").get<int>() < 1) {
      invalid("element 'm' must be a positive integer");
    }
    ElementSpec spec;
    for (int k = 0; k < 3; ++k) spec.vertices[k] = point(e.at("vertices")[k], "vertex");
    spec.m = e.at("m").get<int>();
    cfg.model.elements.push_back(spec);
  }

  if (j.contains("loads")) {
    const json& loads = j.at("loads");
    check_keys(loads, "loads", {"uniform_q", "point_loads"});
    if (loads.contains("uniform_q")) cfg.model.uniform_q = number(loads, "uniform_q", "loads");
    if (loads.contains("point_loads")) {
      if (!loads.at("point_loads").is_array()) invalid("'point_loads' must be an array");
      for (const json& p : loads.at("point_loads")) {
        check_keys(p, "point load", {"x", "y", "P"});
        cfg.model.point_loads.push_back(
            {Vec2(number(p, "x", "point load"), number(p, "y", "point load")), number(p, "P", "point load")});
      }
    }
  }

  if (j.contains("bcs")) {
    if (!j.at("bcs").is_array()) invalid("'bcs' must be an array");
    for (const json& b : j.at("bcs")) {
      check_keys(b, "bc", {"edge", "kind"});
      if (!b.contains("edge") || !b.at("edge").is_array() || b.at("edge").size() != 2) {
        invalid("bc 'edge' must be [p1, p2]");
      }
      if (!b.contains("kind") || !b.at("kind").is_string()) invalid("bc 'kind' must be a string");
      cfg.model.bcs.push_back({point(b.at("edge")[0], "edge point"), point(b.at("edge")[1], "edge point"),
                               support_kind_from_string(b.at("kind").get<std::string>())});
    }
  }

  if (j.contains("probes")) {
    if (!j.at("probes").is_array()) invalid("'probes' must be an array");
    for (const json& p : j.at("probes")) {
      check_keys(p, "probe", {"x", "y", "quantity"});
      ProbeSpec ps;
      ps.point = {number(p, "x", "probe"), number(p, "y", "probe")};
      if (p.contains("quantity")) {
        if (!p.at("quantity").is_string()) invalid("probe 'quantity' must be a string");
        ps.quantity = quantity_from_string(p.at("quantity").get<std::string>());
      }
      cfg.probes.push_back(ps);
    }
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    check_keys(s, "solver", {"quadrature_degree", "merge_tolerance", "strict_point_loads"});
    if (s.contains("quadrature_degree")) {
      if (!s.at("quadrature_degree").is_number_integer()) invalid("'quadrature_degree' must be an integer");
      cfg.model.quadrature_degree = s.at("quadrature_degree").get<int>();
      if (cfg.model.quadrature_degree < 1) invalid("'quadrature_degree' must be positive");
    }
    if (s.contains("merge_tolerance")) {
      const double tol = number(s, "merge_tolerance", "solver");
      if (!(tol > 0.0)) invalid("'merge_tolerance' must be positive");
      cfg.model.merge_tolerance = tol;
    }
    if (s.contains("strict_point_loads")) {
      if (!s.at("strict_point_loads").is_boolean()) invalid("'strict_point_loads' must be a boolean");
      cfg.model.strict_point_loads = s.at("strict_point_loads").get<bool>();
    }
  }

  if (j.contains("reference_length")) {
    const double L = number(j, "reference_length", "config");
    if (!(L > 0.0)) invalid("'reference_length' must be positive");
    cfg.reference_length = L;
  }
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    invalid(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

ResultReport solve_config(const ProblemConfig& config) {
  const Model& model = config.model;
  auto sys = std::make_shared<const GlobalSystem>(apply_boundary_conditions(assemble(model), model.bcs));
  const Solution sol = solve_system(sys);

  ResultReport report;
  report.name = config.name;
  report.nodes = sys->node_count();
  report.dofs = sys->dof_count();
  report.free_dofs = sys->free_dof_count();
  report.residual = sol.residual;
  for (const ElementSpec& e : model.elements) report.rl_labels.push_back(rl_label(e.m));

  const double D = model.material.rigidity();
  const bool normalize = config.reference_length && model.uniform_q != 0.0;
  for (const ProbeSpec& p : config.probes) {
    ProbeResult r{p, 0.0, std::nullopt};
    if (p.quantity == Quantity::Deflection) {
      r.value = field_eval(sol, p.point).w;
      if (normalize) {
        r.coefficient = normalize_coefficient(r.value, CoefficientKind::Deflection, *config.reference_length,
                                              model.uniform_q, D);
      }
    } else {
      const MomentTriple mt = moment_eval(sol, p.point);
      r.value = p.quantity == Quantity::MomentX ? mt.Mx : (p.quantity == Quantity::MomentY ? mt.My : mt.Mxy);
      if (normalize) {
        r.coefficient =
            normalize_coefficient(r.value, CoefficientKind::Moment, *config.reference_length, model.uniform_q, D);
      }
    }
    report.probes.push_back(r);
  }
  return report;
}

json to_json(const ResultReport& report) {
  json j;
  j["name"] = report.name;
  j["nodes"] = report.nodes;
  j["dofs"] = report.dofs;
  j["free_dofs"] = report.free_dofs;
  j["rl_labels"] = report.rl_labels;
  j["residual"] = report.residual;
  json probes = json::array();
  for (const ProbeResult& p : report.probes) {
    json e{{"x", p.probe.point.x()},
           {"y", p.probe.point.y()},
           {"quantity", to_string(p.probe.quantity)},
           {"value", p.value}};
    e["coefficient"] = p.coefficient ? json(*p.coefficient) : json(nullptr);
    probes.push_back(e);
  }
  j["probes"] = probes;
  if (report.equivalence) {
    const EquivalenceReport& eq = *report.equivalence;
    j["equivalence"] = {{"multi_nodes", eq.multi_nodes},     {"mono_nodes", eq.mono_nodes},
                        {"mono_triangles", eq.mono_triangles}, {"max_K_diff", eq.max_K_diff},
                        {"max_solution_diff", eq.max_solution_diff}, {"pass", eq.pass}};
  }
  return j;
}

ResultReport report_from_json(const json& j) {
  try {
    ResultReport r;
    r.name = j.at("name").get<std::string>();
    r.nodes = j.at("nodes").get<std::size_t>();
    r.dofs = j.at("dofs").get<std::size_t>();
    r.free_dofs = j.at("free_dofs").get<std::size_t>();
    r.rl_labels = j.at("rl_labels").get<std::vector<std::string>>();
    r.residual = j.at("residual").get<double>();
    for (const json& p : j.at("probes")) {
      ProbeResult pr;
      pr.probe.point = {p.at("x").get<double>(), p.at("y").get<double>()};
      pr.probe.quantity = quantity_from_string(p.at("quantity").get<std::string>());
      pr.value = p.at("value").get<double>();
      if (!p.at("coefficient").is_null()) pr.coefficient = p.at("coefficient").get<double>();
      r.probes.push_back(pr);
    }
    if (j.contains("equivalence")) {
      const json& e = j.at("equivalence");
      EquivalenceReport eq;
      eq.multi_nodes = e.at("multi_nodes").get<std::size_t>();
      eq.mono_nodes = e.at("mono_nodes").get<std::size_t>();
      eq.mono_triangles = e.at("mono_triangles").get<std::size_t>();
      eq.max_K_diff = e.at("max_K_diff").get<double>();
      eq.max_solution_diff = e.at("max_solution_diff").get<double>();
      eq.pass = e.at("pass").get<bool>();
      r.equivalence = eq;
    }
    return r;
  } catch (const json::exception& e) {
    invalid(std::string("malformed report: ") + e.what());
  }
}

std::string report_table(const ResultReport& report) {
  std::ostringstream os;
  os << report.name << ": " << report.nodes << " nodes, " << report.dofs << " dofs, " << report.free_dofs
     << " free, residual " << fmt6(report.residual) << "\n";
  os << "RL:";
  for (const std::string& l : report.rl_labels) os << " " << l;
  os << "\n";
  os << std::left << std::setw(12) << "x" << std::setw(12) << "y" << std::setw(12) << "quantity" << std::setw(14)
     << "value"
     << "coefficient\n";
  for (const ProbeResult& p : report.probes) {
    os << std::setw(12) << fmt6(p.probe.point.x()) << std::setw(12) << fmt6(p.probe.point.y()) << std::setw(12)
       << to_string(p.probe.quantity) << std::setw(14) << fmt6(p.value) << (p.coefficient ? fmt6(*p.coefficient) : "-")
       << "\n";
  }
  if (report.equivalence) {
    const EquivalenceReport& eq = *report.equivalence;
    os << "equivalence: " << (eq.pass ? "PASS" : "FAIL") << " max_K_diff " << fmt6(eq.max_K_diff)
       << " max_solution_diff " << fmt6(eq.max_solution_diff) << "\n";
  }
  return os.str();
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "case,m,rl_label,quantity,value,expected,tolerance,status\n";
  for (const BenchRow& r : rows) {
    os << r.case_name << "," << r.m << "," << r.rl_label << "," << r.quantity << "," << fmt6(r.value) << ","
       << (std::isnan(r.expected) ? "" : fmt6(r.expected)) << "," << (std::isnan(r.tolerance) ? "" : fmt6(r.tolerance))
       << "," << r.status << "\n";
  }
  return os.str();
}

json rows_to_json(const std::vector<BenchRow>& rows) {
  json out = json::array();
  for (const BenchRow& r : rows) {
    out.push_back({{"case", r.case_name},
                   {"m", r.m},
                   {"rl_label", r.rl_label},
                   {"quantity", r.quantity},
                   {"value", r.value},
                   {"expected", optional_number(r.expected)},
                   {"tolerance", optional_number(r.tolerance)},
                   {"status", r.status}});
  }
  return out;
}

}  // namespace mrplate
