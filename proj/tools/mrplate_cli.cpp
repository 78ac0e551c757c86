// Command-line front end: solve a JSON plate config, run the built-in
// benchmarks, check the conventional-mesh twin, and run randomized checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "mrplate/bench.hpp"
#include "mrplate/config.hpp"
#include "mrplate/element.hpp"
#include "mrplate/error.hpp"
#include "mrplate/oracle.hpp"
#include "mrplate/shapefn.hpp"
#include "mrplate/solve.hpp"

namespace {

using namespace mrplate;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  out << text;
}

void apply_overrides(ProblemConfig& cfg, int m, int degree, bool hard_ss) {
  if (m > 0)
    for (ElementSpec& e : cfg.model.elements) e.m = m;
  if (degree > 0) cfg.model.quadrature_degree = degree;
  if (hard_ss)
    for (BoundaryCondition& b : cfg.model.bcs)
      if (b.kind == SupportKind::SimplySupported) b.kind = SupportKind::SimplySupportedHard;
}

std::string probes_csv(const ResultReport& r) {
  std::ostringstream os;
  os << std::setprecision(17) << "x,y,quantity,value,coefficient\n";
  for (const ProbeResult& p : r.probes) {
    os << p.probe.point.x() << "," << p.probe.point.y() << "," << to_string(p.probe.quantity) << "," << p.value << ",";
    if (p.coefficient) os << *p.coefficient;
    os << "\n";
  }
  return os.str();
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %3s %-8s %-28s %12s %12s %10s %s\n", "case", "m", "RL", "quantity", "value",
                "expected", "tol", "status");
  os << line;
  for (const BenchRow& r : rows) {
    auto num = [](double v) {
      char b[32];
      if (std::isnan(v)) return std::string("-");
      std::snprintf(b, sizeof b, "%.6g", v);
      return std::string(b);
    };
    std::snprintf(line, sizeof line, "%-18s %3d %-8s %-28s %12s %12s %10s %s\n", r.case_name.c_str(), r.m,
                  r.rl_label.c_str(), r.quantity.c_str(), num(r.value).c_str(), num(r.expected).c_str(),
                  num(r.tolerance).c_str(), r.status.c_str());
    os << line;
  }
  return os.str();
}

// Randomized checks on random triangles and scales.
int run_dev_checks(unsigned seed, int trials) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_int_distribution<int> scale(1, 5);
  int failures = 0;
  auto report = [&](const std::string& what, bool ok, double metric) {
    std::printf("%s %-34s %.3e\n", ok ? "PASS" : "FAIL", what.c_str(), metric);
    if (!ok) ++failures;
  };
  for (int t = 0; t < trials; ++t) {
    std::array<Vec2, 3> v;
    LocalFrame frame;
    for (;;) {
      for (Vec2& p : v) p = {coord(rng), coord(rng)};
      const double area = 0.5 * std::abs((v[1] - v[0]).x() * (v[2] - v[0]).y() - (v[2] - v[0]).x() * (v[1] - v[0]).y());
      double lmax = 0.0;
      for (int k = 0; k < 3; ++k) lmax = std::max(lmax, (v[(k + 1) % 3] - v[k]).norm());
      if (area > 0.05 * lmax * lmax) break;
    }
    frame = canonicalize_triangle(v[0], v[1], v[2]);
    const int m = scale(rng);
    const MRElement el{frame, m, PlateMaterial{}};
    const auto nodes = grid_nodes(m);
    std::printf("trial %d: m=%d a=%.4f h=%.4f b=%.4f\n", t, m, frame.a, frame.h, frame.b);

    double kd = 0.0;
    for (const NodeIndex& i : nodes)
      for (const NodeIndex& j : nodes) {
        const BasisTriple bt = basis_eval(frame, m, i, node_position(frame, m, j));
        const double delta = i == j ? 1.0 : 0.0;
        kd = std::max({kd, std::abs(bt.w.value - delta), std::abs(bt.thx.grad.y() - delta),
                       std::abs(-bt.thy.grad.x() - delta), std::abs(bt.w.grad.x()), std::abs(bt.w.grad.y())});
      }
    report("kronecker delta", kd < 1e-10, kd);

    const Eigen::MatrixXd K = element_stiffness(el);
    const double ks = K.cwiseAbs().maxCoeff();
    report("stiffness symmetry", (K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * ks,
           (K - K.transpose()).cwiseAbs().maxCoeff() / ks);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
    const Eigen::VectorXd ev = eig.eigenvalues();
    int zeros = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) zeros += std::abs(ev(i)) < 1e-9 * ev.maxCoeff() ? 1 : 0;
    report("psd with 3 rigid modes", ev.minCoeff() > -1e-9 * ev.maxCoeff() && zeros == 3, ev.minCoeff() / ev.maxCoeff());

    double wsum = 0.0;
    const Eigen::VectorXd f = element_load_uniform(el, 1.0);
    for (Eigen::Index i = 0; i < f.size(); i += 3) wsum += f(i);
    report("uniform load total", std::abs(wsum - frame.area()) < 1e-12 * frame.area(), std::abs(wsum - frame.area()));
  }
  std::printf("%s: %d failure(s)\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiresolution triangular plate-bending solver"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  int m_override = 0;
  int degree = 0;
  bool hard_ss = false;

  auto* solve = app.add_subcommand("solve", "Solve a plate config and report probe values");
  std::string config_path;
  solve->add_option("config", config_path, "JSON problem config")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", out_path, "Write the report here (stdout table is always printed)");
  solve->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--m", m_override, "Override the scale of every element")->check(CLI::PositiveNumber);
  solve->add_option("--quadrature-degree", degree, "Quadrature degree")->check(CLI::PositiveNumber);
  solve->add_flag("--hard-ss", hard_ss, "Treat simply supported edges as hard");

  auto* bench = app.add_subcommand("bench", "Run a built-in benchmark");
  std::string case_name;
  std::vector<int> m_list;
  bool no_equivalence = false;
  bench->add_option("case", case_name, "square, skew60 or circular")->required();
  bench->add_option("--m", m_list, "Comma-separated scales")->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--out", out_path, "Write the table here instead of stdout");
  bench->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--quadrature-degree", degree, "Quadrature degree")->check(CLI::PositiveNumber);
  bench->add_flag("--hard-ss", hard_ss, "Treat simply supported edges as hard");
  bench->add_flag("--no-equivalence", no_equivalence, "Skip the conventional-mesh comparison");

  auto* verify = app.add_subcommand("verify", "Compare a config with its conventional-mesh twin");
  double perturb = 0.0;
  unsigned seed = 0;
  verify->add_option("config", config_path, "JSON problem config")->required()->check(CLI::ExistingFile);
  verify->add_option("--m", m_override, "Override the scale of every element")->check(CLI::PositiveNumber);
  verify->add_option("--perturb-k", perturb, "Relative perturbation of one mono stiffness entry (test hook)");
  verify->add_option("--seed", seed, "Picks the perturbed entry");
  verify->add_option("--out", out_path, "Write the JSON report here");
  verify->add_flag("--hard-ss", hard_ss, "Treat simply supported edges as hard");

  auto* dev = app.add_subcommand("dev", "Randomized element checks");
  int trials = 5;
  dev->add_option("--seed", seed, "Random seed");
  dev->add_option("--trials", trials, "Number of random elements")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      ProblemConfig cfg = load_config(config_path);
      apply_overrides(cfg, m_override, degree, hard_ss);
      const ResultReport report = solve_config(cfg);
      std::cout << report_table(report);
      if (!out_path.empty()) write_output(out_path, format == "csv" ? probes_csv(report) : to_json(report).dump(2) + "\n");
      return 0;
    }
    if (*bench) {
      const BenchmarkCase bc = benchmark_case(case_name);
      BenchOptions options;
      options.hard_ss = hard_ss;
      options.check_equivalence = !no_equivalence;
      if (degree > 0) options.quadrature_degree = degree;
      const auto rows = run_benchmark(bc, m_list.empty() ? bc.default_m : m_list, options);
      if (format == "csv") {
        write_output(out_path, rows_to_csv(rows));
      } else {
        write_output(out_path, rows_to_json(rows).dump(2) + "\n");
      }
      if (!out_path.empty()) std::cout << bench_table(rows);
      return all_passed(rows) ? 0 : kExitFail;
    }
    if (*verify) {
      ProblemConfig cfg = load_config(config_path);
      apply_overrides(cfg, m_override, 0, hard_ss);
      EquivalenceOptions options;
      options.perturb_k = perturb;
      options.seed = seed;
      const EquivalenceReport eq = equivalence_check(cfg.model, build_equivalent_mono(cfg.model), options);
      std::printf("%s multi_nodes %zu mono_nodes %zu mono_triangles %zu max_K_diff %.6g max_solution_diff %.6g\n",
                  eq.pass ? "PASS" : "FAIL", eq.multi_nodes, eq.mono_nodes, eq.mono_triangles, eq.max_K_diff,
                  eq.max_solution_diff);
      if (!out_path.empty()) {
        ResultReport r;
        r.name = cfg.name;
        r.equivalence = eq;
        write_output(out_path, to_json(r).dump(2) + "\n");
      }
      return eq.pass ? 0 : kExitFail;
    }
    if (*dev) return run_dev_checks(seed, trials);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
