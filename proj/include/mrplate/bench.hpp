#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mrplate/assembly.hpp"
#include "mrplate/solve.hpp"

namespace mrplate {

enum class Quantity { Deflection, MomentX, MomentY, MomentXY };

const char* to_string(Quantity q) noexcept;

/// A point where a normalized coefficient is read and compared with the
/// published value for some scales.
struct Probe {
  std::string label;
  Vec2 point = Vec2::Zero();  // in units of the reference length
  Quantity quantity = Quantity::Deflection;
  /// Extra factor on the coefficient (100 w D / (q L^4) or 10 M / (q L^2)).
  double scale = 1.0;
  std::map<int, double> expected;  // m -> value
  double tolerance = 0.0;          // absolute
  /// Relative tolerance against `limit` (the analytical value) at the scales
  /// listed in `limit_m`; NaN when there is none.
  double limit = std::numeric_limits<double>::quiet_NaN();
  double limit_rel_tolerance = 0.0;
  std::vector<int> limit_m;
};

struct BenchmarkVariant {
  std::string name;
  SupportKind support = SupportKind::SimplySupported;
  std::vector<Probe> probes;
};

struct BenchOptions {
  bool hard_ss = false;
  int quadrature_degree = 5;
  bool check_equivalence = true;
};

struct BenchmarkCase {
  std::string name;
  double length = 1.0;  // side or radius
  double q = 1.0;
  PlateMaterial material;
  std::vector<int> default_m;
  std::vector<BenchmarkVariant> variants;
  std::function<Model(const BenchmarkCase&, const BenchmarkVariant&, int m, const BenchOptions&)> build;
};

struct BenchRow {
  std::string case_name;  // case and variant, e.g. square_ss
  int m = 0;
  std::string rl_label;
  std::string quantity;
  double value = 0.0;
  double expected = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  std::string status;  // PASS, FAIL or INFO
};

std::vector<std::string> benchmark_names();
/// Throws UnknownCase.
BenchmarkCase benchmark_case(const std::string& name);

/// Solves every variant at every scale and emits one row per probe plus the
/// equivalence and node-count diagnostics.
std::vector<BenchRow> run_benchmark(const BenchmarkCase& bc, const std::vector<int>& m_list,
                                    const BenchOptions& options = {});

bool all_passed(const std::vector<BenchRow>& rows);

}  // namespace mrplate
