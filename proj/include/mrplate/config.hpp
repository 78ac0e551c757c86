#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrplate/assembly.hpp"
#include "mrplate/bench.hpp"
#include "mrplate/oracle.hpp"

namespace mrplate {

struct ProbeSpec {
  Vec2 point = Vec2::Zero();
  Quantity quantity = Quantity::Deflection;
};

/// A plate problem read from a JSON config. Units are SI throughout; the
/// optional reference length only affects the reported coefficients.
struct ProblemConfig {
  std::string name;
  Model model;
  std::vector<ProbeSpec> probes;
  std::optional<double> reference_length;
};

/// Throws InvalidConfig on unknown keys, missing fields or wrong types.
ProblemConfig parse_config(const nlohmann::json& j);
ProblemConfig load_config(const std::filesystem::path& path);

SupportKind support_kind_from_string(const std::string& s);
Quantity quantity_from_string(const std::string& s);

struct ProbeResult {
  ProbeSpec probe;
  double value = 0.0;
  std::optional<double> coefficient;
};

struct ResultReport {
  std::string name;
  std::vector<ProbeResult> probes;
  std::size_t nodes = 0;
  std::size_t dofs = 0;
  std::size_t free_dofs = 0;
  std::vector<std::string> rl_labels;  // one per element
  double residual = 0.0;
  std::optional<EquivalenceReport> equivalence;
};

ResultReport solve_config(const ProblemConfig& config);

nlohmann::json to_json(const ResultReport& report);
ResultReport report_from_json(const nlohmann::json& j);
/// Fixed-width text table, numbers to 6 significant digits.
std::string report_table(const ResultReport& report);

/// case,m,rl_label,quantity,value,expected,tolerance,status
std::string rows_to_csv(const std::vector<BenchRow>& rows);
nlohmann::json rows_to_json(const std::vector<BenchRow>& rows);

}  // namespace mrplate
