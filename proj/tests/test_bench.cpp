#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mrplate/bench.hpp"
#include "mrplate/error.hpp"

using namespace mrplate;

namespace {

const BenchRow* find(const std::vector<BenchRow>& rows, const std::string& name, int m, const std::string& quantity) {
  for (const BenchRow& r : rows)
    if (r.case_name == name && r.m == m && r.quantity == quantity) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("case lookup") {
  const auto names = benchmark_names();
  CHECK(names.size() == 3);
  for (const std::string& n : names) CHECK(benchmark_case(n).name == n);
  try {
    benchmark_case("annulus");
    FAIL("expected UnknownCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCase);
  }
}

TEST_CASE("every published value carries a tolerance") {
  for (const std::string& n : benchmark_names()) {
    const BenchmarkCase bc = benchmark_case(n);
    CHECK_FALSE(bc.default_m.empty());
    for (const BenchmarkVariant& v : bc.variants)
      for (const Probe& p : v.probes)
        if (!p.expected.empty()) CHECK(p.tolerance > 0.0);
  }
}

TEST_CASE("square rows") {
  const BenchmarkCase bc = benchmark_case("square");
  const auto rows = run_benchmark(bc, {2});
  // per variant: equivalence, two node counts, and the probes
  CHECK(rows.size() == 3 + 2 + 3 + 3);
  const BenchRow* eq = find(rows, "square_ss", 2, "equivalence");
  REQUIRE(eq != nullptr);
  CHECK(eq->status == "PASS");
  const BenchRow* nodes = find(rows, "square_clamped", 2, "mono_nodes");
  REQUIRE(nodes != nullptr);
  CHECK(nodes->value == 9.0);
  CHECK(nodes->status == "PASS");
  const BenchRow* alpha = find(rows, "square_ss", 2, "alpha");
  REQUIRE(alpha != nullptr);
  CHECK(alpha->rl_label == "2x3");
  CHECK(alpha->expected == 0.3950);
  CHECK(alpha->tolerance == 0.0005);
  CHECK((alpha->status == "PASS" || alpha->status == "FAIL"));
  CHECK(alpha->value > 0.0);
  const BenchRow* info = find(rows, "square_clamped", 2, "beta_center");
  REQUIRE(info != nullptr);
  CHECK(info->status == "INFO");
  CHECK(std::isnan(info->expected));
}

TEST_CASE("scales without published values are reported as info") {
  const auto rows = run_benchmark(benchmark_case("skew60"), {3}, {false, 5, false});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "INFO");
  CHECK(all_passed(rows));
}

TEST_CASE("circular variants and the analytical comparison rows") {
  const auto rows = run_benchmark(benchmark_case("circular"), {3, 12}, {false, 5, false});
  const BenchRow* limit = find(rows, "circular_ss", 12, "beta_center_vs_analytical");
  REQUIRE(limit != nullptr);
  CHECK(limit->expected == doctest::Approx(3.3 / 16.0));
  CHECK(limit->tolerance == doctest::Approx(0.02 * 3.3 / 16.0));
  CHECK(find(rows, "circular_ss", 3, "beta_center_vs_analytical") == nullptr);
  const BenchRow* free = find(rows, "circular_free", 3, "alpha_rim");
  REQUIRE(free != nullptr);
  CHECK(free->value > 0.0);
}

TEST_CASE("hard supports change the simply supported rows only") {
  const BenchmarkCase bc = benchmark_case("square");
  const auto soft = run_benchmark(bc, {4}, {false, 5, false});
  const auto hard = run_benchmark(bc, {4}, {true, 5, false});
  CHECK(find(soft, "square_ss", 4, "alpha")->value != find(hard, "square_ss", 4, "alpha")->value);
  CHECK(find(soft, "square_clamped", 4, "alpha")->value == find(hard, "square_clamped", 4, "alpha")->value);
}

TEST_CASE("invalid scales") { CHECK_THROWS_AS(run_benchmark(benchmark_case("square"), {0}), Error); }

TEST_CASE("pass summary") {
  std::vector<BenchRow> rows(2);
  rows[0].status = "PASS";
  rows[1].status = "INFO";
  CHECK(all_passed(rows));
  rows[1].status = "FAIL";
  CHECK_FALSE(all_passed(rows));
}
