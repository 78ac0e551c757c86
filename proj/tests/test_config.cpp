#include <doctest.h>

#include <cmath>
#include <string>

#include "mrplate/config.hpp"
#include "mrplate/error.hpp"

using namespace mrplate;
using nlohmann::json;

namespace {

const std::string kConfigs = MRPLATE_CONFIGS;
const std::string kData = MRPLATE_TEST_DATA;

json minimal() {
  return json::parse(R"({
    "material": {"E": 1.0, "t": 1.0, "nu": 0.3},
    "elements": [{"vertices": [[0, 0], [1, 0], [0, 1]], "m": 2}],
    "loads": {"uniform_q": 1.0},
    "bcs": [{"edge": [[0, 0], [1, 0]], "kind": "clamped"}, {"edge": [[0, 0], [0, 1]], "kind": "clamped"}],
    "probes": [{"x": 0.3, "y": 0.3, "quantity": "deflection"}]
  })");
}

ErrorCode parse_error(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("config accepted");
  return ErrorCode::CollinearVertices;
}

}  // namespace

TEST_CASE("shipped configs parse") {
  for (const char* name : {"square_ss_m4.json", "square_clamped_m4.json", "skew60_m8.json", "circular_clamped_m3.json",
                           "single_element_point_load.json"}) {
    const ProblemConfig cfg = load_config(kConfigs + "/" + name);
    CHECK_FALSE(cfg.model.elements.empty());
  }
  const ProblemConfig sq = load_config(kConfigs + "/square_ss_m4.json");
  CHECK(sq.name == "square_ss");
  CHECK(sq.model.elements.size() == 2);
  CHECK(sq.model.elements[0].m == 4);
  CHECK(sq.model.bcs.size() == 4);
  CHECK(sq.model.bcs[0].kind == SupportKind::SimplySupported);
  CHECK(sq.probes.size() == 3);
  CHECK(sq.probes[1].quantity == Quantity::MomentX);
  CHECK(sq.reference_length == 1.0);
}

TEST_CASE("defaults") {
  const ProblemConfig cfg = parse_config(minimal());
  CHECK(cfg.name == "problem");
  CHECK(cfg.model.quadrature_degree == 5);
  CHECK_FALSE(cfg.model.merge_tolerance.has_value());
  CHECK_FALSE(cfg.reference_length.has_value());
  CHECK(cfg.model.point_loads.empty());
}

TEST_CASE("schema violations") {
  json j = minimal();
  j["extra"] = 1;
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j.erase("material");
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["elements"][0]["m"] = 0;
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["elements"][0]["m"] = 1.5;
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["elements"][0]["vertices"] = json::array({json::array({0, 0}), json::array({1, 0})});
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["bcs"][0]["kind"] = "pinned";
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["probes"][0]["quantity"] = "shear";
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["material"]["E"] = "stiff";
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["solver"] = {{"merge_tolerance", -1.0}};
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  j = minimal();
  j["reference_length"] = 0.0;
  CHECK(parse_error(j) == ErrorCode::InvalidConfig);
  CHECK_THROWS_AS(load_config(kData + "/missing.json"), Error);
  CHECK_THROWS_AS(load_config(kData + "/unknown_key.json"), Error);
}

TEST_CASE("geometry errors surface when solving") {
  const ProblemConfig cfg = load_config(kData + "/collinear.json");
  try {
    solve_config(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CollinearVertices);
  }
}

TEST_CASE("zero loads give zero probe values") {
  const ResultReport r = solve_config(load_config(kData + "/zero_load.json"));
  REQUIRE(r.probes.size() == 3);
  for (const ProbeResult& p : r.probes) {
    CHECK(p.value == 0.0);
    CHECK_FALSE(p.coefficient.has_value());
  }
}

TEST_CASE("report contents") {
  const ResultReport r = solve_config(load_config(kConfigs + "/square_ss_m4.json"));
  CHECK(r.nodes == 25);
  CHECK(r.dofs == 75);
  CHECK(r.free_dofs == 75 - 16);
  CHECK(r.rl_labels == std::vector<std::string>{"3x5", "3x5"});
  CHECK(r.residual <= 1e-10);
  REQUIRE(r.probes[0].coefficient.has_value());
  CHECK(*r.probes[0].coefficient == doctest::Approx(100.0 * r.probes[0].value * (1.0 / (12.0 * 0.91))));
  const std::string table = report_table(r);
  CHECK(table.find("square_ss") != std::string::npos);
  CHECK(table.find("deflection") != std::string::npos);
}

TEST_CASE("reports round-trip losslessly and deterministically") {
  ResultReport r = solve_config(load_config(kConfigs + "/skew60_m8.json"));
  r.equivalence = EquivalenceReport{81, 81, 128, 1.5e-15, 2.5e-14, {}, true};
  const json j = to_json(r);
  const ResultReport back = report_from_json(json::parse(j.dump()));
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.probes[0].value == r.probes[0].value);
  CHECK(back.equivalence->max_K_diff == 1.5e-15);
  const ResultReport again = solve_config(load_config(kConfigs + "/skew60_m8.json"));
  CHECK(to_json(again)["probes"].dump() == j["probes"].dump());
  CHECK_THROWS_AS(report_from_json(json{{"name", "x"}}), Error);
}

TEST_CASE("bench tables") {
  std::vector<BenchRow> rows(2);
  rows[0] = {"square_ss", 2, "2x3", "alpha", 0.51393, 0.395, 0.0005, "FAIL"};
  rows[1] = {"square_ss", 2, "2x3", "multi_nodes", 9.0, std::nan(""), std::nan(""), "INFO"};
  const std::string csv = rows_to_csv(rows);
  CHECK(csv ==
        "case,m,rl_label,quantity,value,expected,tolerance,status\n"
        "square_ss,2,2x3,alpha,0.51393,0.395,0.0005,FAIL\n"
        "square_ss,2,2x3,multi_nodes,9,,,INFO\n");
  const json j = rows_to_json(rows);
  CHECK(j.size() == 2);
  CHECK(j[0]["value"].get<double>() == 0.51393);
  CHECK(j[1]["expected"].is_null());
}

TEST_CASE("support and quantity names") {
  CHECK(support_kind_from_string("symmetry") == SupportKind::Symmetry);
  CHECK(quantity_from_string("moment_xy") == Quantity::MomentXY);
  CHECK_THROWS_AS(support_kind_from_string("roller"), Error);
}
