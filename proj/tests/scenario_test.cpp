#include <doctest.h>

#include "bogofock/scenario.hpp"
#include "bogofock/serialize.hpp"

using namespace bogofock;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(BOGOFOCK_SOURCE_DIR) + "/scenarios/" + name;
}

Json minimal_doc() {
  Json doc;
  doc["name"] = "minimal";
  doc["modes"] = 1;
  doc["nmax"] = 4;
  doc["map"] = Json{{"expr_u", "delta(j,k)"}};
  doc["checks"] = Json::array({"relations"});
  return doc;
}

const CheckResult* find_check(const Report& report, const std::string& name) {
  for (const auto& check : report.checks)
    if (check.name == name) return &check;
  return nullptr;
}

}  // namespace

TEST_CASE("scenario parsing and validation") {
  SUBCASE("minimal document round trips") {
    const Scenario scenario = parse_scenario(minimal_doc());
    CHECK(scenario.name == "minimal");
    CHECK(scenario.modes == 1);
    CHECK(scenario.checks == std::vector<std::string>{"relations"});
  }
  SUBCASE("invariants") {
    Json doc = minimal_doc();
    doc["modes"] = 0;
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
    doc = minimal_doc();
    doc["nmax"] = 1;
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
    doc = minimal_doc();
    doc["tolerance"] = 0.0;
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("unknown and duplicate checks") {
    Json doc = minimal_doc();
    doc["checks"] = Json::array({"relations", "nonsense"});
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
    doc["checks"] = Json::array({"relations", "relations"});
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("reserved parameter names") {
    Json doc = minimal_doc();
    doc["parameters"] = Json{{"j", 1.0}};
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("map sources are exclusive") {
    Json doc = minimal_doc();
    doc["map"] = Json{{"expr_u", "delta(j,k)"}, {"seed", 3}};
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("matrix shape errors") {
    Json doc = minimal_doc();
    doc["modes"] = 2;
    doc["map"] = Json{{"u", Json::array({1.0, 0.0, 0.0})}};
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("malformed expressions surface as configuration errors") {
    Json doc = minimal_doc();
    doc["map"] = Json{{"expr_u", "2*^3"}};
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("creation lists must reference existing modes") {
    Json doc = minimal_doc();
    doc["probe"] = Json{{"creation_lists", Json::array({Json::array({2})})}};
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioError);
  }
  SUBCASE("complex matrix entries as [re, im] pairs") {
    Json doc = minimal_doc();
    doc["map"] = Json{{"u", Json::array({Json::array({0.0, 1.0})})}};  // u = i
    const Scenario scenario = parse_scenario(doc);
    const BogoliubovMap map = resolve_map(scenario);
    CHECK(map.u.entries(0, 0) == Complex(0.0, 1.0));
    CHECK(bogoliubov_residuals(map).max() < 1e-15);  // i is unitary
  }
  SUBCASE("checks are reordered into dependency order") {
    Json doc = minimal_doc();
    doc["checks"] = Json::array({"vacuum", "relations"});
    const Scenario scenario = parse_scenario(doc);
    CHECK(scenario.checks == std::vector<std::string>{"relations", "vacuum"});
  }
}

TEST_CASE("identity scenario passes everything") {
  const Scenario scenario = load_scenario(scenario_path("identity.json"));
  const Report report = run_scenario(scenario);
  REQUIRE(report.checks.size() == scenario.checks.size());
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.notes);
    CHECK(check.status == "pass");
  }
  const CheckResult* relations = find_check(report, "relations");
  REQUIRE(relations != nullptr);
  for (const auto& [name, value] : relations->residuals)
    if (name != "pair_norm") CHECK(value == 0.0);
  CHECK(report_exit_code(report) == 0);
}

TEST_CASE("squeeze scenario meets the annihilation tolerance") {
  const Scenario scenario = load_scenario(scenario_path("squeeze.json"));
  const Report report = run_scenario(scenario);
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.notes);
    CHECK(check.status == "pass");
  }
  const CheckResult* annihilation = find_check(report, "annihilation");
  REQUIRE(annihilation != nullptr);
  CHECK(annihilation->residuals.at(0).second < 1e-12);
}

TEST_CASE("divergent probe scenario") {
  const Scenario scenario = load_scenario(scenario_path("probe_divergent.json"));
  const Report report = run_scenario(scenario);
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.notes);
    CHECK(check.status == "pass");
  }
  const CheckResult* probe = find_check(report, "ss-probe");
  REQUIRE(probe != nullptr);
  CHECK(probe->notes.find("divergent") != std::string::npos);
}

TEST_CASE("failing relations skip the dependent checks") {
  Json doc = minimal_doc();
  doc["modes"] = 2;
  doc["map"] = Json{{"u", Json::array({1.0, 0.0, 0.0, 1.0})}, {"v", Json::array({1.0, 0.0, 0.0, 1.0})}};
  doc["checks"] = Json::array({"relations", "vacuum", "annihilation"});
  const Report report = run_scenario(parse_scenario(doc));
  CHECK(find_check(report, "relations")->status == "fail");
  CHECK(find_check(report, "vacuum")->status == "skipped");
  CHECK(find_check(report, "annihilation")->status == "skipped");
  CHECK(report_exit_code(report) == 1);
}

TEST_CASE("dependent check fails with a message when relations are not requested") {
  Json doc = minimal_doc();
  doc["modes"] = 2;
  doc["map"] = Json{{"u", Json::array({1.0, 0.0, 0.0, 1.0})}, {"v", Json::array({1.0, 0.0, 0.0, 1.0})}};
  doc["checks"] = Json::array({"vacuum"});
  const Report report = run_scenario(parse_scenario(doc));
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].status == "fail");
  CHECK(report.checks[0].notes.find("residual") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::string name : {"identity.json", "squeeze.json"}) {
    CAPTURE(name);
    const Scenario scenario = load_scenario(scenario_path(name));
    const std::string first = emit(run_scenario(scenario), ReportFormat::json);
    const std::string second = emit(run_scenario(scenario), ReportFormat::json);
    CHECK(first == second);
    CHECK(first.find("\"format_version\"") != std::string::npos);
    CHECK(first.find("wall_time") == std::string::npos);
  }
}

TEST_CASE("table output aligns residuals in scientific notation") {
  const Scenario scenario = load_scenario(scenario_path("squeeze.json"));
  const std::string table = emit(run_scenario(scenario, {"relations"}), ReportFormat::table);
  CHECK(table.find("relations") != std::string::npos);
  CHECK(table.find("e-") != std::string::npos);  // scientific notation
  CHECK(table.find("CHECK") != std::string::npos);
}

TEST_CASE("scenario subset execution") {
  const Scenario scenario = load_scenario(scenario_path("squeeze.json"));
  const Report report = run_scenario(scenario, {"relations"});
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].name == "relations");
}

TEST_CASE("empty report still emits valid json") {
  const Scenario scenario = load_scenario(scenario_path("squeeze.json"));
  const Report report = run_scenario(scenario, {"diagonalize"});  // not requested -> empty
  REQUIRE(report.checks.empty());
  const Json doc = Json::parse(emit(report, ReportFormat::json));
  CHECK(doc.at("checks").is_array());
  CHECK(doc.at("checks").empty());
  CHECK(doc.at("summary").at("pass") == 0);
  CHECK(report_exit_code(report) == 0);
}

TEST_CASE("lossy flags surface in the report") {
  // With an even nmax the transformed vacuum occupies the top sector, so
  // the annihilation and implement checks must drop amplitude and say so.
  Json doc = minimal_doc();
  doc["name"] = "lossy";
  doc["nmax"] = 8;
  doc["parameters"] = Json{{"r", 0.7}};
  doc["map"] = Json{{"expr_u", "delta(j,k)*cosh(r)"}, {"expr_v", "delta(j,k)*sinh(r)"}};
  doc["checks"] = Json::array({"relations", "annihilation", "implement"});
  const Report report = run_scenario(parse_scenario(doc));
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CHECK(check.status == "pass");
    CHECK(check.lossy == (check.name != "relations"));
  }
  // at odd nmax the top vacuum sector is empty and nothing is dropped
  doc["nmax"] = 9;
  const Report odd = run_scenario(parse_scenario(doc), {"annihilation"});
  CHECK_FALSE(odd.checks.at(0).lossy);
}

TEST_CASE("generated-map scenario passes at three modes") {
  const Scenario scenario = load_scenario(scenario_path("generated.json"));
  const Report report = run_scenario(scenario);
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.notes);
    CHECK(check.status == "pass");
  }
}

TEST_CASE("diagonalize scenario meets its tolerance") {
  const Scenario scenario = load_scenario(scenario_path("diagonalize_single_mode.json"));
  const Report report = run_scenario(scenario);
  const CheckResult* diag = find_check(report, "diagonalize");
  REQUIRE(diag != nullptr);
  CAPTURE(diag->notes);
  CHECK(diag->status == "pass");
  CHECK(diag->residuals.at(0).second < 1e-8);
}

TEST_CASE("fock vector serialization round trip") {
  FockVector psi = FockVector::zero(2, 3);
  psi.sector(0)(0) = Complex(0.5, -0.25);
  psi.sector(2)(1) = Complex(0.0, 1.75);
  const FockVector back = fock_from_json(to_json(psi));
  CHECK(back.modes == psi.modes);
  CHECK(back.nmax == psi.nmax);
  CHECK(norm(back - psi) == 0.0);
  CHECK_THROWS_AS(fock_from_json(Json{{"type", "other"}}), std::invalid_argument);
}
