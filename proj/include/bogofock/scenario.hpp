#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogofock/expr.hpp"
#include "bogofock/mode_operator.hpp"
#include "bogofock/quadratic.hpp"

namespace bogofock {

/// Configuration problems (bad schema, unknown check, malformed expression
/// sources); the CLI maps these to exit code 2.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Where the Bogoliubov pair comes from: entry expressions, explicit
/// matrices, or the deterministic generator.
struct MapSource {
  expr::OperatorFamily family;
  std::optional<Matrix> u;
  std::optional<Matrix> v;
  std::optional<std::uint64_t> seed;
  double strength = 0.0;

  bool from_exprs = false;
  bool from_matrices = false;
  bool from_generator = false;
};

struct QuadraticInput {
  std::optional<Matrix> h;
  std::optional<Matrix> k;
  expr::ExprPtr expr_h;
  expr::ExprPtr expr_k;
  PairingSign sign = PairingSign::minus;
};

struct Scenario {
  std::string name;
  int modes = 1;
  int nmax = 2;
  double tolerance = 1e-10;
  std::map<std::string, double> parameters;
  MapSource map;
  std::vector<std::string> checks;
  std::map<std::string, double> check_tolerances;
  std::optional<QuadraticInput> quadratic;
  std::vector<int> probe_sizes{8, 16, 32, 64};
  int probe_degree = 2;
  std::optional<std::string> expect_verdict;
  std::vector<std::vector<int>> creation_lists;
  nlohmann::ordered_json raw;  // echoed into the report
};

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::vector<std::pair<std::string, double>> residuals;
  double wall_time_s = 0.0;
  bool lossy = false;
  std::string notes;
};

struct Report {
  Scenario scenario;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json artifacts;  // optional subcommand payloads
};

enum class ReportFormat { json, table };

/// The fixed dependency order in which requested checks execute.
const std::vector<std::string>& check_order();

Scenario parse_scenario(const nlohmann::ordered_json& doc);
Scenario load_scenario(const std::string& path);

/// Build the scenario's Bogoliubov map from its source description.
BogoliubovMap resolve_map(const Scenario& scenario);

/// Resolve the quadratic spec at the scenario's mode count.
QuadraticSpec resolve_quadratic(const Scenario& scenario);

/// Executes the requested checks in dependency order; failures never throw,
/// they are recorded per check. Pass `only` to restrict to a subset.
Report run_scenario(const Scenario& scenario);
Report run_scenario(const Scenario& scenario, const std::vector<std::string>& only);

/// json output is stable-key-ordered, versioned, and timing-free so that
/// identical runs are byte-identical; the table keeps wall times.
std::string emit(const Report& report, ReportFormat format);

/// 0 when every executed check passed, 1 otherwise.
int report_exit_code(const Report& report);

}  // namespace bogofock
