#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bogofock/scenario.hpp"
#include "bogofock/serialize.hpp"
#include "bogofock/shale.hpp"

namespace {

using namespace bogofock;

struct CommonOptions {
  std::string scenario_path;
  std::string format = "table";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--scenario", opts.scenario_path, "Scenario file (json)")->required();
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", opts.out, "Write the report to this path instead of stdout");
}

int finish(const Report& report, const CommonOptions& opts) {
  const std::string text =
      emit(report, opts.format == "json" ? ReportFormat::json : ReportFormat::table);
  if (opts.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out);
    if (!out) {
      std::cerr << "error: cannot write " << opts.out << "\n";
      return 2;
    }
    out << text;
  }
  return report_exit_code(report);
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

int run_check(const CommonOptions& opts) {
  const Scenario scenario = load_scenario(opts.scenario_path);
  return finish(run_scenario(scenario), opts);
}

int run_vacuum(const CommonOptions& opts) {
  Scenario scenario = load_scenario(opts.scenario_path);
  scenario.checks = {"relations", "vacuum"};
  Report report = run_scenario(scenario);
  try {
    const BogoliubovMap map = resolve_map(scenario);
    report.artifacts = Json{{"vacuum", to_json(bogoliubov_vacuum(map, scenario.nmax, scenario.tolerance))}};
  } catch (const std::exception&) {
    // the failed check already carries the message
  }
  return finish(report, opts);
}

int run_implement(const CommonOptions& opts) {
  Scenario scenario = load_scenario(opts.scenario_path);
  scenario.checks = {"relations", "implement"};
  Report report = run_scenario(scenario);
  try {
    const BogoliubovMap map = resolve_map(scenario);
    const FockVector omega = bogoliubov_vacuum(map, scenario.nmax, scenario.tolerance);
    auto lists = scenario.creation_lists;
    if (lists.empty()) lists = {{1}};
    Json implemented = Json::array();
    for (const auto& indices : lists) {
      std::vector<Vector> word;
      for (int idx : indices) word.push_back(unit_vector(scenario.modes, idx - 1));
      implemented.push_back(
          Json{{"creation_list", indices}, {"state", to_json(implement(map, omega, word))}});
    }
    report.artifacts = Json{{"implemented", implemented}};
  } catch (const std::exception&) {
  }
  return finish(report, opts);
}

int run_diagonalize(const CommonOptions& opts) {
  Scenario scenario = load_scenario(opts.scenario_path);
  scenario.checks = {"diagonalize"};
  Report report = run_scenario(scenario);
  try {
    const QuadraticSpec spec = resolve_quadratic(scenario);
    const DiagonalizationResult result = diagonalize(spec, scenario.nmax);
    report.artifacts = Json{{"diagonalization",
                             Json{{"e", matrix_to_json(result.e)},
                                  {"c", result.c},
                                  {"c_drift", result.c_drift},
                                  {"u", matrix_to_json(result.map.u.entries)},
                                  {"v", matrix_to_json(result.map.v.entries)}}}};
  } catch (const std::exception&) {
  }
  return finish(report, opts);
}

int run_probe(const CommonOptions& opts) {
  Scenario scenario = load_scenario(opts.scenario_path);
  scenario.checks = {"ss-probe"};
  Report report = run_scenario(scenario);
  try {
    if (scenario.map.from_exprs && scenario.map.family.v) {
      const auto family = scenario.map.family;
      const ConvergenceProbe probe = shale_stinespring_probe(
          [&family](int m) { return expr::build_matrix(family.v, family.params, m); },
          scenario.probe_sizes);
      report.artifacts =
          Json{{"probe", Json{{"sizes", probe.sizes},
                              {"partial_traces", probe.partial_traces},
                              {"verdict", to_string(probe.verdict)},
                              {"rate_estimate", probe.rate_estimate}}}};
    }
  } catch (const std::exception&) {
  }
  return finish(report, opts);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("BOGOFOCK_THREADS")) {
    const int n = std::atoi(threads);
    if (n > 0) Eigen::setNbThreads(n);
  }

  CLI::App app{"Truncated bosonic Bogoliubov transformations: scenario checks and reports"};
  app.require_subcommand(1);

  CommonOptions check_opts, vacuum_opts, implement_opts, diagonalize_opts, probe_opts;
  add_common(app.add_subcommand("check", "Run every check requested by the scenario"), check_opts);
  add_common(app.add_subcommand("vacuum", "Build the transformed vacuum and verify its structure"),
             vacuum_opts);
  add_common(app.add_subcommand("implement", "Apply the implementer to creation words"),
             implement_opts);
  add_common(app.add_subcommand("diagonalize", "Diagonalize the scenario's quadratic Hamiltonian"),
             diagonalize_opts);
  add_common(app.add_subcommand("probe", "Run the Shale-Stinespring trace probe"), probe_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("check")) return run_check(check_opts);
    if (app.got_subcommand("vacuum")) return run_vacuum(vacuum_opts);
    if (app.got_subcommand("implement")) return run_implement(implement_opts);
    if (app.got_subcommand("diagonalize")) return run_diagonalize(diagonalize_opts);
    if (app.got_subcommand("probe")) return run_probe(probe_opts);
  } catch (const ScenarioError& error) {
    std::cerr << "configuration error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 2;
}
