#include "bogofock/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "bogofock/extended.hpp"
#include "bogofock/shale.hpp"

namespace bogofock {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string>& known_checks() {
  static const std::set<std::string> names = {"relations", "ccr",        "ext-ccr", "vacuum",
                                              "annihilation", "implement", "injectivity",
                                              "ss-probe",  "diagonalize"};
  return names;
}

Matrix parse_matrix(const Json& data, int modes, const std::string& what) {
  if (!data.is_array() || static_cast<int>(data.size()) != modes * modes)
    throw ScenarioError(what + ": expected a row-major array of length modes^2");
  Matrix out(modes, modes);
  for (int j = 0; j < modes; ++j)
    for (int k = 0; k < modes; ++k) {
      const Json& cell = data.at(static_cast<std::size_t>(j * modes + k));
      if (cell.is_number()) {
        out(j, k) = Complex(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2) {
        out(j, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      } else {
        throw ScenarioError(what + ": entries must be numbers or [re, im] pairs");
      }
    }
  return out;
}

expr::ExprPtr parse_expr_field(const Json& doc, const char* key) {
  if (!doc.contains(key)) return nullptr;
  try {
    return expr::parse(doc.at(key).get<std::string>());
  } catch (const expr::ParseError& error) {
    throw ScenarioError(std::string(key) + ": " + error.what());
  }
}

/// Deterministic dense probe vector; no RNG so reports stay byte-stable.
Vector dense_probe(int modes, int variant) {
  Vector out(modes);
  for (int j = 0; j < modes; ++j)
    out(j) = Complex(0.3 + 0.11 * j + 0.07 * variant, 0.15 - 0.05 * j + 0.02 * variant);
  return out;
}

std::vector<std::vector<int>> index_words(int modes, int max_degree) {
  std::vector<std::vector<int>> words;
  for (int degree = 0; degree <= max_degree; ++degree) {
    const auto& basis = OccupationBasis::get(modes, degree);
    for (Eigen::Index r = 0; r < basis.size(); ++r) {
      std::vector<int> word;
      const auto& occ = basis.state(r);
      for (int j = 0; j < modes; ++j)
        for (int rep = 0; rep < occ[static_cast<std::size_t>(j)]; ++rep) word.push_back(j + 1);
      words.push_back(std::move(word));
    }
  }
  return words;
}

struct CheckContext {
  const Scenario& scenario;
  std::optional<BogoliubovMap> map;
  std::optional<FockVector> omega;
  bool relations_failed = false;

  const BogoliubovMap& require_map() {
    if (!map) map = resolve_map(scenario);
    return *map;
  }

  const FockVector& require_vacuum() {
    if (!omega) omega = bogoliubov_vacuum(require_map(), scenario.nmax, scenario.tolerance);
    return *omega;
  }

  double bar(const std::string& name) const {
    auto it = scenario.check_tolerances.find(name);
    if (it != scenario.check_tolerances.end()) return it->second;
    if (name == "ccr" || name == "ext-ccr") return std::min(scenario.tolerance, 1e-12);
    return scenario.tolerance;
  }
};

void push(CheckResult& result, const std::string& name, double value) {
  result.residuals.emplace_back(name, value);
}

void check_relations(CheckContext& ctx, CheckResult& result) {
  const BogoliubovMap& map = ctx.require_map();
  const RelationResiduals residuals = bogoliubov_residuals(map);
  push(result, "in_metric", residuals.in_metric);
  push(result, "in_pairing", residuals.in_pairing);
  push(result, "out_metric", residuals.out_metric);
  push(result, "out_pairing", residuals.out_pairing);
  const double tol = ctx.bar("relations");
  if (residuals.max() > tol) {
    ctx.relations_failed = true;
    result.status = "fail";
    result.notes = "Bogoliubov relations violated";
    return;
  }
  const PairOperator pair = pair_operator(map, tol);
  const Matrix spectral = pair_operator_spectral(map, tol);
  const double dual_path = (pair.kernel - spectral).cwiseAbs().maxCoeff();
  const double symmetry = (pair.kernel - pair.kernel.transpose()).cwiseAbs().maxCoeff();
  const double pair_norm = operator_norm(pair.op);
  const double pair_identity = pair_relation_residual(map, pair.op);
  push(result, "pair_kernel_symmetry", symmetry);
  push(result, "pair_dual_path", dual_path);
  push(result, "pair_identity", pair_identity);
  push(result, "pair_norm", pair_norm);
  const bool pass = symmetry <= tol && dual_path <= 10.0 * tol && pair_identity <= tol && pair_norm < 0.5;
  result.status = pass ? "pass" : "fail";
  if (!pass) result.notes = "pair operator invariants violated";
}

void check_ccr(CheckContext& ctx, CheckResult& result) {
  const int modes = ctx.scenario.modes;
  const int nmax = ctx.scenario.nmax;
  std::vector<FockVector> probes;
  int probe_budget = 200;
  for (int n = 0; n <= std::min(3, nmax - 2) && probe_budget > 0; ++n) {
    const auto& basis = OccupationBasis::get(modes, n);
    for (Eigen::Index r = 0; r < basis.size() && probe_budget > 0; ++r, --probe_budget)
      probes.push_back(basis_state(basis.state(r), nmax));
  }
  double residual = 0.0;
  bool lossy = false;
  for (int j = 0; j < modes; ++j)
    for (int k = 0; k < modes; ++k)
      residual = std::max(residual, ccr_residual(unit_vector(modes, j), unit_vector(modes, k), probes));
  residual = std::max(residual, ccr_residual(dense_probe(modes, 0), dense_probe(modes, 1), probes));
  for (const auto& p : probes) lossy = lossy || p.lossy;
  result.lossy = lossy;
  push(result, "ccr", residual);
  result.status = residual <= ctx.bar("ccr") ? "pass" : "fail";
}

void check_ext_ccr(CheckContext& ctx, CheckResult& result) {
  const int modes = ctx.scenario.modes;
  const int bound = std::min(ctx.scenario.nmax, 3);
  std::vector<ExtendedVector> probes;
  probes.push_back(embed_fock(vacuum(modes, bound)));
  if (bound >= 2) {
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    occ[0] = 1;
    probes.push_back(embed_fock(basis_state(occ, bound)));
  }
  if (bound >= 3) {
    // A genuinely raw entry with one particle slot and one trailing slot.
    ExtendedVector raw = ExtendedVector::zero(modes, bound);
    Vector values(pointwise_size(modes, 2));
    for (Eigen::Index i = 0; i < values.size(); ++i)
      values(i) = Complex(0.2 + 0.03 * double(i), -0.1 + 0.02 * double(i));
    raw.entries.emplace(std::make_pair(1, 1), ExtendedVector::Entry{values, true});
    probes.push_back(raw);
  }
  double residual = 0.0;
  for (const auto& probe : probes) {
    for (int j = 0; j < modes; ++j)
      for (int k = 0; k < modes; ++k)
        residual = std::max(
            residual, ext_commutator_check(unit_vector(modes, j), unit_vector(modes, k), probe));
    residual = std::max(residual, ext_commutator_check(dense_probe(modes, 0), dense_probe(modes, 1), probe));
  }
  push(result, "ext_ccr", residual);
  result.status = residual <= ctx.bar("ext-ccr") ? "pass" : "fail";
}

void check_vacuum(CheckContext& ctx, CheckResult& result) {
  const BogoliubovMap& map = ctx.require_map();
  const FockVector& omega = ctx.require_vacuum();
  const int nmax = ctx.scenario.nmax;
  double odd_norm = 0.0;
  for (int n = 1; n <= nmax; n += 2) odd_norm = std::max(odd_norm, omega.sector(n).norm());
  push(result, "odd_sectors", odd_norm);
  const PairOperator pair = pair_operator(map, ctx.bar("relations"));
  double sector2 = 0.0;
  if (nmax >= 2) {
    PointwiseSector two;
    two.modes = omega.modes;
    two.particles = 2;
    two.values = std::sqrt(2.0) * Vector(pair.kernel.transpose().reshaped());
    sector2 = (omega.sector(2) - from_pointwise(two, nmax).sector(2)).norm();
  }
  push(result, "sector2_direct", sector2);
  double sector4 = 0.0;
  if (nmax >= 4 && pointwise_size(omega.modes, 4) <= kPointwiseCap) {
    PointwiseSector four;
    four.modes = omega.modes;
    four.particles = 4;
    four.values = Vector::Zero(pointwise_size(omega.modes, 4));
    const int m = omega.modes;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d)
            four.values(((Eigen::Index(a) * m + b) * m + c) * m + d) =
                pair.kernel(a, b) * pair.kernel(c, d);
    four.values *= std::sqrt(24.0) / 2.0;  // sqrt(4!)/2!
    sector4 = (omega.sector(4) - from_pointwise(four, nmax).sector(4)).norm();
  }
  push(result, "sector4_direct", sector4);
  const double bar = ctx.bar("vacuum");
  result.status = (odd_norm <= bar && sector2 <= bar && sector4 <= bar) ? "pass" : "fail";
}

void check_annihilation(CheckContext& ctx, CheckResult& result) {
  const BogoliubovMap& map = ctx.require_map();
  const FockVector& omega = ctx.require_vacuum();
  double residual = 0.0;
  for (int j = 0; j < ctx.scenario.modes; ++j) {
    const Vector phi = unit_vector(ctx.scenario.modes, j);
    for (const auto& [sector, value] : vacuum_annihilation_residuals(map, omega, phi))
      residual = std::max(residual, value);
    result.lossy = result.lossy || quasi_annihilate(map, phi, omega).lossy;
  }
  push(result, "annihilation", residual);
  result.status = residual <= ctx.bar("annihilation") ? "pass" : "fail";
}

void check_implement(CheckContext& ctx, CheckResult& result) {
  const BogoliubovMap& map = ctx.require_map();
  const int modes = ctx.scenario.modes;
  const int nmax = ctx.scenario.nmax;
  const int max_degree = std::min(ctx.scenario.probe_degree, nmax - 3);
  if (max_degree < 0) throw std::invalid_argument("implement: nmax too small for the probe degrees");
  std::vector<std::vector<Vector>> family;
  for (int degree = 0; degree <= max_degree; ++degree)
    for (auto& word : occupation_words(modes, degree)) family.push_back(std::move(word));
  std::vector<Vector> phis;
  for (int j = 0; j < modes; ++j) phis.push_back(unit_vector(modes, j));
  phis.push_back(dense_probe(modes, 2));
  const double residual = intertwining_residual(map, family, phis, nmax);
  // representative loss probe: the deepest word the residual loop touches
  const std::vector<Vector> deepest(static_cast<std::size_t>(max_degree) + 1, unit_vector(modes, 0));
  result.lossy = implement(map, ctx.require_vacuum(), deepest).lossy;
  push(result, "intertwining", residual);
  result.status = residual <= ctx.bar("implement") ? "pass" : "fail";
}

void check_injectivity(CheckContext& ctx, CheckResult& result) {
  const BogoliubovMap& map = ctx.require_map();
  const DressedModes modes = dressed_modes(map, ctx.bar("relations"));
  push(result, "sigma_min", modes.sigma_min);
  push(result, "contraction_norm", modes.contraction_norm);
  push(result, "dressed_dual_path", modes.dual_path_gap);
  bool pass = modes.sigma_min > 0.0 && modes.contraction_norm < 1.0 &&
              modes.dual_path_gap <= 10.0 * ctx.bar("relations");
  const FockVector& omega = ctx.require_vacuum();
  const int max_degree = std::max(1, std::min(ctx.scenario.probe_degree, ctx.scenario.nmax - 2));
  for (int degree = 1; degree <= max_degree; ++degree) {
    const GramWitness witness = implemented_gram(map, omega, degree, ctx.scenario.nmax);
    push(result, "gram_cond_degree_" + std::to_string(degree), witness.cond);
    pass = pass && std::isfinite(witness.cond) && witness.cond < 1e12;
  }
  result.status = pass ? "pass" : "fail";
}

void check_ss_probe(CheckContext& ctx, CheckResult& result) {
  const Scenario& scenario = ctx.scenario;
  if (!scenario.map.from_exprs || !scenario.map.family.v)
    throw std::invalid_argument("ss-probe requires an expression family for v");
  const auto family = scenario.map.family;
  const ConvergenceProbe probe = shale_stinespring_probe(
      [&family](int m) { return expr::build_matrix(family.v, family.params, m); },
      scenario.probe_sizes);
  push(result, "partial_trace_final", probe.partial_traces.back());
  push(result, "rate_estimate", probe.rate_estimate);
  result.notes = std::string("verdict=") + to_string(probe.verdict);
  if (scenario.expect_verdict) {
    result.status = *scenario.expect_verdict == to_string(probe.verdict) ? "pass" : "fail";
    if (result.status == "fail")
      result.notes += " expected=" + *scenario.expect_verdict;
  } else {
    result.status = "pass";  // diagnostic only
  }
}

void check_diagonalize(CheckContext& ctx, CheckResult& result) {
  const Scenario& scenario = ctx.scenario;
  const QuadraticSpec spec = resolve_quadratic(scenario);
  const DiagonalizationResult diag = diagonalize(spec, scenario.nmax);
  const double map_residual = bogoliubov_residuals(diag.map).max();
  const double hermiticity = (diag.e - diag.e.adjoint()).cwiseAbs().maxCoeff();
  const int max_degree = std::max(0, std::min(scenario.probe_degree, scenario.nmax - 4));
  const double conjugation = conjugation_check(spec, diag, index_words(scenario.modes, max_degree), scenario.nmax);
  result.lossy = spec.k.cwiseAbs().maxCoeff() > 0.0;  // pair couplings leave the truncation
  push(result, "conjugation", conjugation);
  push(result, "map_residual", map_residual);
  push(result, "e_hermiticity", hermiticity);
  push(result, "c_drift", diag.c_drift);
  char note[128];
  std::snprintf(note, sizeof(note), "c=%.12g gate_margin=%.6g", diag.c, gate_margin(spec));
  result.notes = note;
  result.status = (conjugation <= ctx.bar("diagonalize") && map_residual <= ctx.bar("relations"))
                      ? "pass"
                      : "fail";
}

using CheckFunction = void (*)(CheckContext&, CheckResult&);

const std::vector<std::pair<std::string, CheckFunction>>& check_table() {
  static const std::vector<std::pair<std::string, CheckFunction>> table = {
      {"relations", check_relations}, {"ccr", check_ccr},
      {"ext-ccr", check_ext_ccr},     {"vacuum", check_vacuum},
      {"annihilation", check_annihilation}, {"implement", check_implement},
      {"injectivity", check_injectivity},   {"ss-probe", check_ss_probe},
      {"diagonalize", check_diagonalize}};
  return table;
}

bool depends_on_relations(const std::string& name) {
  return name == "vacuum" || name == "annihilation" || name == "implement" || name == "injectivity";
}

}  // namespace

const std::vector<std::string>& check_order() {
  static const std::vector<std::string> order = [] {
    std::vector<std::string> names;
    for (const auto& [name, fn] : check_table()) names.push_back(name);
    return names;
  }();
  return order;
}

Scenario parse_scenario(const Json& doc) {
  Scenario scenario;
  scenario.raw = doc;
  if (doc.value("format_version", kFormatVersion) != kFormatVersion)
    throw ScenarioError("unsupported scenario format_version");
  scenario.name = doc.value("name", "unnamed");
  scenario.modes = doc.value("modes", 1);
  scenario.nmax = doc.value("nmax", 2);
  scenario.tolerance = doc.value("tolerance", 1e-10);
  if (scenario.modes < 1) throw ScenarioError("modes must be >= 1");
  if (scenario.nmax < 2) throw ScenarioError("nmax must be >= 2");
  if (!(scenario.tolerance > 0.0)) throw ScenarioError("tolerance must be > 0");

  if (doc.contains("parameters")) {
    for (const auto& [key, value] : doc.at("parameters").items()) {
      if (key == "i" || key == "j" || key == "k")
        throw ScenarioError("parameter name '" + key + "' collides with a builtin");
      if (!value.is_number()) throw ScenarioError("parameters must be real numbers");
      scenario.parameters[key] = value.get<double>();
    }
  }

  const Json map_doc = doc.contains("map") ? doc.at("map") : Json::object();
  MapSource& source = scenario.map;
  source.family.params = scenario.parameters;
  source.family.u = parse_expr_field(map_doc, "expr_u");
  source.family.v = parse_expr_field(map_doc, "expr_v");
  source.family.auto_u = map_doc.value("auto_u", false);
  const bool has_exprs = source.family.u || source.family.v || source.family.auto_u;
  const bool has_matrices = map_doc.contains("u") || map_doc.contains("v");
  const bool has_generator = map_doc.contains("seed");
  if (int(has_exprs) + int(has_matrices) + int(has_generator) > 1)
    throw ScenarioError("map: give expressions, matrices, or a generator seed, not a mixture");
  if (has_matrices) {
    source.from_matrices = true;
    if (map_doc.contains("u")) source.u = parse_matrix(map_doc.at("u"), scenario.modes, "map.u");
    if (map_doc.contains("v")) source.v = parse_matrix(map_doc.at("v"), scenario.modes, "map.v");
  } else if (has_generator) {
    source.from_generator = true;
    source.seed = map_doc.at("seed").get<std::uint64_t>();
    source.strength = map_doc.value("strength", 0.5);
  } else {
    source.from_exprs = true;  // possibly the empty family, i.e. the identity map
  }

  if (!doc.contains("checks") || !doc.at("checks").is_array() || doc.at("checks").empty())
    throw ScenarioError("checks: a non-empty list is required");
  std::set<std::string> seen;
  for (const auto& name : doc.at("checks")) {
    const std::string check = name.get<std::string>();
    if (!known_checks().count(check)) throw ScenarioError("unknown check '" + check + "'");
    if (!seen.insert(check).second) throw ScenarioError("duplicate check '" + check + "'");
  }
  // Execute in canonical dependency order regardless of listing order.
  for (const auto& name : check_order())
    if (seen.count(name)) scenario.checks.push_back(name);

  if (doc.contains("tolerances")) {
    for (const auto& [key, value] : doc.at("tolerances").items()) {
      if (!known_checks().count(key)) throw ScenarioError("tolerances: unknown check '" + key + "'");
      scenario.check_tolerances[key] = value.get<double>();
    }
  }

  if (doc.contains("quadratic")) {
    const Json& quad = doc.at("quadratic");
    QuadraticInput input;
    if (quad.contains("h")) input.h = parse_matrix(quad.at("h"), scenario.modes, "quadratic.h");
    if (quad.contains("k")) input.k = parse_matrix(quad.at("k"), scenario.modes, "quadratic.k");
    input.expr_h = parse_expr_field(quad, "expr_h");
    input.expr_k = parse_expr_field(quad, "expr_k");
    const std::string sign = quad.value("pair_sign", "minus");
    if (sign != "minus" && sign != "plus") throw ScenarioError("quadratic.pair_sign must be minus or plus");
    input.sign = sign == "minus" ? PairingSign::minus : PairingSign::plus;
    scenario.quadratic = std::move(input);
  }

  if (doc.contains("probe")) {
    const Json& probe = doc.at("probe");
    if (probe.contains("sizes")) {
      scenario.probe_sizes = probe.at("sizes").get<std::vector<int>>();
      if (scenario.probe_sizes.empty()) throw ScenarioError("probe.sizes must be non-empty");
      for (std::size_t i = 1; i < scenario.probe_sizes.size(); ++i)
        if (scenario.probe_sizes[i] <= scenario.probe_sizes[i - 1])
          throw ScenarioError("probe.sizes must be strictly ascending");
    }
    scenario.probe_degree = probe.value("degree", 2);
    if (scenario.probe_degree < 0) throw ScenarioError("probe.degree must be >= 0");
    if (probe.contains("expect_verdict")) {
      const std::string verdict = probe.at("expect_verdict").get<std::string>();
      if (verdict != "convergent" && verdict != "divergent" && verdict != "inconclusive")
        throw ScenarioError("probe.expect_verdict must be convergent, divergent, or inconclusive");
      scenario.expect_verdict = verdict;
    }
    if (probe.contains("creation_lists")) {
      scenario.creation_lists = probe.at("creation_lists").get<std::vector<std::vector<int>>>();
      for (const auto& list : scenario.creation_lists)
        for (int idx : list)
          if (idx < 1 || idx > scenario.modes)
            throw ScenarioError("probe.creation_lists: mode index out of range");
    }
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw ScenarioError("cannot open scenario file: " + path);
  Json doc;
  try {
    doc = Json::parse(input);
  } catch (const std::exception& error) {
    throw ScenarioError("scenario file is not valid json: " + std::string(error.what()));
  }
  return parse_scenario(doc);
}

BogoliubovMap resolve_map(const Scenario& scenario) {
  const MapSource& source = scenario.map;
  if (source.from_matrices) {
    const Matrix u = source.u ? *source.u : Matrix(Matrix::Identity(scenario.modes, scenario.modes));
    const Matrix v = source.v ? *source.v : Matrix(Matrix::Zero(scenario.modes, scenario.modes));
    return make_map(u, v);
  }
  if (source.from_generator) return generate_bogoliubov(scenario.modes, *source.seed, source.strength);
  return expr::build_operator(source.family, scenario.modes);
}

QuadraticSpec resolve_quadratic(const Scenario& scenario) {
  if (!scenario.quadratic) throw std::invalid_argument("diagonalize requires a quadratic block");
  const QuadraticInput& input = *scenario.quadratic;
  QuadraticSpec spec;
  spec.sign = input.sign;
  if (input.h)
    spec.h = *input.h;
  else if (input.expr_h)
    spec.h = expr::build_matrix(input.expr_h, scenario.parameters, scenario.modes);
  else
    throw std::invalid_argument("quadratic: h (matrix or expression) is required");
  if (input.k)
    spec.k = *input.k;
  else if (input.expr_k)
    spec.k = expr::build_matrix(input.expr_k, scenario.parameters, scenario.modes);
  else
    spec.k = Matrix::Zero(scenario.modes, scenario.modes);
  return spec;
}

Report run_scenario(const Scenario& scenario) { return run_scenario(scenario, {}); }

Report run_scenario(const Scenario& scenario, const std::vector<std::string>& only) {
  Report report;
  report.scenario = scenario;
  CheckContext ctx{scenario};
  const bool relations_requested =
      std::find(scenario.checks.begin(), scenario.checks.end(), "relations") != scenario.checks.end();
  for (const auto& [name, fn] : check_table()) {
    if (std::find(scenario.checks.begin(), scenario.checks.end(), name) == scenario.checks.end()) continue;
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    CheckResult result;
    result.name = name;
    if (relations_requested && ctx.relations_failed && depends_on_relations(name)) {
      result.status = "skipped";
      result.notes = "prerequisite failed: relations";
      report.checks.push_back(std::move(result));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(ctx, result);
    } catch (const std::exception& error) {
      result.status = "fail";
      result.notes = error.what();
    }
    result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(result));
  }
  return report;
}

std::string emit(const Report& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["tool_version"] = kToolVersion;
    doc["scenario"] = report.scenario.raw.is_null() ? Json::object() : report.scenario.raw;
    Json checks = Json::array();
    int pass = 0, fail = 0, skipped = 0;
    for (const auto& check : report.checks) {
      Json residuals = Json::array();
      for (const auto& [name, value] : check.residuals)
        residuals.push_back(Json{{"name", name}, {"value", value}});
      // Wall times are intentionally omitted so identical runs emit
      // byte-identical reports.
      checks.push_back(Json{{"name", check.name},
                            {"status", check.status},
                            {"residuals", residuals},
                            {"lossy", check.lossy},
                            {"notes", check.notes}});
      if (check.status == "pass") ++pass;
      else if (check.status == "fail") ++fail;
      else ++skipped;
    }
    doc["checks"] = checks;
    doc["summary"] = Json{{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    if (!report.artifacts.is_null()) doc["artifacts"] = report.artifacts;
    return doc.dump(2) + "\n";
  }

  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "scenario %s  (modes=%d nmax=%d tolerance=%.3e)\n",
                report.scenario.name.c_str(), report.scenario.modes, report.scenario.nmax,
                report.scenario.tolerance);
  out += line;
  std::snprintf(line, sizeof(line), "%-14s %-8s %10s  %-6s %s\n", "CHECK", "STATUS", "TIME[s]",
                "LOSSY", "NOTES");
  out += line;
  for (const auto& check : report.checks) {
    std::snprintf(line, sizeof(line), "%-14s %-8s %10.3f  %-6s %s\n", check.name.c_str(),
                  check.status.c_str(), check.wall_time_s, check.lossy ? "yes" : "no",
                  check.notes.c_str());
    out += line;
    for (const auto& [name, value] : check.residuals) {
      std::snprintf(line, sizeof(line), "    %-28s %14.6e\n", name.c_str(), value);
      out += line;
    }
  }
  return out;
}

int report_exit_code(const Report& report) {
  for (const auto& check : report.checks)
    if (check.status != "pass") return 1;
  return 0;
}

}  // namespace bogofock
