#include "symdiff/scenarios.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "symdiff/plurigenera.hpp"
#include "symdiff/secant.hpp"
#include "symdiff/sections.hpp"

namespace symdiff {

namespace {

using nlohmann::json;

const std::set<std::string>& operations() {
  static const std::set<std::string> ops = {"dimension", "trisecant",  "zak",
                                            "envelope",  "plurigenera", "prop18",
                                            "trisecant-equality"};
  return ops;
}

std::set<std::string> allowed_expectations(const std::string& op) {
  if (op == "dimension" || op == "envelope") return {"exact", "bound", "none"};
  if (op == "trisecant") return {"fixpoint", "coverage", "none"};
  if (op == "zak" || op == "prop18" || op == "plurigenera" || op == "trisecant-equality") return {"exact", "none"};
  return {};
}

VarietyModel resolve_model(const Scenario& s) {
  if (s.model.rfind("builtin:", 0) == 0) return load_model(s.model);
  std::filesystem::path p(s.model);
  if (p.is_relative()) p = s.base_dir / p;
  return load_model(p);
}

std::uint32_t prime_param(const json& params) {
  const auto p = params.at("prime").get<std::uint64_t>();
  Field::prime(p);
  return static_cast<std::uint32_t>(p);
}

std::uint64_t budget_param(const json& params) { return params.value("budget", std::uint64_t{2'000'000}); }

Outcome check_number(const json& expect, long long value, std::string& detail) {
  const std::string type = expect.at("type");
  if (type == "none") {
    detail = "recorded " + json(value).dump();
    return Outcome::pass;
  }
  if (type == "exact") {
    const double want = expect.at("value").get<double>();
    detail = "expected " + expect.at("value").dump() + ", got " + json(value).dump();
    return static_cast<double>(value) == want ? Outcome::pass : Outcome::fail;
  }
  // bound
  bool ok = true;
  detail.clear();
  if (expect.contains("min")) {
    ok = ok && static_cast<double>(value) >= expect.at("min").get<double>();
    detail += "min " + expect.at("min").dump() + " ";
  }
  if (expect.contains("max")) {
    ok = ok && static_cast<double>(value) <= expect.at("max").get<double>();
    detail += "max " + expect.at("max").dump() + " ";
  }
  detail += "got " + json(value).dump();
  return ok ? Outcome::pass : Outcome::fail;
}

ScenarioReport run_dimension(const Scenario& s, ScenarioReport rep) {
  const VarietyModel m = resolve_model(s);
  EstimateConfig cfg;
  const json& p = s.params;
  if (p.contains("primes")) cfg.primes = p.at("primes").get<std::vector<std::uint64_t>>();
  cfg.seed = p.value("seed", cfg.seed);
  cfg.nprimes = p.value("nprimes", cfg.nprimes);
  cfg.batch_size = p.value("batch_size", cfg.batch_size);
  cfg.window = p.value("window", cfg.window);
  cfg.max_batches = p.value("max_batches", cfg.max_batches);
  const DimensionReport d = estimate_dimension(m, p.at("m").get<int>(), p.at("k").get<int>(), cfg);
  rep.result = d.to_json();
  if (!d.dimension) {
    rep.outcome = Outcome::indeterminate;
    rep.detail = "kernel dimensions did not stabilize or primes disagree";
    return rep;
  }
  rep.outcome = check_number(s.expectation, static_cast<long long>(*d.dimension), rep.detail);
  return rep;
}

ScenarioReport run_trisecant(const Scenario& s, ScenarioReport rep) {
  const VarietyModel m = resolve_model(s);
  const std::uint32_t p = prime_param(s.params);
  const int kmax = s.params.value("kmax", 1);
  const double threshold = s.params.value("threshold", s.expectation.value("threshold", 0.95));
  const auto states = iterate_cone_variety(m, p, kmax, budget_param(s.params));
  rep.result = cone_iteration_json(m, p, states, threshold);
  const std::string type = s.expectation.at("type");
  if (type == "fixpoint") {
    const int k = s.expectation.value("k", 1);
    const bool ok = static_cast<int>(states.size()) > k && states[k].set == states[k - 1].set;
    rep.outcome = ok ? Outcome::pass : Outcome::fail;
    rep.detail = ok ? "S_" + std::to_string(k) + " = S_" + std::to_string(k - 1)
                    : "S_" + std::to_string(k) + " differs from S_" + std::to_string(k - 1);
  } else if (type == "coverage") {
    const int k = s.expectation.value("k", 1);
    if (static_cast<int>(states.size()) <= k) {
      rep.outcome = Outcome::fail;
      rep.detail = "iteration stopped before k = " + std::to_string(k);
      return rep;
    }
    // a fixpoint before k leaves S_k = last state
    const double cov = states[std::min<std::size_t>(k, states.size() - 1)].coverage;
    rep.outcome = cov >= threshold ? Outcome::pass : Outcome::fail;
    rep.detail = "coverage of S_" + std::to_string(k) + " = " + json(cov).dump() + ", threshold " + json(threshold).dump();
  } else {
    rep.outcome = Outcome::pass;
    rep.detail = "final coverage " + json(states.back().coverage).dump();
  }
  return rep;
}

ScenarioReport run_zak(const Scenario& s, ScenarioReport rep) {
  const VarietyModel m = resolve_model(s);
  const ZakReport z = zak_check(m, prime_param(s.params), s.params.value("trials", 200),
                                s.params.value("seed", std::uint64_t{1}), budget_param(s.params));
  rep.result = z.to_json();
  const std::string scope = s.params.value("scope", std::string("extension"));
  const int failures = scope == "rational" ? z.rational_failures : z.extension_failures;
  if (failures < 0) {
    rep.outcome = Outcome::indeterminate;
    rep.detail = "no F_{p^2} tangent data for this model";
    return rep;
  }
  rep.outcome = check_number(s.expectation, failures, rep.detail);
  rep.detail = scope + " failures: " + rep.detail;
  return rep;
}

ScenarioReport run_envelope(const Scenario& s, ScenarioReport rep) {
  const VarietyModel m = resolve_model(s);
  const std::uint32_t p = prime_param(s.params);
  const SubspaceBasis env = quadric_envelope(m, p, budget_param(s.params));
  const auto monos = quadric_monomials(m.ambient);
  json quadrics = json::array();
  const Field F = Field::prime(p);
  for (const auto& v : env.vectors) {
    MultiPoly q(F, m.ambient + 1);
    for (std::size_t c = 0; c < monos.size(); ++c) q.add_term(monos[c], v[c]);
    quadrics.push_back(q.to_string());
  }
  rep.result = {{"model", m.name}, {"prime", p}, {"dimension", env.dimension()}, {"quadrics", quadrics}};
  rep.outcome = check_number(s.expectation, static_cast<long long>(env.dimension()), rep.detail);
  return rep;
}

ScenarioReport run_plurigenera(const Scenario& s, ScenarioReport rep) {
  const JumpTable t = jump_table(s.params.at("mmax").get<int>());
  rep.result = t.to_json();
  const std::string type = s.expectation.at("type");
  if (type == "none") {
    rep.outcome = Outcome::pass;
    rep.detail = "recorded";
    return rep;
  }
  std::vector<std::int64_t> diffs;
  for (const auto& r : t.rows) diffs.push_back(r.difference);
  const auto want = s.expectation.at("value").get<std::vector<std::int64_t>>();
  rep.outcome = diffs == want ? Outcome::pass : Outcome::fail;
  rep.detail = "differences " + json(diffs).dump() + ", expected " + json(want).dump();
  return rep;
}

ScenarioReport run_prop18(const Scenario& s, ScenarioReport rep) {
  const VarietyModel m = resolve_model(s);
  const Prop18Report r = prop18_check(m, prime_param(s.params), s.params.value("kmax", 3), budget_param(s.params));
  rep.result = r.to_json();
  rep.outcome = check_number(s.expectation, static_cast<long long>(r.violations), rep.detail);
  rep.detail = "violations: " + rep.detail;
  return rep;
}

ScenarioReport run_trisecant_equality(const Scenario& s, ScenarioReport rep) {
  const VarietyModel m = resolve_model(s);
  const TrisecantEqualityReport r = trisecant_equality(m, prime_param(s.params), budget_param(s.params));
  rep.result = r.to_json();
  if (s.expectation.at("type") == "none") {
    rep.outcome = Outcome::pass;
    rep.detail = r.equal ? "sets equal" : "sets differ";
  } else {
    const bool want = s.expectation.at("value").get<bool>();
    rep.outcome = r.equal == want ? Outcome::pass : Outcome::fail;
    rep.detail = "|C_X X| = " + std::to_string(r.cone_size) + ", |Tr X| = " + std::to_string(r.trisecant_size);
  }
  return rep;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::indeterminate: return "indeterminate";
  }
  return "?";
}

void Scenario::validate() const {
  if (name.empty()) throw std::invalid_argument("scenario without a name");
  if (!operations().count(operation)) throw std::invalid_argument("scenario " + name + ": unknown operation " + operation);
  if (operation != "plurigenera" && model.empty()) throw std::invalid_argument("scenario " + name + ": no model");
  if (!expectation.is_object() || !expectation.contains("type"))
    throw std::invalid_argument("scenario " + name + ": expectation needs a type");
  const std::string type = expectation.at("type");
  if (!allowed_expectations(operation).count(type))
    throw std::invalid_argument("scenario " + name + ": expectation '" + type + "' does not fit operation " + operation);
  if (type == "exact" && !expectation.contains("value"))
    throw std::invalid_argument("scenario " + name + ": exact expectation without value");
  if (type == "bound" && !expectation.contains("min") && !expectation.contains("max"))
    throw std::invalid_argument("scenario " + name + ": bound expectation needs min or max");
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.model = j.value("model", std::string());
  s.operation = j.at("operation").get<std::string>();
  if (j.contains("params")) s.params = j.at("params");
  if (j.contains("expectation")) s.expectation = j.at("expectation");
  s.base_dir = base_dir;
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open scenario " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario " + file.string() + ": " + e.what());
  }
  return scenario_from_json(j, file.parent_path());
}

ScenarioReport run_scenario(const Scenario& s) {
  s.validate();
  ScenarioReport rep;
  rep.name = s.name;
  rep.operation = s.operation;
  if (s.operation == "dimension") return run_dimension(s, std::move(rep));
  if (s.operation == "trisecant") return run_trisecant(s, std::move(rep));
  if (s.operation == "zak") return run_zak(s, std::move(rep));
  if (s.operation == "envelope") return run_envelope(s, std::move(rep));
  if (s.operation == "plurigenera") return run_plurigenera(s, std::move(rep));
  if (s.operation == "prop18") return run_prop18(s, std::move(rep));
  return run_trisecant_equality(s, std::move(rep));
}

json ScenarioReport::to_json() const {
  return {{"name", name}, {"operation", operation}, {"outcome", to_string(outcome)}, {"detail", detail}, {"result", result}};
}

bool SuiteReport::all_passed() const {
  return errors.empty() &&
         std::all_of(reports.begin(), reports.end(), [](const ScenarioReport& r) { return r.outcome == Outcome::pass; });
}

json SuiteReport::to_json() const {
  json j;
  j["scenarios"] = json::array();
  int counts[3] = {0, 0, 0};
  for (const auto& r : reports) {
    j["scenarios"].push_back(r.to_json());
    ++counts[static_cast<int>(r.outcome)];
  }
  j["errors"] = json::array();
  for (const auto& [n, msg] : errors) j["errors"].push_back({{"name", n}, {"message", msg}});
  j["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"indeterminate", counts[2]}, {"error", errors.size()}};
  return j;
}

std::vector<Scenario> load_suite(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(load_scenario(f));
  std::sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  return out;
}

SuiteReport run_suite(const std::vector<Scenario>& scenarios) {
  SuiteReport suite;
  for (const auto& s : scenarios) {
    try {
      suite.reports.push_back(run_scenario(s));
    } catch (const std::exception& e) {
      suite.errors.emplace_back(s.name, e.what());
    }
  }
  std::sort(suite.reports.begin(), suite.reports.end(),
            [](const ScenarioReport& a, const ScenarioReport& b) { return a.name < b.name; });
  return suite;
}

}  // namespace symdiff
