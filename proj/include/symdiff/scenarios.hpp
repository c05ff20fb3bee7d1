#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace symdiff {

enum class Outcome { pass, fail, indeterminate };
std::string to_string(Outcome o);

/// One experiment: a model reference, an operation with its parameters, and
/// what the result should be. Model paths are relative to the scenario file.
struct Scenario {
  std::string name;
  std::string model;  // file path or "builtin:<name>"; unused for plurigenera
  /// dimension | trisecant | zak | envelope | plurigenera | prop18 | trisecant-equality
  std::string operation;
  nlohmann::json params = nlohmann::json::object();
  /// {"type": "exact"|"bound"|"fixpoint"|"coverage"|"none", ...}
  nlohmann::json expectation = {{"type", "none"}};
  std::filesystem::path base_dir;

  /// Throws std::invalid_argument when the expectation does not fit the operation.
  void validate() const;
};

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& file);

struct ScenarioReport {
  std::string name;
  std::string operation;
  Outcome outcome = Outcome::indeterminate;
  std::string detail;
  nlohmann::json result;

  nlohmann::json to_json() const;
};

/// Runs the bound operation and checks the expectation. Model and budget
/// errors propagate.
ScenarioReport run_scenario(const Scenario& s);

struct SuiteReport {
  std::vector<ScenarioReport> reports;  // sorted by name
  /// Scenarios that threw, with the message; counted as failures.
  std::vector<std::pair<std::string, std::string>> errors;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Every *.json scenario in `dir`, sorted by name.
std::vector<Scenario> load_suite(const std::filesystem::path& dir);
SuiteReport run_suite(const std::vector<Scenario>& scenarios);

}  // namespace symdiff
