#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cuspcalc {

using Tuple = std::vector<long>;

struct ScenarioResult {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Tuple> solutions;               // sorted
  std::optional<std::vector<Tuple>> expected; // absent when only a predicate is printed
  std::string expectation;
  std::optional<bool> certificate;            // modular argument, when there is one
  bool matches = false;
  std::vector<std::string> notes;

  bool operator==(const ScenarioResult&) const = default;
};

const std::vector<std::string>& scenario_names();
ScenarioResult run_scenario(const std::string& name);

}  // namespace cuspcalc
