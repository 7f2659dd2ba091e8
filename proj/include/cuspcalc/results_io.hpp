#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cuspcalc/config_search.hpp"
#include "cuspcalc/scenarios.hpp"

namespace cuspcalc {

using ResultRecord = std::variant<CurveCandidate, ScenarioResult>;

// A JSON list of records tagged "kind": "candidate" | "scenario"; exact
// rationals are "p/q" strings, fields in a fixed order.
std::string results_to_json(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> results_from_json(std::string_view text);

void persist_results(const std::string& path, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> load_results(const std::string& path);

}  // namespace cuspcalc
