#include "cuspcalc/results_io.hpp"

#include <fstream>
#include <sstream>

#include "cuspcalc/error.hpp"
#include "cuspcalc/graph_io.hpp"
#include "json.hpp"

namespace cuspcalc {

namespace {

using ojson = nlohmann::ordered_json;

ojson optional_rational(const std::optional<Rational>& r) { return r ? ojson(r->fraction_str()) : ojson(nullptr); }

std::optional<Rational> read_optional_rational(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  return Rational::parse(j.get<std::string>());
}

ojson candidate_json(const CurveCandidate& c) {
  ojson j;
  j["kind"] = "candidate";
  j["d"] = c.d;
  ojson cfg = ojson::array();
  for (const auto& cu : c.config) cfg.push_back({{"pairs", cu.pairs.str()}, {"rho", cu.rho}});
  j["config"] = cfg;
  j["gamma"] = c.gamma;
  j["hash_D"] = c.hash_D;
  j["ind_D"] = optional_rational(c.ind_D);
  j["ind_note"] = c.ind_note;
  j["tau"] = c.tau;
  j["s"] = c.s;
  ojson filters = ojson::object();
  for (const auto& [name, v] : c.filters)
    filters[name] = {{"status", to_string(v.status)}, {"slack", optional_rational(v.slack)}, {"detail", v.detail}};
  j["filters"] = filters;
  j["graph"] = ojson::parse(serialize_graph(c.graph));
  return j;
}

FilterStatus parse_status(const std::string& s) {
  if (s == "pass") return FilterStatus::Pass;
  if (s == "fail") return FilterStatus::Fail;
  if (s == "skipped") return FilterStatus::Skipped;
  throw DomainError("unknown filter status '" + s + "'");
}

CurveCandidate candidate_from(const ojson& j) {
  CurveCandidate c;
  c.d = j.at("d").get<long>();
  for (const auto& cu : j.at("config"))
    c.config.push_back({CharPairSeq::parse(cu.at("pairs").get<std::string>()), cu.at("rho").get<long>()});
  c.gamma = j.at("gamma").get<long>();
  c.hash_D = j.at("hash_D").get<long>();
  c.ind_D = read_optional_rational(j.at("ind_D"));
  c.ind_note = j.at("ind_note").get<std::string>();
  c.tau = j.at("tau").get<std::vector<int>>();
  c.s = j.at("s").get<std::vector<int>>();
  for (const auto& [name, v] : j.at("filters").items())
    c.filters[name] = {parse_status(v.at("status").get<std::string>()), read_optional_rational(v.at("slack")),
                       v.at("detail").get<std::string>()};
  c.graph = parse_graph(j.at("graph").dump());
  return c;
}

ojson scenario_json(const ScenarioResult& r) {
  ojson j;
  j["kind"] = "scenario";
  j["name"] = r.name;
  j["variables"] = r.variables;
  j["solutions"] = r.solutions;
  j["expected"] = r.expected ? ojson(*r.expected) : ojson(nullptr);
  j["expectation"] = r.expectation;
  j["certificate"] = r.certificate ? ojson(*r.certificate) : ojson(nullptr);
  j["matches"] = r.matches;
  j["notes"] = r.notes;
  return j;
}

ScenarioResult scenario_from(const ojson& j) {
  ScenarioResult r;
  r.name = j.at("name").get<std::string>();
  r.variables = j.at("variables").get<std::vector<std::string>>();
  r.solutions = j.at("solutions").get<std::vector<Tuple>>();
  if (!j.at("expected").is_null()) r.expected = j.at("expected").get<std::vector<Tuple>>();
  r.expectation = j.at("expectation").get<std::string>();
  if (!j.at("certificate").is_null()) r.certificate = j.at("certificate").get<bool>();
  r.matches = j.at("matches").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

}  // namespace

std::string results_to_json(const std::vector<ResultRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& rec : records)
    arr.push_back(std::visit(
        [](const auto& v) -> ojson {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, CurveCandidate>)
            return candidate_json(v);
          else
            return scenario_json(v);
        },
        rec));
  return arr.dump(2) + "\n";
}

std::vector<ResultRecord> results_from_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text.begin(), text.end());
  } catch (const ojson::parse_error& e) {
    throw DomainError(std::string("results parse error: ") + e.what());
  }
  if (!doc.is_array()) throw DomainError("results file must hold a JSON list");
  std::vector<ResultRecord> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    try {
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "candidate")
        out.emplace_back(candidate_from(j));
      else if (kind == "scenario")
        out.emplace_back(scenario_from(j));
      else
        throw DomainError("unknown kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
      throw DomainError("results record " + std::to_string(i) + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError("results record " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

void persist_results(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot write " + path);
  os << results_to_json(records);
  if (!os) throw DomainError("write failed for " + path);
}

std::vector<ResultRecord> load_results(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return results_from_json(ss.str());
}

}  // namespace cuspcalc
