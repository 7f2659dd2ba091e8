#include "cuspcalc/graph_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "cuspcalc/error.hpp"
#include "json.hpp"

namespace cuspcalc {

using nlohmann::json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw DomainError("graph format error at " + path + ": " + msg);
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected integer");
  auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    schema_error(path, "integer out of range");
  return static_cast<int>(v);
}

}  // namespace

DivisorGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw DomainError("graph parse error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                      (pos == std::string::npos ? what : what.substr(pos)));
  }
  if (!doc.is_object()) schema_error("$", "expected an object");
  for (const auto& [key, _] : doc.items())
    if (key != "components" && key != "edges" && key != "ksq") schema_error("$." + key, "unknown field");
  if (!doc.contains("components")) schema_error("$", "missing field 'components'");
  if (!doc.contains("edges")) schema_error("$", "missing field 'edges'");

  DivisorGraph g;
  const json& comps = doc["components"];
  if (!comps.is_array()) schema_error("$.components", "expected a list");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string path = "$.components[" + std::to_string(i) + "]";
    const json& c = comps[i];
    if (!c.is_object()) schema_error(path, "expected an object");
    for (const auto& [key, _] : c.items())
      if (key != "id" && key != "selfint" && key != "label" && key != "is_E")
        schema_error(path + "." + key, "unknown field");
    if (!c.contains("id")) schema_error(path, "missing field 'id'");
    if (!c.contains("selfint")) schema_error(path, "missing field 'selfint'");
    Component comp;
    comp.id = as_int(c["id"], path + ".id");
    comp.self_int = as_int(c["selfint"], path + ".selfint");
    if (c.contains("label")) {
      if (!c["label"].is_string()) schema_error(path + ".label", "expected string");
      comp.label = c["label"].get<std::string>();
    }
    if (c.contains("is_E")) {
      if (!c["is_E"].is_boolean()) schema_error(path + ".is_E", "expected boolean");
      comp.is_E = c["is_E"].get<bool>();
    }
    try {
      g.insert_component(comp);
    } catch (const DomainError& e) {
      schema_error(path, e.what());
    }
  }
  const json& edges = doc["edges"];
  if (!edges.is_array()) schema_error("$.edges", "expected a list");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string path = "$.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) schema_error(path, "expected [id, id, multiplicity]");
    int a = as_int(e[0], path + "[0]"), b = as_int(e[1], path + "[1]"), m = as_int(e[2], path + "[2]");
    if (m < 1) schema_error(path, "multiplicity must be at least 1");
    if (a != b && g.multiplicity(a, b) != 0)
      schema_error(path, "duplicate edge");
    try {
      g.set_edge(a, b, m);
    } catch (const DomainError& ex) {
      schema_error(path, ex.what());
    }
  }
  if (doc.contains("ksq")) g.set_ksq(as_int(doc["ksq"], "$.ksq"));
  return g;
}

std::string serialize_graph(const DivisorGraph& g) {
  std::ostringstream os;
  os << "{\n  \"components\": [";
  bool first = true;
  for (const auto& [id, c] : g.components()) {
    os << (first ? "\n" : ",\n") << "    {\"id\": " << id << ", \"selfint\": " << c.self_int;
    if (!c.label.empty()) os << ", \"label\": " << json(c.label).dump();
    if (c.is_E) os << ", \"is_E\": true";
    os << "}";
    first = false;
  }
  os << (first ? "],\n" : "\n  ],\n");
  os << "  \"edges\": [";
  first = true;
  for (const auto& [k, m] : g.edges()) {
    os << (first ? "\n" : ",\n") << "    [" << k.first << ", " << k.second << ", " << m << "]";
    first = false;
  }
  os << (first ? "]" : "\n  ]");
  if (g.ksq()) os << ",\n  \"ksq\": " << *g.ksq();
  os << "\n}\n";
  return os.str();
}

DivisorGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

}  // namespace cuspcalc
