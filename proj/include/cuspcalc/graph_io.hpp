#pragma once

#include <string>
#include <string_view>

#include "cuspcalc/divisor_graph.hpp"

namespace cuspcalc {

// Text format:
//   {"components": [{"id": 0, "selfint": -2, "label": "...", "is_E": true}, ...],
//    "edges": [[0, 1, 1], ...], "ksq": 7}
// label, is_E and ksq are optional. Throws DomainError with line:column for
// syntax errors and a field path for schema errors.
DivisorGraph parse_graph(std::string_view text);

// Canonical text: components sorted by id, edges as [min, max, mult] sorted
// lexicographically, one entry per line, trailing newline.
std::string serialize_graph(const DivisorGraph& g);

DivisorGraph load_graph_file(const std::string& path);

}  // namespace cuspcalc
