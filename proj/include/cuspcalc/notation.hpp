#pragma once

#include <string>
#include <vector>

#include "cuspcalc/divisor_graph.hpp"

namespace cuspcalc {

// [w1,...,wk]; runs of three or more 2's are written (2)_n when abbreviate.
std::string format_chain(const std::vector<int>& weights, bool abbreviate = true);
std::string format_sequence(const std::vector<long>& seq);  // (a,b,...)
std::string format_divisor(const FractionalDivisor& d);     // {id: p/q, ...}

std::vector<int> weights_along(const DivisorGraph& g, const std::vector<int>& order);

// Bracket form for chains, otherwise one line per component and per edge.
std::string describe_graph(const DivisorGraph& g, bool abbreviate = true);

}  // namespace cuspcalc
