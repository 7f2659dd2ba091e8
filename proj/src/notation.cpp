#include "cuspcalc/notation.hpp"

#include <algorithm>
#include <sstream>

namespace cuspcalc {

std::string format_chain(const std::vector<int>& weights, bool abbreviate) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (std::size_t i = 0; i < weights.size();) {
    std::size_t j = i;
    while (j < weights.size() && weights[j] == 2) ++j;
    if (!first) os << ",";
    first = false;
    if (abbreviate && j - i >= 3) {
      os << "(2)_" << (j - i);
      i = j;
    } else {
      os << weights[i];
      ++i;
    }
  }
  os << "]";
  return os.str();
}

std::string format_sequence(const std::vector<long>& seq) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? "," : "") << seq[i];
  os << ")";
  return os.str();
}

std::string format_divisor(const FractionalDivisor& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [id, c] : d) {
    os << (first ? "" : ", ") << id << ": " << c.str();
    first = false;
  }
  os << "}";
  return os.str();
}

std::vector<int> weights_along(const DivisorGraph& g, const std::vector<int>& order) {
  std::vector<int> w;
  for (int id : order) w.push_back(-g.self_int(id));
  return w;
}

std::string describe_graph(const DivisorGraph& g, bool abbreviate) {
  std::ostringstream os;
  if (g.empty()) return "[]";
  if (auto order = chain_order(g, g.support()); order && !g.e_id()) {
    if (order->size() > 1 && order->back() > order->front()) std::reverse(order->begin(), order->end());
    return format_chain(weights_along(g, *order), abbreviate);
  }
  for (const auto& [id, c] : g.components()) {
    os << "  " << id << " [" << -c.self_int << "]";
    if (c.is_E) os << " E";
    if (!c.label.empty()) os << " " << c.label;
    os << "\n";
  }
  for (const auto& [k, m] : g.edges()) {
    os << "  " << k.first << "-" << k.second;
    if (m != 1) os << " x" << m;
    os << "\n";
  }
  std::string s = os.str();
  s.pop_back();
  return s;
}

}  // namespace cuspcalc
