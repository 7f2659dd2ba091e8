#include "cuspcalc/divisor_graph.hpp"

#include <algorithm>
#include <functional>

#include "cuspcalc/error.hpp"
#include "cuspcalc/linalg.hpp"

namespace cuspcalc {

namespace {

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

int DivisorGraph::next_id() const { return components_.empty() ? 0 : components_.rbegin()->first + 1; }

int DivisorGraph::add_component(int self_int, std::string label, bool is_E) {
  Component c{next_id(), self_int, std::move(label), is_E};
  insert_component(c);
  return c.id;
}

void DivisorGraph::insert_component(Component c) {
  if (contains(c.id)) throw DomainError("duplicate component id " + std::to_string(c.id));
  if (c.is_E && e_id()) throw DomainError("more than one component marked as E");
  components_.emplace(c.id, std::move(c));
}

void DivisorGraph::remove_component(int id) {
  component(id);
  components_.erase(id);
  for (auto it = edges_.begin(); it != edges_.end();) {
    if (it->first.first == id || it->first.second == id)
      it = edges_.erase(it);
    else
      ++it;
  }
}

void DivisorGraph::set_self_int(int id, int self_int) {
  component(id);
  components_[id].self_int = self_int;
}

void DivisorGraph::set_edge(int a, int b, int multiplicity) {
  if (a == b) throw DomainError("self-loop on component " + std::to_string(a));
  component(a);
  component(b);
  if (multiplicity < 0) throw DomainError("negative edge multiplicity");
  if (multiplicity == 0)
    edges_.erase(edge_key(a, b));
  else
    edges_[edge_key(a, b)] = multiplicity;
}

const Component& DivisorGraph::component(int id) const {
  auto it = components_.find(id);
  if (it == components_.end()) throw DomainError("unknown component id " + std::to_string(id));
  return it->second;
}

int DivisorGraph::multiplicity(int a, int b) const {
  auto it = edges_.find(edge_key(a, b));
  return it == edges_.end() ? 0 : it->second;
}

std::vector<int> DivisorGraph::ids() const {
  std::vector<int> out;
  out.reserve(components_.size());
  for (const auto& [id, _] : components_) out.push_back(id);
  return out;
}

Support DivisorGraph::support() const {
  Support s;
  for (const auto& [id, _] : components_) s.insert(id);
  return s;
}

std::vector<std::pair<int, int>> DivisorGraph::neighbors(int id) const {
  component(id);
  std::vector<std::pair<int, int>> out;
  for (const auto& [k, m] : edges_) {
    if (k.first == id) out.emplace_back(k.second, m);
    if (k.second == id) out.emplace_back(k.first, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int DivisorGraph::require_ksq() const {
  if (!ksq_) throw DomainError("operation needs K^2 of the ambient surface but ksq is absent");
  return *ksq_;
}

std::optional<int> DivisorGraph::e_id() const {
  for (const auto& [id, c] : components_)
    if (c.is_E) return id;
  return std::nullopt;
}

bool DivisorGraph::is_snc() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.second == 1; });
}

void DivisorGraph::require_snc(const char* op) const {
  for (const auto& [k, m] : edges_)
    if (m != 1)
      throw DomainError(std::string(op) + " needs an snc graph; edge " + std::to_string(k.first) + "-" +
                        std::to_string(k.second) + " has multiplicity " + std::to_string(m));
}

DivisorGraph chain_graph(const std::vector<int>& weights) {
  DivisorGraph g;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    g.add_component(-weights[i]);
    if (i > 0) g.set_edge(static_cast<int>(i) - 1, static_cast<int>(i), 1);
  }
  return g;
}

DivisorGraph induced_subgraph(const DivisorGraph& g, const Support& t) {
  DivisorGraph out;
  for (int id : t) out.insert_component(g.component(id));
  for (const auto& [k, m] : g.edges())
    if (t.count(k.first) && t.count(k.second)) out.set_edge(k.first, k.second, m);
  out.set_ksq(g.ksq());
  return out;
}

FractionalDivisor reduced(const Support& t) {
  FractionalDivisor d;
  for (int id : t) d[id] = 1;
  return d;
}

FractionalDivisor reduced(const DivisorGraph& g) { return reduced(g.support()); }

Support support_of(const FractionalDivisor& a) {
  Support s;
  for (const auto& [id, c] : a)
    if (c != 0) s.insert(id);
  return s;
}

FractionalDivisor add(const FractionalDivisor& a, const FractionalDivisor& b) {
  FractionalDivisor out = a;
  for (const auto& [id, c] : b) out[id] += c;
  return out;
}

FractionalDivisor scale(const FractionalDivisor& a, const Rational& s) {
  FractionalDivisor out;
  for (const auto& [id, c] : a) out[id] = c * s;
  return out;
}

Rational intersection_number(const DivisorGraph& g, const FractionalDivisor& a,
                             const FractionalDivisor& b) {
  for (const auto& [id, _] : a) g.component(id);
  for (const auto& [id, _] : b) g.component(id);
  Rational sum;
  for (const auto& [i, ai] : a) {
    if (ai == 0) continue;
    for (const auto& [j, bj] : b) {
      if (bj == 0) continue;
      int ij = i == j ? g.self_int(i) : g.multiplicity(i, j);
      if (ij != 0) sum += ai * bj * Rational(ij);
    }
  }
  return sum;
}

Rational canonical_dot(const DivisorGraph& g, const FractionalDivisor& a) {
  Rational sum;
  for (const auto& [id, c] : a) sum += c * Rational(-2 - g.self_int(id));
  return sum;
}

Rational arithmetic_genus(const DivisorGraph& g, const Support& t) {
  FractionalDivisor r = reduced(t);
  return (canonical_dot(g, r) + intersection_number(g, r, r)) / Rational(2) + Rational(1);
}

int branching_number(const DivisorGraph& g, const Support& r, const Support& t) {
  int beta = 0;
  for (int a : r) {
    g.component(a);
    for (const auto& [b, m] : g.neighbors(a))
      if (t.count(b) && !r.count(b)) beta += m;
  }
  return beta;
}

int branching_number(const DivisorGraph& g, int id) {
  int beta = 0;
  for (const auto& [_, m] : g.neighbors(id)) beta += m;
  return beta;
}

std::vector<int> tips(const DivisorGraph& g) {
  std::vector<int> out;
  for (int id : g.ids())
    if (branching_number(g, id) <= 1) out.push_back(id);
  return out;
}

std::vector<int> branching_components(const DivisorGraph& g) {
  std::vector<int> out;
  for (int id : g.ids())
    if (branching_number(g, id) >= 3) out.push_back(id);
  return out;
}

std::vector<Support> connected_components(const DivisorGraph& g, const Support& t) {
  std::vector<Support> out;
  Support seen;
  for (int start : t) {
    if (seen.count(start)) continue;
    Support comp;
    std::vector<int> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (const auto& [w, _] : g.neighbors(v))
        if (t.count(w) && !seen.count(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const DivisorGraph& g, const Support& t) { return connected_components(g, t).size() <= 1; }

bool is_tree(const DivisorGraph& g, const Support& t) {
  if (t.empty()) return false;
  std::size_t edge_count = 0;
  for (const auto& [k, m] : g.edges()) {
    if (!t.count(k.first) || !t.count(k.second)) continue;
    if (m != 1) return false;
    ++edge_count;
  }
  return edge_count + 1 == t.size() && is_connected(g, t);
}

std::optional<std::vector<int>> chain_order(const DivisorGraph& g, const Support& t) {
  if (t.empty()) return std::vector<int>{};
  if (!is_tree(g, t)) return std::nullopt;
  int start = -1;
  for (int id : t) {
    int b = branching_number(g, Support{id}, t);
    if (b > 2) return std::nullopt;
    if (b <= 1 && start < 0) start = id;
  }
  std::vector<int> order{start};
  int prev = start, cur = start;
  while (order.size() < t.size()) {
    int next = -1;
    for (const auto& [w, _] : g.neighbors(cur))
      if (t.count(w) && w != prev) next = w;
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

namespace {

// Split of an isolated chain into its two maximal twigs: the path is oriented
// from its lower-id tip, the first twig ends at the minimal-id component and
// both twigs are kept nonempty.
std::vector<std::vector<int>> split_isolated_chain(std::vector<int> path) {
  if (path.size() == 1) return {path};
  if (path.back() < path.front()) std::reverse(path.begin(), path.end());
  auto m = static_cast<std::size_t>(std::min_element(path.begin(), path.end()) - path.begin());
  if (m + 1 == path.size()) m = path.size() - 2;
  std::vector<int> first(path.begin(), path.begin() + static_cast<long>(m) + 1);
  std::vector<int> second(path.rbegin(), path.rend() - static_cast<long>(m) - 1);
  return {first, second};
}

}  // namespace

std::vector<std::vector<int>> maximal_twigs_unchecked(const DivisorGraph& g) {
  std::vector<std::vector<int>> out;
  Support all = g.support();
  for (const Support& comp : connected_components(g, all)) {
    if (auto order = chain_order(g, comp)) {
      for (auto& t : split_isolated_chain(*order)) out.push_back(std::move(t));
      continue;
    }
    for (int tip : comp) {
      if (branching_number(g, tip) != 1) continue;
      std::vector<int> twig{tip};
      int prev = -1, cur = tip;
      while (true) {
        int next = -1, mult = 0;
        for (const auto& [w, m] : g.neighbors(cur))
          if (w != prev) {
            next = w;
            mult = m;
          }
        if (next < 0 || mult != 1 || branching_number(g, next) != 2) break;
        twig.push_back(next);
        prev = cur;
        cur = next;
      }
      out.push_back(std::move(twig));
    }
  }
  return out;
}

std::vector<std::vector<int>> maximal_twigs(const DivisorGraph& g) {
  if (g.empty()) return {};
  if (!is_tree(g, g.support())) throw DomainError("maximal_twigs needs a connected snc tree");
  return maximal_twigs_unchecked(g);
}

std::vector<std::vector<Integer>> neg_intersection_matrix(const DivisorGraph& g,
                                                          const std::vector<int>& order) {
  std::vector<std::vector<Integer>> m(order.size(), std::vector<Integer>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      m[i][j] = i == j ? -g.self_int(order[i]) : -g.multiplicity(order[i], order[j]);
  return m;
}

bool is_negative_definite(const DivisorGraph& g, const Support& t) {
  auto minors = linalg::leading_minors(neg_intersection_matrix(g, {t.begin(), t.end()}));
  if (minors.size() != t.size()) return false;
  return std::all_of(minors.begin(), minors.end(), [](const Integer& x) { return x > 0; });
}

bool is_superfluous(const DivisorGraph& g, int id) {
  if (g.self_int(id) != -1) return false;
  auto nb = g.neighbors(id);
  if (nb.size() > 2) return false;
  return std::all_of(nb.begin(), nb.end(), [](const auto& p) { return p.second == 1; });
}

bool is_snc_minimal(const DivisorGraph& g) {
  for (int id : g.ids())
    if (is_superfluous(g, id)) return false;
  return true;
}

}  // namespace cuspcalc
