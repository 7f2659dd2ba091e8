#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cuspcalc/rational.hpp"

namespace cuspcalc {

struct Component {
  int id = 0;
  int self_int = 0;
  std::string label;
  bool is_E = false;

  bool operator==(const Component&) const = default;
};

using Support = std::set<int>;
using FractionalDivisor = std::map<int, Rational>;

// Weighted dual graph of a reduced divisor with smooth rational components.
// Weight notation [w] corresponds to self_int = -w.
class DivisorGraph {
 public:
  DivisorGraph() = default;

  // Builders. Used while constructing a value; operations on graphs return
  // new values instead of mutating their inputs.
  int add_component(int self_int, std::string label = {}, bool is_E = false);
  void insert_component(Component c);
  void remove_component(int id);
  void set_self_int(int id, int self_int);
  void set_edge(int a, int b, int multiplicity);  // 0 removes the edge
  void set_ksq(std::optional<int> ksq) { ksq_ = ksq; }

  bool contains(int id) const { return components_.count(id) != 0; }
  const Component& component(int id) const;
  int self_int(int id) const { return component(id).self_int; }
  int multiplicity(int a, int b) const;
  std::vector<int> ids() const;
  Support support() const;
  std::vector<std::pair<int, int>> neighbors(int id) const;  // (id, multiplicity)
  const std::map<int, Component>& components() const { return components_; }
  const std::map<std::pair<int, int>, int>& edges() const { return edges_; }
  std::optional<int> ksq() const { return ksq_; }
  int require_ksq() const;
  std::optional<int> e_id() const;
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  int next_id() const;

  bool is_snc() const;  // all edge multiplicities equal 1
  void require_snc(const char* op) const;

  bool operator==(const DivisorGraph&) const = default;

 private:
  std::map<int, Component> components_;
  std::map<std::pair<int, int>, int> edges_;
  std::optional<int> ksq_;
};

// Chain [w1,...,wk] with ids 0..k-1 in order.
DivisorGraph chain_graph(const std::vector<int>& weights);
DivisorGraph induced_subgraph(const DivisorGraph& g, const Support& t);

FractionalDivisor reduced(const Support& t);
FractionalDivisor reduced(const DivisorGraph& g);
Support support_of(const FractionalDivisor& a);
FractionalDivisor add(const FractionalDivisor& a, const FractionalDivisor& b);
FractionalDivisor scale(const FractionalDivisor& a, const Rational& s);

Rational intersection_number(const DivisorGraph& g, const FractionalDivisor& a,
                             const FractionalDivisor& b);
Rational canonical_dot(const DivisorGraph& g, const FractionalDivisor& a);
Rational arithmetic_genus(const DivisorGraph& g, const Support& t);

// R.(T - R) for R <= T.
int branching_number(const DivisorGraph& g, const Support& r, const Support& t);
int branching_number(const DivisorGraph& g, int id);  // T = whole graph

std::vector<int> tips(const DivisorGraph& g);
std::vector<int> branching_components(const DivisorGraph& g);

bool is_connected(const DivisorGraph& g, const Support& t);
bool is_tree(const DivisorGraph& g, const Support& t);  // connected, acyclic, snc
std::vector<Support> connected_components(const DivisorGraph& g, const Support& t);
// Linear order of a chain support; nullopt if t is not a chain.
std::optional<std::vector<int>> chain_order(const DivisorGraph& g, const Support& t);

// Maximal twigs ordered from the tip inward. Requires a connected snc tree.
std::vector<std::vector<int>> maximal_twigs(const DivisorGraph& g);
// Same walk without the tree/snc requirement; used where tangency edges are
// present elsewhere in the graph.
std::vector<std::vector<int>> maximal_twigs_unchecked(const DivisorGraph& g);

// -Q(T) with rows/columns in the given order.
std::vector<std::vector<Integer>> neg_intersection_matrix(const DivisorGraph& g,
                                                          const std::vector<int>& order);
bool is_negative_definite(const DivisorGraph& g, const Support& t);

bool is_superfluous(const DivisorGraph& g, int id);
bool is_snc_minimal(const DivisorGraph& g);

}  // namespace cuspcalc
