#pragma once

#include <vector>

#include "cuspcalc/divisor_graph.hpp"

namespace cuspcalc {

enum class BlowupKind { Inner, Outer, Free };

struct BlowupSpec {
  BlowupKind kind = BlowupKind::Free;
  std::vector<int> targets;

  static BlowupSpec inner(int a, int b) { return {BlowupKind::Inner, {a, b}}; }
  static BlowupSpec outer(int a) { return {BlowupKind::Outer, {a}}; }
  static BlowupSpec free() { return {BlowupKind::Free, {}}; }
};

struct BlowupResult {
  DivisorGraph graph;
  int new_id = 0;
};

// The new (-1)-curve gets id g.next_id().
BlowupResult blow_up(const DivisorGraph& g, const BlowupSpec& spec);

// Contracts a (-1)-curve meeting the rest with total multiplicity <= 2.
DivisorGraph contract_minus_one(const DivisorGraph& g, int id);

struct ContractionTrace {
  bool contracts = false;
  std::vector<int> order;  // ids in the order they were contracted
};

// Repeatedly contracts the smallest-id (-1)-curve of T (allowed by the
// multiplicity rule) until T is empty or no such curve is left.
ContractionTrace contracts_to_smooth_point(const DivisorGraph& g, const Support& t);
ContractionTrace contracts_to_smooth_point(const std::vector<int>& weights);

// Chains with K.Q = kq (-1 <= kq <= 2) from the explicit families, for
// k = 0..k_max leading (-2)-curves.
std::vector<std::vector<int>> classify_chains_by_K(int kq, int k_max);

struct FamilyMatch {
  int family = 0;       // 1 or 2
  int k = 0;
  int x = 0;
  std::vector<int> m;   // m_1..m_{2k}
  bool reversed = false;
  bool via_empty_convention = false;  // family 1 with x = -1
};

// Chains contracting to a smooth point with a unique (-1)-curve, checked
// against the two parameter families.
struct ContractibleChain {
  std::vector<int> weights;  // lexicographically smaller of the two orientations
  std::vector<FamilyMatch> matches;
};

constexpr int kMaxChainLength = 12;

std::vector<ContractibleChain> enumerate_contractible_chains(int max_len);
std::vector<FamilyMatch> match_chain_families(const std::vector<int>& weights);

// Members of the two families of length <= max_len, as (chain, parameters).
std::vector<std::pair<std::vector<int>, FamilyMatch>> family_members(int max_len);

}  // namespace cuspcalc
