#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspcalc/divisor_graph.hpp"
#include "cuspcalc/hn_pairs.hpp"

namespace cuspcalc {

using CuspConfig = std::vector<CuspWithContact>;

enum class FilterStatus { Pass, Fail, Skipped };
std::string to_string(FilterStatus s);

struct FilterVerdict {
  FilterStatus status = FilterStatus::Skipped;
  std::optional<Rational> slack;
  std::string detail;
  bool operator==(const FilterVerdict&) const = default;
};

struct CurveCandidate {
  long d = 0;
  CuspConfig config;
  long gamma = 0;  // -E^2 on the boundary graph
  long hash_D = 0;
  std::optional<Rational> ind_D;
  std::string ind_note;     // why ind_D is absent
  std::vector<int> tau;     // per cusp: blowups of multiplicity 1
  std::vector<int> s;       // per cusp: 1 if one of them was outer
  DivisorGraph graph;
  std::map<std::string, FilterVerdict> filters;

  long gamma0() const;      // gamma - sum tau
  long tau_star() const;    // sum (tau - s - 1)
  bool operator==(const CurveCandidate&) const;
};

bool operator==(const CuspWithContact& a, const CuspWithContact& b);

// Integer d >= 3 with (d-1)(d-2) = sum rho(rho I - M), if any.
std::optional<long> solve_degree(const CuspConfig& config);
std::optional<CurveCandidate> candidate_from_config(const CuspConfig& config);

struct Hypotheses {
  std::optional<long> p2;
  long i = 0;
};

CurveCandidate filter_candidate(CurveCandidate cand, const Hypotheses& hyp);

constexpr int kMaxSearchBound = 18;
constexpr int kMaxSearchCusps = 8;
constexpr long kMaxSearchConfigs = 20'000'000;

// Canonical singular pair sequences (p1 >= 2, no (1,1) tail) whose minimal
// log resolution has at most max_components curves, ordered by size then
// lexicographically.
std::vector<CharPairSeq> singular_sequences(int max_components);

struct SearchOptions {
  int cusps = 1;
  int bound = 3;  // on the total number of exceptional curves
  Hypotheses hyp;
  unsigned threads = 1;
};

struct SearchResult {
  long configs_examined = 0;
  std::vector<CurveCandidate> candidates;
};

SearchResult enumerate(const SearchOptions& opt);

}  // namespace cuspcalc
