#include "cuspcalc/birational.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cuspcalc/error.hpp"

namespace cuspcalc {

BlowupResult blow_up(const DivisorGraph& g, const BlowupSpec& spec) {
  DivisorGraph out = g;
  switch (spec.kind) {
    case BlowupKind::Inner: {
      if (spec.targets.size() != 2) throw DomainError("inner blowup needs two targets");
      int a = spec.targets[0], b = spec.targets[1];
      int m = g.multiplicity(a, b);
      if (a == b || m == 0)
        throw DomainError("inner blowup target " + std::to_string(a) + "-" + std::to_string(b) +
                          " is not an edge");
      out.set_self_int(a, g.self_int(a) - 1);
      out.set_self_int(b, g.self_int(b) - 1);
      out.set_edge(a, b, m - 1);
      break;
    }
    case BlowupKind::Outer: {
      if (spec.targets.size() != 1) throw DomainError("outer blowup needs one target");
      int a = spec.targets[0];
      out.set_self_int(a, g.self_int(a) - 1);
      break;
    }
    case BlowupKind::Free:
      if (!spec.targets.empty()) throw DomainError("free blowup takes no targets");
      break;
  }
  int id = out.add_component(-1);
  for (int t : spec.targets) out.set_edge(t, id, 1);
  if (g.ksq()) out.set_ksq(*g.ksq() - 1);
  return {out, id};
}

DivisorGraph contract_minus_one(const DivisorGraph& g, int id) {
  if (g.self_int(id) != -1) throw DomainError("component " + std::to_string(id) + " is not a (-1)-curve");
  auto nb = g.neighbors(id);
  int total = 0;
  for (const auto& [_, m] : nb) total += m;
  if (total > 2)
    throw DomainError("component " + std::to_string(id) + " meets the rest with multiplicity " +
                      std::to_string(total) + " > 2");
  DivisorGraph out = g;
  out.remove_component(id);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    auto [a, ma] = nb[i];
    out.set_self_int(a, out.self_int(a) + ma * ma);
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      auto [b, mb] = nb[j];
      out.set_edge(a, b, out.multiplicity(a, b) + ma * mb);
    }
  }
  if (g.ksq()) out.set_ksq(*g.ksq() + 1);
  return out;
}

ContractionTrace contracts_to_smooth_point(const DivisorGraph& g, const Support& t) {
  DivisorGraph cur = induced_subgraph(g, t);
  ContractionTrace trace;
  while (!cur.empty()) {
    int pick = -1;
    for (int id : cur.ids()) {
      if (cur.self_int(id) != -1) continue;
      int total = 0;
      for (const auto& [_, m] : cur.neighbors(id)) total += m;
      if (total <= 2) {
        pick = id;
        break;
      }
    }
    if (pick < 0) return trace;
    cur = contract_minus_one(cur, pick);
    trace.order.push_back(pick);
  }
  trace.contracts = true;
  return trace;
}

ContractionTrace contracts_to_smooth_point(const std::vector<int>& weights) {
  DivisorGraph g = chain_graph(weights);
  return contracts_to_smooth_point(g, g.support());
}

std::vector<std::vector<int>> classify_chains_by_K(int kq, int k_max) {
  std::vector<std::vector<int>> tails;
  switch (kq) {
    case -1: tails = {{1}}; break;
    case 0: tails = {{3, 1, 2}}; break;
    case 1: tails = {{4, 1, 2, 2}, {3, 2, 1, 3}}; break;
    case 2: tails = {{5, 1, 2, 2, 2}, {4, 2, 1, 3, 2}, {3, 3, 1, 2, 3}, {3, 2, 2, 1, 4}}; break;
    default: throw DomainError("K.Q = " + std::to_string(kq) + " is outside the supported range [-1, 2]");
  }
  if (k_max < 0) throw DomainError("k_max must be non-negative");
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= k_max; ++k)
    for (const auto& tail : tails) {
      std::vector<int> w(static_cast<std::size_t>(k), 2);
      w.insert(w.end(), tail.begin(), tail.end());
      out.push_back(std::move(w));
    }
  return out;
}

namespace {

void append_twos(std::vector<int>& w, int n) { w.insert(w.end(), static_cast<std::size_t>(n), 2); }

std::vector<int> family1_chain(const std::vector<int>& m, int x) {
  const int k = static_cast<int>(m.size()) / 2;
  auto M = [&](int i) { return m[static_cast<std::size_t>(i - 1)]; };
  std::vector<int> w;
  for (int j = k; j >= 1; --j) {
    w.push_back(M(2 * j) + 3);
    append_twos(w, M(2 * j - 1));
  }
  w.push_back(1);
  for (int j = 1; j <= k; ++j) {
    w.push_back(M(2 * j - 1) + (j == 1 ? 2 : 3));
    append_twos(w, M(2 * j));
  }
  if (x >= 0) {
    w.push_back(3);
    append_twos(w, x);
  }
  return w;
}

std::vector<int> family2_chain(const std::vector<int>& m, int x) {
  const int k = static_cast<int>(m.size()) / 2;
  auto M = [&](int i) { return m[static_cast<std::size_t>(i - 1)]; };
  std::vector<int> w;
  for (int j = k; j >= 1; --j) {
    append_twos(w, M(2 * j));
    w.push_back(M(2 * j - 1) + (j == 1 ? 2 : 3));
  }
  w.push_back(1);
  for (int j = 1; j <= k; ++j) {
    append_twos(w, M(2 * j - 1));
    w.push_back(M(2 * j) + 3);
  }
  append_twos(w, x);
  return w;
}

// All vectors of n non-negative integers with sum <= budget.
void for_each_vector(int n, int budget, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      f(v);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      v[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, budget);
}

}  // namespace

std::vector<std::pair<std::vector<int>, FamilyMatch>> family_members(int max_len) {
  std::vector<std::pair<std::vector<int>, FamilyMatch>> out;
  // Family 1: length 2k + sum(m) + 2 + x, k >= 1, x >= -1.
  for (int k = 1; 2 * k + 1 <= max_len; ++k)
    for_each_vector(2 * k, max_len - 2 * k - 1, [&](const std::vector<int>& m) {
      int base = 2 * k + 2;
      for (int v : m) base += v;
      for (int x = -1; base + x <= max_len; ++x)
        out.push_back({family1_chain(m, x), FamilyMatch{1, k, x, m, false, x == -1}});
    });
  // Family 2: length 2k + sum(m) + 1 + x, k >= 0, x >= 0; k = 0 reads [1,(2)_x].
  for (int k = 0; 2 * k + 1 <= max_len; ++k)
    for_each_vector(2 * k, max_len - 2 * k - 1, [&](const std::vector<int>& m) {
      int base = 2 * k + 1;
      for (int v : m) base += v;
      for (int x = 0; base + x <= max_len; ++x)
        out.push_back({family2_chain(m, x), FamilyMatch{2, k, x, m, false, false}});
    });
  return out;
}

namespace {

using FamilyIndex = std::map<std::vector<int>, std::vector<FamilyMatch>>;

FamilyIndex build_family_index(int max_len) {
  FamilyIndex idx;
  for (auto& [w, fm] : family_members(max_len)) idx[w].push_back(fm);
  return idx;
}

std::vector<FamilyMatch> lookup(const FamilyIndex& idx, const std::vector<int>& w) {
  std::vector<FamilyMatch> out;
  std::vector<int> r(w.rbegin(), w.rend());
  for (int pass = 0; pass < 2; ++pass) {
    const auto& key = pass == 0 ? w : r;
    if (pass == 1 && r == w) break;
    auto it = idx.find(key);
    if (it == idx.end()) continue;
    for (FamilyMatch fm : it->second) {
      fm.reversed = pass == 1;
      out.push_back(std::move(fm));
    }
  }
  return out;
}

}  // namespace

std::vector<FamilyMatch> match_chain_families(const std::vector<int>& weights) {
  return lookup(build_family_index(static_cast<int>(weights.size())), weights);
}

std::vector<ContractibleChain> enumerate_contractible_chains(int max_len) {
  if (max_len < 0 || max_len > kMaxChainLength)
    throw DomainError("max_len must lie in [0, " + std::to_string(kMaxChainLength) + "]");
  FamilyIndex idx = build_family_index(max_len);
  std::vector<ContractibleChain> out;
  for (int len = 1; len <= max_len; ++len) {
    // K.Q = sum(w - 2) <= len - 2, weights in [1, len], exactly one weight 1.
    std::vector<int> w(static_cast<std::size_t>(len));
    std::function<void(int, long, long, int, bool)> rec = [&](int i, long d1, long d2, int kq, bool has_one) {
      if (i == len) {
        if (!has_one || d1 != 1) return;
        std::vector<int> r(w.rbegin(), w.rend());
        if (r < w) return;
        if (!contracts_to_smooth_point(w).contracts) return;
        out.push_back({w, lookup(idx, w)});
        return;
      }
      const int remaining = len - i - 1;
      for (int v = 1; v <= len; ++v) {
        if (v == 1 && has_one) continue;
        int nkq = kq + v - 2;
        // every later position contributes at least 0, or -1 if it is the (-1)-curve
        if (nkq - (has_one || v == 1 ? 0 : (remaining > 0 ? 1 : 0)) > len - 2) break;
        long d = v * d1 - d2;
        if (d <= 0) continue;
        w[static_cast<std::size_t>(i)] = v;
        rec(i + 1, d, d1, nkq, has_one || v == 1);
      }
    };
    rec(0, 1, 0, 0, false);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.weights.size() != b.weights.size() ? a.weights.size() < b.weights.size() : a.weights < b.weights;
  });
  return out;
}

}  // namespace cuspcalc
