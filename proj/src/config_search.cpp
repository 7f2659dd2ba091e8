#include "cuspcalc/config_search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include "cuspcalc/error.hpp"
#include "cuspcalc/twig_calculus.hpp"

namespace cuspcalc {

std::string to_string(FilterStatus s) {
  switch (s) {
    case FilterStatus::Pass: return "pass";
    case FilterStatus::Fail: return "fail";
    case FilterStatus::Skipped: return "skipped";
  }
  return "?";
}

bool operator==(const CuspWithContact& a, const CuspWithContact& b) { return a.pairs == b.pairs && a.rho == b.rho; }

long CurveCandidate::gamma0() const { return gamma - std::accumulate(tau.begin(), tau.end(), 0L); }

long CurveCandidate::tau_star() const {
  long t = 0;
  for (std::size_t j = 0; j < tau.size(); ++j) t += tau[j] - s[j] - 1;
  return t;
}

bool CurveCandidate::operator==(const CurveCandidate& o) const {
  return d == o.d && config == o.config && gamma == o.gamma && hash_D == o.hash_D && ind_D == o.ind_D &&
         ind_note == o.ind_note && tau == o.tau && s == o.s && graph == o.graph && filters == o.filters;
}

namespace {

std::optional<long> solve_quadratic_degree(long S) {
  // (d-1)(d-2) = S  <=>  d = (3 + sqrt(1 + 4S)) / 2
  if (S < 2) return std::nullopt;
  Integer disc = Integer(1) + Integer(4) * S;
  Integer r = sqrt(disc);
  if (r * r != disc) return std::nullopt;
  Integer num = Integer(3) + r;
  if (num % 2 != 0) return std::nullopt;
  return to_long(num / 2);
}

}  // namespace

std::optional<long> solve_degree(const CuspConfig& config) {
  long S = 0;
  for (const auto& cu : config) {
    auto inv = cusp_invariants(cu.pairs);
    S += cu.rho * (cu.rho * inv.I - inv.M);
  }
  return solve_quadratic_degree(S);
}

std::optional<CurveCandidate> candidate_from_config(const CuspConfig& config) {
  if (config.empty()) return std::nullopt;
  for (const auto& cu : config) {
    if (cu.rho < 1) throw DomainError("contact multiplicity rho must be positive");
    if (cu.pairs.is_smooth()) throw DomainError("configuration lists a smooth germ");
  }
  auto d = solve_degree(config);
  if (!d) return std::nullopt;
  CurveCandidate cand;
  cand.d = *d;
  cand.config = config;
  long sum_i = 0;
  for (const auto& cu : config) sum_i += cu.rho * cu.rho * cusp_invariants(cu.pairs).I;
  cand.gamma = sum_i - cand.d * cand.d;
  auto res = degree_genus_equations(config, cand.d, cand.gamma);
  if (res != std::array<long, 3>{0, 0, 0}) throw std::logic_error("candidate violates the degree-genus system");

  DivisorGraph g;
  int blowups = 0;
  std::vector<std::pair<int, long>> attach;
  for (std::size_t j = 0; j < config.size(); ++j) {
    auto ex = build_exceptional_graph(config[j].pairs);
    std::map<int, int> remap;
    for (const auto& [id, c] : ex.graph.components()) remap[id] = g.add_component(c.self_int, "Q" + std::to_string(j + 1));
    for (const auto& [k, m] : ex.graph.edges()) g.set_edge(remap[k.first], remap[k.second], m);
    for (const auto& [id, contact] : ex.germ_contact) attach.emplace_back(remap[id], config[j].rho * contact);
    blowups += static_cast<int>(ex.graph.size());
    cand.tau.push_back(ex.tau);
    cand.s.push_back(ex.s);
  }
  int e = g.add_component(static_cast<int>(-cand.gamma), "E", true);
  for (const auto& [id, m] : attach) g.set_edge(id, e, static_cast<int>(m));
  g.set_ksq(9 - blowups);
  cand.hash_D = static_cast<long>(g.size());
  cand.graph = std::move(g);
  try {
    cand.ind_D = total_inductance(cand.graph);
  } catch (const DomainError& ex) {
    cand.ind_note = ex.what();
  }
  return cand;
}

CurveCandidate filter_candidate(CurveCandidate cand, const Hypotheses& hyp) {
  auto& f = cand.filters;
  f.clear();
  long max_mult = 0;
  for (const auto& cu : cand.config) max_mult = std::max(max_mult, cu.pairs.pairs()[0].p);
  {
    FilterVerdict v;
    v.slack = Rational(3 * max_mult - cand.d);
    v.status = 3 * max_mult > cand.d ? FilterStatus::Pass : FilterStatus::Fail;
    v.detail = "d < 3 * max multiplicity (" + std::to_string(cand.d) + " < " + std::to_string(3 * max_mult) + ")";
    f["matsuoka_sakai"] = v;
  }
  {
    FilterVerdict v;
    v.slack = Rational(cand.gamma - 4);
    v.status = cand.gamma >= 4 ? FilterStatus::Pass : FilterStatus::Fail;
    v.detail = "gamma >= 4 (gamma = " + std::to_string(cand.gamma) + ")";
    f["kumar_murthy"] = v;
  }
  {
    FilterVerdict v;
    if (!hyp.p2) {
      v.detail = "needs a p2 hypothesis";
    } else if (!cand.ind_D) {
      v.detail = "ind(D) undefined: " + cand.ind_note;
    } else {
      v.slack = Rational(5 - *hyp.p2 - hyp.i) - *cand.ind_D;
      v.status = *v.slack >= 0 ? FilterStatus::Pass : FilterStatus::Fail;
      v.detail = "p2 + i + ind(D) <= 5 (ind(D) = " + cand.ind_D->str() + ")";
    }
    f["bmy"] = v;
  }
  {
    FilterVerdict v;
    if (!hyp.p2) {
      v.detail = "needs a p2 hypothesis";
    } else {
      long x = cand.gamma0() + cand.tau_star();
      v.slack = Rational(std::min(x - 4, 4 * *hyp.p2 - x));
      v.status = *v.slack >= 0 ? FilterStatus::Pass : FilterStatus::Fail;
      v.detail = "4 <= gamma0 + tau* <= 4 p2 with n = 0 (gamma0 + tau* = " + std::to_string(x) + ")";
    }
    f["gamma_tau_range"] = v;
  }
  {
    FilterVerdict v;
    if (!hyp.p2) {
      v.detail = "needs a p2 hypothesis";
    } else {
      Rational lower;
      for (const auto& cu : cand.config) {
        const auto& first = cu.pairs.pairs()[0];
        long q = first.c / first.p;
        lower += Rational(1) - Rational(Integer(1), Integer(q + 1));
      }
      v.slack = Rational(5 - *hyp.p2 - hyp.i) - lower;
      v.status = *v.slack > 0 ? FilterStatus::Pass : FilterStatus::Fail;
      v.detail = "sum (1 - 1/(q_j + 1)) < 5 - p2 - i (lower bound " + lower.str() + ")";
    }
    f["twig_budget"] = v;
  }
  return cand;
}

namespace {

struct Block {
  long b;
  long len;  // sum of partial quotients of a/b
};

// Coprime (a, b) with a > b >= 1 and block length <= n, keyed by a. Built
// from continued fractions [t0; t1, ..., tk] with tk >= 2.
std::map<long, std::vector<Block>> coprime_blocks(long n) {
  std::map<long, std::vector<Block>> out;
  std::function<void(long, long, long)> rec = [&](long a, long b, long len) {
    out[a].push_back({b, len});
    for (long t = 1; len + t <= n; ++t) rec(t * a + b, a, len + t);
  };
  for (long tk = 2; tk <= n; ++tk) rec(tk, 1, tk);
  return out;
}

}  // namespace

std::vector<CharPairSeq> singular_sequences(int max_components) {
  const long n = max_components;
  if (n < 3) return {};
  auto blocks = coprime_blocks(n);
  std::map<long, long> min_len;
  for (const auto& [a, v] : blocks)
    for (const auto& bl : v)
      if (!min_len.count(a) || bl.len < min_len[a]) min_len[a] = bl.len;

  // Cheapest completion of a sequence whose next block starts at c = g.
  std::map<long, long> tail_cost{{1, 0}};
  std::function<long(long)> cost = [&](long g) -> long {
    if (auto it = tail_cost.find(g); it != tail_cost.end()) return it->second;
    long best = n + 1;
    for (long gp = 1; gp < g; ++gp) {
      if (g % gp != 0) continue;
      auto it = min_len.find(g / gp);
      if (it == min_len.end()) continue;
      best = std::min(best, it->second + cost(gp));
    }
    tail_cost[g] = best;
    return best;
  };

  // Canonical sequences have p_i < c_i throughout, and p1 does not divide c1
  // unless the germ is a single pair: (ga, g)(g, p) has the multiplicity
  // sequence of (ga + p, g). Later c_i are forced by the gcd rule.
  std::set<std::pair<long, CharPairSeq>> found;
  std::vector<CharPair> cur;
  std::function<void(long, long)> extend = [&](long g, long used) {
    if (g == 1) {
      found.insert({used, CharPairSeq(cur)});
      return;
    }
    for (long gp = 1; gp < g; ++gp) {
      if (g % gp != 0) continue;
      auto it = blocks.find(g / gp);
      if (it == blocks.end()) continue;
      for (const auto& bl : it->second) {
        if (used + bl.len + cost(gp) > n) continue;
        cur.push_back({g, gp * bl.b});
        extend(gp, used + bl.len);
        cur.pop_back();
      }
    }
  };
  // A tail product of blocks never exceeds the largest single block of the
  // same total length (F_m F_n <= F_{m+n-1}).
  std::vector<std::pair<long, long>> multipliers;  // (cost, g)
  for (long g = 1; g <= blocks.rbegin()->first; ++g)
    if (cost(g) <= n) multipliers.emplace_back(cost(g), g);
  std::sort(multipliers.begin(), multipliers.end());
  for (const auto& [a, v] : blocks)
    for (const auto& bl : v)
      for (const auto& [c, g] : multipliers) {
        if (bl.len + c > n) break;
        if (g * bl.b < 2 || (g > 1 && bl.b == 1)) continue;
        cur.push_back({g * a, g * bl.b});
        extend(g, bl.len);
        cur.pop_back();
      }
  std::vector<CharPairSeq> out;
  for (const auto& [_, seq] : found) out.push_back(seq);
  return out;
}

SearchResult enumerate(const SearchOptions& opt) {
  if (opt.cusps < 1 || opt.cusps > kMaxSearchCusps)
    throw DomainError("number of cusps must lie in [1, " + std::to_string(kMaxSearchCusps) + "]");
  if (opt.bound > kMaxSearchBound)
    throw DomainError("bound " + std::to_string(opt.bound) + " exceeds the configured ceiling " +
                      std::to_string(kMaxSearchBound));
  SearchResult result;
  const int min_q = 3;  // smallest exceptional divisor of a singular germ, [2,1,3]
  int single_max = opt.bound - min_q * (opt.cusps - 1);
  if (single_max < min_q) return result;

  struct Info {
    CharPairSeq seq;
    long q, M, I;
  };
  std::vector<Info> infos;
  for (auto& seq : singular_sequences(single_max)) {
    auto inv = cusp_invariants(seq);
    infos.push_back({seq, static_cast<long>(inv.mult_seq.size()), inv.M, inv.I});
  }

  // Multisets as non-decreasing index tuples, in lexicographic order.
  std::vector<std::vector<int>> tuples;
  std::vector<int> idx;
  std::function<void(int, long)> gen = [&](int start, long used) {
    if (static_cast<int>(idx.size()) == opt.cusps) {
      tuples.push_back(idx);
      if (static_cast<long>(tuples.size()) > kMaxSearchConfigs)
        throw DomainError("search space exceeds " + std::to_string(kMaxSearchConfigs) + " configurations");
      return;
    }
    long left_after = static_cast<long>(opt.cusps - idx.size() - 1) * min_q;
    for (int k = start; k < static_cast<int>(infos.size()); ++k) {
      if (used + infos[static_cast<std::size_t>(k)].q + left_after > opt.bound) break;
      idx.push_back(k);
      gen(k, used + infos[static_cast<std::size_t>(k)].q);
      idx.pop_back();
    }
  };
  gen(0, 0);
  result.configs_examined = static_cast<long>(tuples.size());

  std::vector<std::optional<CurveCandidate>> slots(tuples.size());
  std::atomic<std::size_t> next{0};
  const std::size_t chunk = 256;
  auto worker = [&]() {
    while (true) {
      std::size_t begin = next.fetch_add(chunk);
      if (begin >= tuples.size()) break;
      std::size_t end = std::min(tuples.size(), begin + chunk);
      for (std::size_t t = begin; t < end; ++t) {
        long S = 0;
        for (int k : tuples[t]) S += infos[static_cast<std::size_t>(k)].I - infos[static_cast<std::size_t>(k)].M;
        if (!solve_quadratic_degree(S)) continue;
        CuspConfig config;
        for (int k : tuples[t]) config.push_back({infos[static_cast<std::size_t>(k)].seq, 1});
        if (auto cand = candidate_from_config(config)) slots[t] = filter_candidate(std::move(*cand), opt.hyp);
      }
    }
  };
  unsigned n = std::max(1u, opt.threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& s : slots)
    if (s) result.candidates.push_back(std::move(*s));
  return result;
}

}  // namespace cuspcalc
