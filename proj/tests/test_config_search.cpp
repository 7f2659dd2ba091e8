#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>

#include "cuspcalc/config_search.hpp"
#include "cuspcalc/error.hpp"
#include "cuspcalc/results_io.hpp"
#include "cuspcalc/scenarios.hpp"
#include "oracles.hpp"

using namespace cuspcalc;

namespace {

CuspConfig cusps(const char* pairs, int count, long rho = 1) {
  return CuspConfig(static_cast<std::size_t>(count), CuspWithContact{CharPairSeq::parse(pairs), rho});
}

// S = sum rho (rho I - M) from block-by-block subtraction.
long oracle_S(const CuspConfig& cfg) {
  long S = 0;
  for (const auto& cu : cfg) {
    long m = 0, i = 0;
    for (const auto& cp : cu.pairs.pairs())
      for (long mu : oracle::block_mults(cp.c, cp.p)) {
        m += mu;
        i += mu * mu;
      }
    S += cu.rho * (cu.rho * i - m);
  }
  return S;
}

std::optional<long> oracle_degree(const CuspConfig& cfg) {
  auto r = oracle::degree_roots(oracle_S(cfg));
  if (r.empty()) return std::nullopt;
  return r.front();
}

}  // namespace

TEST_CASE("degree from the genus formula agrees with the oracle") {
  auto seqs = singular_sequences(8);
  for (const auto& a : seqs)
    for (long rho : {1L, 2L}) {
      CuspConfig one{{a, rho}};
      CHECK(solve_degree(one) == oracle_degree(one));
    }
  for (std::size_t x = 0; x < seqs.size(); ++x)
    for (std::size_t y = x; y < seqs.size(); ++y) {
      CuspConfig two{{seqs[x], 1}, {seqs[y], 1}};
      CHECK(solve_degree(two) == oracle_degree(two));
    }
  CHECK_FALSE(solve_degree(cusps("(16,9)", 1)));
  CHECK(solve_degree(cusps("(3,2)", 1)) == 3L);
  CHECK(solve_degree(cusps("(3,2)", 3)) == 4L);
}

TEST_CASE("cuspidal cubic candidate") {
  auto c = candidate_from_config(cusps("(3,2)", 1));
  REQUIRE(c);
  CHECK(c->d == 3);
  CHECK(c->gamma == -3);
  CHECK(c->hash_D == 4);
  CHECK(*c->graph.ksq() == 6);
  CHECK(c->tau == std::vector<int>{2});
  CHECK(c->s == std::vector<int>{1});
  CHECK(c->gamma0() == -5);
  CHECK(c->tau_star() == 0);
  CHECK_FALSE(c->ind_D);
  CHECK(c->ind_note.find("not negative definite") != std::string::npos);
  auto e = c->graph.e_id();
  REQUIRE(e);
  CHECK(c->graph.self_int(*e) == 3);
  CHECK(degree_genus_equations(c->config, c->d, c->gamma) == std::array<long, 3>{0, 0, 0});
}

TEST_CASE("tricuspidal quartic candidate") {
  auto c = candidate_from_config(cusps("(3,2)", 3));
  REQUIRE(c);
  CHECK(c->d == 4);
  CHECK(c->gamma == 2);
  CHECK(c->hash_D == 10);
  CHECK(*c->graph.ksq() == 0);
  CHECK(*c->ind_D == Rational(5, 2));
  CHECK(degree_genus_equations(c->config, c->d, c->gamma) == std::array<long, 3>{0, 0, 0});
}

TEST_CASE("candidate construction errors") {
  CHECK_FALSE(candidate_from_config({}));
  CHECK_FALSE(candidate_from_config(cusps("(16,9)", 1)));
  CHECK_THROWS_AS(candidate_from_config(cusps("(3,2)", 1, 0)), DomainError);
  CHECK_THROWS_AS(candidate_from_config({{CharPairSeq(), 1}}), DomainError);
}

TEST_CASE("filters") {
  auto q = *candidate_from_config(cusps("(3,2)", 3));
  auto none = filter_candidate(q, {});
  CHECK(none.filters.at("matsuoka_sakai").status == FilterStatus::Pass);
  CHECK(*none.filters.at("matsuoka_sakai").slack == 2);
  CHECK(none.filters.at("kumar_murthy").status == FilterStatus::Fail);
  CHECK(*none.filters.at("kumar_murthy").slack == -2);
  for (const char* k : {"bmy", "gamma_tau_range", "twig_budget"}) {
    CHECK(none.filters.at(k).status == FilterStatus::Skipped);
    CHECK_FALSE(none.filters.at(k).slack);
  }

  auto p3 = filter_candidate(q, {3, 0});
  CHECK(p3.filters.at("bmy").status == FilterStatus::Fail);
  CHECK(*p3.filters.at("bmy").slack == Rational(-1, 2));
  CHECK(p3.filters.at("twig_budget").status == FilterStatus::Pass);
  CHECK(*p3.filters.at("twig_budget").slack == Rational(1, 2));
  CHECK(p3.filters.at("gamma_tau_range").status == FilterStatus::Fail);

  // ind = 10/3 under p2 = 3 leaves slack -4/3 + 1 = -1/3 in p2 + i + ind <= 5
  CurveCandidate fake = q;
  fake.ind_D = Rational(10, 3);
  auto f = filter_candidate(fake, {3, 0});
  CHECK(*f.filters.at("bmy").slack == Rational(-4, 3));
  CHECK(f.filters.at("bmy").status == FilterStatus::Fail);
  auto f2 = filter_candidate(fake, {1, 0});
  CHECK(*f2.filters.at("bmy").slack == Rational(2, 3));

  auto cubic = *candidate_from_config(cusps("(3,2)", 1));
  auto fc = filter_candidate(cubic, {2, 0});
  CHECK(fc.filters.at("bmy").status == FilterStatus::Skipped);
  CHECK(fc.filters.at("bmy").detail.find("undefined") != std::string::npos);

  CHECK(to_string(FilterStatus::Pass) == "pass");
  CHECK(to_string(FilterStatus::Fail) == "fail");
  CHECK(to_string(FilterStatus::Skipped) == "skipped");
}

TEST_CASE("singular sequences match a brute force") {
  const int n = 7;
  std::set<CharPairSeq> brute;
  std::vector<CharPair> cur;
  std::function<void(long, int)> ext = [&](long c, int depth) {
    if (c == 1) {
      CharPairSeq s(cur);
      if (multiplicity_sequence(s).size() > static_cast<std::size_t>(n)) return;
      auto cf = canonical_form(s);
      bool ok = cf.is_singular();
      for (const auto& p : cf.pairs()) ok = ok && !(p.c == 1 && p.p == 1);
      if (ok) brute.insert(cf);
      return;
    }
    if (depth > 5) return;
    for (long p = 1; p < c; ++p) {
      cur.push_back({c, p});
      ext(std::gcd(c, p), depth + 1);
      cur.pop_back();
    }
  };
  for (long c1 = 3; c1 <= 40; ++c1)
    for (long p1 = 2; p1 < c1; ++p1) {
      cur = {{c1, p1}};
      ext(std::gcd(c1, p1), 0);
    }
  auto fast = singular_sequences(n);
  CHECK(std::set<CharPairSeq>(fast.begin(), fast.end()) == brute);
  CHECK(fast.size() == brute.size());

  for (std::size_t k = 0; k < fast.size(); ++k) {
    CHECK(canonical_form(fast[k]) == fast[k]);
    CHECK(build_exceptional_graph(fast[k]).graph.size() <= static_cast<std::size_t>(n));
    if (k > 0) {
      auto a = multiplicity_sequence(fast[k - 1]).size(), b = multiplicity_sequence(fast[k]).size();
      CHECK((a < b || (a == b && fast[k - 1] < fast[k])));
    }
  }
  CHECK(singular_sequences(2).empty());
  CHECK(singular_sequences(3) == std::vector<CharPairSeq>{CharPairSeq::parse("(3,2)")});
}

TEST_CASE("enumerate small bounds") {
  SearchOptions opt;
  opt.cusps = 1;
  opt.bound = 3;
  auto r = enumerate(opt);
  CHECK(r.configs_examined == 1);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].d == 3);
  CHECK(r.candidates[0].config == cusps("(3,2)", 1));

  opt.bound = 2;
  auto empty = enumerate(opt);
  CHECK(empty.configs_examined == 0);
  CHECK(empty.candidates.empty());

  opt.cusps = 3;
  opt.bound = 9;
  auto three = enumerate(opt);
  bool quartic = false;
  for (const auto& c : three.candidates) {
    CHECK(degree_genus_equations(c.config, c.d, c.gamma) == std::array<long, 3>{0, 0, 0});
    CHECK(solve_degree(c.config) == oracle_degree(c.config));
    if (c.config == cusps("(3,2)", 3)) quartic = c.d == 4;
  }
  CHECK(quartic);
}

TEST_CASE("enumerate ceilings") {
  SearchOptions opt;
  opt.cusps = 0;
  CHECK_THROWS_AS(enumerate(opt), DomainError);
  opt.cusps = kMaxSearchCusps + 1;
  CHECK_THROWS_AS(enumerate(opt), DomainError);
  opt.cusps = 1;
  opt.bound = kMaxSearchBound + 1;
  CHECK_THROWS_AS(enumerate(opt), DomainError);
}

TEST_CASE("enumerate is independent of the thread count") {
  SearchOptions opt;
  opt.cusps = 2;
  opt.bound = 11;
  opt.hyp.p2 = 2;
  opt.threads = 1;
  auto one = enumerate(opt);
  opt.threads = 4;
  auto four = enumerate(opt);
  CHECK(one.configs_examined == four.configs_examined);
  CHECK(one.candidates == four.candidates);
  CHECK_FALSE(one.candidates.empty());
}

TEST_CASE("scenarios") {
  CHECK(scenario_names().size() == 9);
  for (const auto& name : scenario_names()) {
    auto r = run_scenario(name);
    CHECK_MESSAGE(r.matches, name);
    CHECK(r.name == name);
    CHECK(std::is_sorted(r.solutions.begin(), r.solutions.end()));
    for (const auto& t : r.solutions) CHECK(t.size() == r.variables.size());
    if (r.expected) CHECK(r.solutions == *r.expected);
    CHECK(run_scenario(name) == r);
  }
  CHECK_THROWS_AS(run_scenario("no-such-scenario"), DomainError);

  auto bmy = run_scenario("mult3-bmy-filter");
  CHECK(bmy.solutions == std::vector<Tuple>{{5, 7, 2, 1, 2}, {5, 8, 2, 4, 2}});
  auto jump = run_scenario("jump-final");
  for (const auto& t : jump.solutions) CHECK(t[2] == 4);
}

TEST_CASE("results round trip") {
  SearchOptions opt;
  opt.cusps = 3;
  opt.bound = 9;
  opt.hyp.p2 = 3;
  std::vector<ResultRecord> recs;
  for (const auto& c : enumerate(opt).candidates) recs.emplace_back(c);
  auto cubic = *candidate_from_config(cusps("(3,2)", 1));
  recs.emplace_back(cubic);
  recs.emplace_back(run_scenario("zeta0-final-pair"));
  recs.emplace_back(run_scenario("jump-final"));

  auto text = results_to_json(recs);
  auto back = results_from_json(text);
  CHECK(back == recs);
  CHECK(results_to_json(back) == text);

  auto path = std::filesystem::temp_directory_path() / "cuspcalc_results_test.json";
  persist_results(path.string(), recs);
  CHECK(load_results(path.string()) == recs);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(results_from_json("[{"), DomainError);
  CHECK_THROWS_AS(results_from_json("{}"), DomainError);
  CHECK_THROWS_AS(results_from_json("[{\"kind\": \"other\"}]"), DomainError);
  CHECK_THROWS_AS(load_results("/nonexistent/dir/results.json"), DomainError);
}
