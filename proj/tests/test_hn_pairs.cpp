#include "doctest.h"

#include <algorithm>

#include "cuspcalc/birational.hpp"
#include "cuspcalc/config_search.hpp"
#include "cuspcalc/error.hpp"
#include "cuspcalc/hn_pairs.hpp"
#include "cuspcalc/notation.hpp"
#include "cuspcalc/twig_calculus.hpp"
#include "oracles.hpp"

using namespace cuspcalc;

namespace {

CharPairSeq P(const char* s) { return CharPairSeq::parse(s); }

std::vector<int> chain_weights(const DivisorGraph& g) {
  auto order = chain_order(g, g.support());
  REQUIRE(order);
  if (order->size() > 1 && order->back() > order->front()) std::reverse(order->begin(), order->end());
  return weights_along(g, *order);
}

}  // namespace

TEST_CASE("pair sequences parse and validate") {
  CHECK(P(" ( 16 , 9 ) ").str() == "(16,9)");
  CHECK(P("(4,2)(2,1)").pairs().size() == 2);
  CHECK(P("(1,0)").is_smooth());
  CHECK(CharPairSeq().is_smooth());
  CHECK(P("(3,2)(1,1)").is_singular());
  CHECK_THROWS_AS(P("(3,2"), DomainError);
  CHECK_THROWS_AS(P("3,2)"), DomainError);
  CHECK_THROWS_AS(P(""), DomainError);
  CHECK_THROWS_AS(P("(2,3)"), DomainError);
  CHECK_THROWS_AS(P("(4,2)"), DomainError);
  CHECK_THROWS_AS(P("(4,2)(3,1)"), DomainError);
  CHECK_THROWS_AS(P("(1,0)(2,1)"), DomainError);
  CHECK_THROWS_AS(P("(5,0)"), DomainError);
  try {
    P("(3,2)x");
    FAIL("no error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("character 6") != std::string::npos);
  }
}

TEST_CASE("multiplicity sequences and invariants") {
  CHECK(multiplicity_sequence(P("(3,2)")) == std::vector<long>{2, 1, 1});
  CHECK(multiplicity_sequence(P("(16,9)")) == std::vector<long>{9, 7, 2, 2, 2, 1, 1});
  CHECK(multiplicity_sequence(P("(3,2)(1,1)(1,1)")) == std::vector<long>{2, 1, 1, 1, 1});
  auto a = cusp_invariants(P("(3,2)"));
  CHECK(a.M == 4);
  CHECK(a.I == 6);
  auto b = cusp_invariants(P("(16,9)"));
  CHECK(b.M == 24);
  CHECK(b.I == 144);
  auto s = cusp_invariants(P("(1,0)"));
  CHECK(s.M == 0);
  CHECK(s.I == 0);
  CHECK(s.mult_seq.empty());
}

TEST_CASE("euclid expansion agrees with repeated subtraction") {
  for (long c = 1; c <= 60; ++c)
    for (long p = 1; p <= c; ++p) {
      auto e = euclid_expansion(c, p);
      CHECK(e == oracle::block_mults(c, p));
      long s1 = 0, s2 = 0;
      for (long m : e) {
        s1 += m;
        s2 += m * m;
      }
      CHECK(s1 == c + p - std::gcd(c, p));
      CHECK(s2 == c * p);
    }
  CHECK(euclid_expansion(5, 0).empty());
  CHECK_THROWS_AS(euclid_expansion(2, 3), DomainError);
}

TEST_CASE("exceptional graphs of the worked examples") {
  auto a = build_exceptional_graph(P("(3,2)"));
  CHECK(chain_weights(a.graph) == std::vector<int>{2, 1, 3});
  CHECK(a.minus_one() == 2);
  CHECK(a.germ_contact == std::map<int, long>{{2, 1}});
  auto b = build_exceptional_graph(P("(16,9)"));
  CHECK(chain_weights(b.graph) == std::vector<int>{5, 2, 1, 3, 2, 2, 3});
  for (int n = 3; n <= 9; ++n) {
    auto ex = build_exceptional_graph(CharPairSeq({{2 * n - 1, n}}));
    std::vector<int> w{n, 1};
    w.insert(w.end(), static_cast<std::size_t>(n - 2), 2);
    w.push_back(3);
    CHECK(chain_weights(ex.graph) == w);
    std::vector<long> mult{n, n - 1};
    mult.insert(mult.end(), static_cast<std::size_t>(n - 1), 1);
    CHECK(ex.mult_seq == mult);
  }
  CHECK_THROWS_AS(build_exceptional_graph(P("(1,0)")), DomainError);
}

TEST_CASE("exceptional graphs are contractible, unimodular and negative definite") {
  for (const auto& seq : singular_sequences(10)) {
    auto ex = build_exceptional_graph(seq);
    auto all = ex.graph.support();
    CHECK(discriminant(ex.graph, all) == 1);
    CHECK(is_negative_definite(ex.graph, all));
    CHECK(contracts_to_smooth_point(ex.graph, all).contracts);
    int ones = 0;
    for (int id : ex.graph.ids()) ones += ex.graph.self_int(id) == -1;
    CHECK(ones == 1);
    CHECK(ex.mult_seq == multiplicity_sequence(seq));
  }
}

TEST_CASE("pairs from chain inverts the resolution") {
  for (const auto& seq : singular_sequences(10)) {
    CHECK(pairs_from_chain(build_exceptional_graph(seq).graph) == seq);
    CHECK(canonical_form(seq) == seq);
  }
  for (const char* s : {"(3,2)(1,1)", "(5,2)(1,1)(1,1)", "(6,4)(2,1)(1,1)"})
    CHECK(pairs_from_chain(build_exceptional_graph(P(s)).graph) == P(s));
  CHECK(pairs_from_chain(chain_graph({2, 1, 3})) == P("(3,2)"));
  CHECK(pairs_from_chain(chain_graph({5, 2, 1, 3, 2, 2, 3})) == P("(16,9)"));
  for (int k = 0; k <= 4; ++k) {
    std::vector<int> w(static_cast<std::size_t>(k), 2);
    w.push_back(1);
    auto seq = pairs_from_chain(chain_graph(w));
    std::vector<CharPair> expect{{1, 0}};
    expect.insert(expect.end(), static_cast<std::size_t>(k + 1), CharPair{1, 1});
    CHECK(seq == CharPairSeq(expect));
    auto built = chain_weights(build_exceptional_graph(seq).graph);
    std::reverse(built.begin(), built.end());
    CHECK(built == w);
  }
  CHECK_THROWS_AS(pairs_from_chain(chain_graph({2, 1, 4})), DomainError);
  CHECK_THROWS_AS(pairs_from_chain(chain_graph({1, 1})), DomainError);
}

TEST_CASE("canonical forms") {
  CHECK(canonical_form(P("(4,2)(2,1)")) == P("(5,2)"));
  CHECK(canonical_form(P("(3,1)")) == P("(1,0)(1,1)(1,1)(1,1)"));
  CHECK(canonical_form(P("(6,6)(6,2)(2,1)")) == P("(8,6)(2,1)"));
  CHECK(pairs_from_multiplicity_sequence({}) == CharPairSeq());
  CHECK_THROWS_AS(pairs_from_multiplicity_sequence({1, 2}), DomainError);
  CHECK_THROWS_AS(pairs_from_multiplicity_sequence({3, 1}), DomainError);
}

TEST_CASE("weak resolution and tangency") {
  auto w = build_weak_resolution_graph(P("(3,2)"));
  CHECK(w.graph.size() == 1);
  CHECK(w.graph.self_int(0) == -1);
  CHECK(w.germ_contact == std::map<int, long>{{0, 2}});
  for (int m = 1; m <= 6; ++m) {
    auto seq = CharPairSeq({{2 * m + 1, 2}});
    auto weak = build_weak_resolution_graph(seq);
    std::vector<int> expect(static_cast<std::size_t>(m - 1), 2);
    expect.push_back(1);
    auto order = chain_order(weak.graph, weak.graph.support());
    REQUIRE(order);
    CHECK(weights_along(weak.graph, *order) == expect);
    CHECK(weak.germ_contact.size() == 1);
    CHECK(weak.germ_contact.begin()->second == 2);
    CHECK(weak.germ_contact.begin()->first == weak.minus_one());
  }
  for (const auto& seq : singular_sequences(9)) {
    auto full = build_exceptional_graph(seq);
    auto done = resolve_tangency(build_weak_resolution_graph(seq));
    CHECK(done.graph == full.graph);
    CHECK(done.germ_contact == full.germ_contact);
    CHECK(done.tau == full.tau);
    CHECK(done.s == full.s);
  }
  auto e = with_germ(build_weak_resolution_graph(P("(3,2)")), 3);
  CHECK(e.multiplicity(0, 1) == 2);
  CHECK(*e.e_id() == 1);
}

TEST_CASE("degree-genus residuals") {
  std::vector<CuspWithContact> cubic{{P("(3,2)"), 1}};
  CHECK(degree_genus_equations(cubic, 3, -3) == std::array<long, 3>{0, 0, 0});
  std::vector<CuspWithContact> quartic(3, {P("(3,2)"), 1});
  CHECK(degree_genus_equations(quartic, 4, 2) == std::array<long, 3>{0, 0, 0});
  CHECK(degree_genus_equations(cubic, 4, -3) != std::array<long, 3>{0, 0, 0});
  CHECK(degree_genus_equations(quartic, 5, 2) != std::array<long, 3>{0, 0, 0});
  std::vector<CuspWithContact> bad{{P("(3,2)"), 0}};
  CHECK_THROWS_AS(degree_genus_equations(bad, 3, -3), DomainError);
}
