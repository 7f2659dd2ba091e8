#include "doctest.h"

#include <random>

#include "cuspcalc/error.hpp"
#include "cuspcalc/twig_calculus.hpp"
#include "oracles.hpp"

using namespace cuspcalc;

namespace {

Rational r(long p, long q = 1) { return Rational(Integer(p), Integer(q)); }

// E (self e) meeting one end of each chain; chains listed from E outward.
DivisorGraph star(int e_self, const std::vector<std::vector<int>>& arms) {
  DivisorGraph g;
  int e = g.add_component(e_self, "E", true);
  for (const auto& arm : arms) {
    int prev = e;
    for (int w : arm) {
      int id = g.add_component(-w);
      g.set_edge(prev, id, 1);
      prev = id;
    }
  }
  return g;
}

// E meeting the (-1)-curve of a [2,1,3] for each of n cusps.
DivisorGraph cusps_on_E(int n, int e_self) {
  DivisorGraph g;
  int e = g.add_component(e_self, "E", true);
  for (int i = 0; i < n; ++i) {
    int a = g.add_component(-2), u = g.add_component(-1), b = g.add_component(-3);
    g.set_edge(a, u, 1);
    g.set_edge(u, b, 1);
    g.set_edge(u, e, 1);
  }
  return g;
}

}  // namespace

TEST_CASE("discriminants of chains") {
  CHECK(discriminant(std::vector<int>{3, 2, 2, 3}) == 16);
  CHECK(discriminant(std::vector<int>{2, 5}) == 9);
  CHECK(discriminant(std::vector<int>{}) == 1);
  for (int k = 1; k <= 10; ++k) CHECK(discriminant(std::vector<int>(static_cast<std::size_t>(k), 2)) == k + 1);
  CHECK(discriminant_recurrence(std::vector<int>{2, 1, 3}) == 1);
  CHECK(discriminant_recurrence(std::vector<int>{3}) == 3);
  CHECK(discriminant_recurrence(std::vector<int>{2, 3}) == 5);
  auto g = chain_graph({2, 1, 3});
  CHECK(discriminant(g, {}) == 1);
  CHECK(discriminant(g, {0, 1, 2}) == 1);
}

TEST_CASE("recurrence equals the determinant on all short chains and random long ones") {
  for (int len = 1; len <= 5; ++len) {
    std::vector<int> w(static_cast<std::size_t>(len), 1);
    while (true) {
      CHECK(discriminant_recurrence(w) == discriminant(w));
      CHECK(Rational(discriminant(w)) == oracle::chain_det(w));
      std::size_t i = 0;
      while (i < w.size() && w[i] == 6) w[i++] = 1;
      if (i == w.size()) break;
      ++w[i];
    }
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> wt(1, 6), len(6, 12);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = wt(rng);
    REQUIRE(discriminant_recurrence(w) == discriminant(w));
    auto g = chain_graph(w);
    std::vector<int> ids(w.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    CHECK(discriminant_recurrence(g, OrderedChain::from_ids(g, ids)) == discriminant(w));
  }
}

TEST_CASE("ordered chains are validated") {
  auto g = chain_graph({2, 3, 4});
  CHECK_NOTHROW(OrderedChain::from_ids(g, {2, 1, 0}));
  CHECK_THROWS_AS(OrderedChain::from_ids(g, {0, 2}), DomainError);
  CHECK_THROWS_AS(OrderedChain::from_ids(g, {}), DomainError);
}

TEST_CASE("inductance and delta of single twigs") {
  auto a = chain_graph({3, 2, 2, 3});
  CHECK(inductance(a, OrderedChain::from_ids(a, {0, 1, 2, 3})) == r(7, 16));
  auto b = chain_graph({5, 2});
  CHECK(inductance(b, OrderedChain::from_ids(b, {0, 1})) == r(2, 9));
  auto t = chain_graph({2});
  CHECK(inductance(t, OrderedChain::from_ids(t, {0})) == r(1, 2));
  CHECK(delta(t, OrderedChain::from_ids(t, {0})) == r(1, 2));
  auto bad = chain_graph({2, 1});
  CHECK_THROWS_AS(inductance(bad, OrderedChain::from_ids(bad, {0, 1})), DomainError);
}

TEST_CASE("total inductance over maximal twigs") {
  CHECK(total_inductance(cusps_on_E(4, 20)) == r(10, 3));
  // twigs [2],[2],[3],[3],[x1],[x2],[x3] around two cusps and three extra arms
  DivisorGraph g = cusps_on_E(2, 30);
  int e = *g.e_id();
  for (int x : {4, 5, 7}) {
    int id = g.add_component(-x);
    g.set_edge(e, id, 1);
  }
  CHECK(total_inductance(g) == r(5, 3) + r(1, 4) + r(1, 5) + r(1, 7));
  // a cycle has no twigs
  DivisorGraph cyc;
  cyc.add_component(1, "E", true);
  cyc.add_component(-3);
  cyc.add_component(-3);
  cyc.set_edge(0, 1, 1);
  cyc.set_edge(1, 2, 1);
  cyc.set_edge(2, 0, 1);
  CHECK(total_inductance(cyc) == 0);
  CHECK(bark(cyc).empty());
}

TEST_CASE("preconditions are reported together") {
  auto nd = star(-5, {{2}, {2}, {2}});
  CHECK_THROWS_AS(total_inductance(nd), DomainError);
  auto sup = chain_graph({3, 1, 2});
  try {
    total_inductance(sup);
    FAIL("no error");
  } catch (const DomainError& e) {
    std::string w = e.what();
    CHECK(w.find("superfluous") != std::string::npos);
    CHECK(w.find("negative definite") != std::string::npos);
  }
}

TEST_CASE("bark of a twig") {
  auto g = star(5, {{3, 2}, {2}, {2}});
  // the arm [3,2] read from its tip is [2,3]
  auto bk = bark_twig(g, OrderedChain::from_ids(g, {2, 1}));
  CHECK(bk.at(2) == r(3, 5));
  CHECK(bk.at(1) == r(1, 5));
  CHECK(bk.at(1) == delta(g, OrderedChain::from_ids(g, {2, 1})));
  CHECK(intersection_number(g, bk, bk) == -r(3, 5));
  auto single = bark_twig(g, OrderedChain::from_ids(g, {3}));
  CHECK(single.at(3) == r(1, 2));
}

TEST_CASE("bark of a fork") {
  auto g = star(5, {{2}, {2}, {3}});
  auto bk = bark(g);
  CHECK(intersection_number(g, bk, bk) == -(r(1, 2) + r(1, 2) + r(1, 3)));
  CHECK(intersection_number(g, bk, bk) == -total_inductance(g));
  for (const auto& [id, c] : bk) {
    CHECK(c > 0);
    CHECK(c < 1);
  }
  auto z = zariski_negative_part(g, true);
  CHECK(z.divisor == bk);
  CHECK(z.hypothesis_asserted);
}

TEST_CASE("bark prime on (-2)-twigs") {
  auto g = star(5, {{2, 2, 2}, {2}, {3}});
  auto bp = bark_prime(g, {1, 2, 3});
  CHECK(bp.at(3) == r(3, 4));
  CHECK(bp.at(2) == r(2, 4));
  CHECK(bp.at(1) == r(1, 4));
  CHECK(bark_prime(g, {4}).at(4) == r(1, 2));
  CHECK(bark_prime(g, {}).empty());
  // defining property: Bk'.R = -1 on the tip, 0 elsewhere
  FractionalDivisor tip{{3, 1}}, mid{{2, 1}};
  CHECK(intersection_number(g, bp, tip) == -1);
  CHECK(intersection_number(g, bp, mid) == 0);
}
