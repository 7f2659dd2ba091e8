#include "doctest.h"

#include <random>

#include "cuspcalc/divisor_graph.hpp"
#include "cuspcalc/error.hpp"
#include "cuspcalc/graph_io.hpp"
#include "cuspcalc/notation.hpp"
#include "oracles.hpp"

using namespace cuspcalc;

namespace {

// Fork: center c with arms given in weight notation, listed from the center out.
DivisorGraph fork(int center_w, const std::vector<std::vector<int>>& arms) {
  DivisorGraph g;
  int c = g.add_component(-center_w);
  for (const auto& arm : arms) {
    int prev = c;
    for (int w : arm) {
      int id = g.add_component(-w);
      g.set_edge(prev, id, 1);
      prev = id;
    }
  }
  return g;
}

Rational r(long p, long q = 1) { return Rational(Integer(p), Integer(q)); }

}  // namespace

TEST_CASE("intersection numbers and K.T") {
  auto g = chain_graph({2, 1, 3});
  FractionalDivisor a{{0, 1}, {1, r(1, 2)}};
  FractionalDivisor b{{1, 2}, {2, 1}};
  // a.b = 1*2*(0.1) + 1/2*2*(1.1) + 1/2*1*(1.2) = 2 - 1 + 1/2
  CHECK(intersection_number(g, a, b) == r(3, 2));
  CHECK(intersection_number(g, a, b) == intersection_number(g, b, a));
  CHECK(canonical_dot(g, reduced(g)) == Rational(0 + -1 + 1));
}

TEST_CASE("intersection number is bilinear") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-5, 5);
  auto g = fork(1, {{2, 3}, {2}, {4, 2, 2}});
  for (int t = 0; t < 50; ++t) {
    FractionalDivisor a, b, c;
    for (int id : g.ids()) {
      a[id] = r(coef(rng), 3);
      b[id] = r(coef(rng), 2);
      c[id] = coef(rng);
    }
    Rational s = r(coef(rng), 7);
    CHECK(intersection_number(g, add(a, scale(b, s)), c) ==
          intersection_number(g, a, c) + s * intersection_number(g, b, c));
  }
}

TEST_CASE("arithmetic genus") {
  CHECK(arithmetic_genus(chain_graph({2, 1, 3}), {0, 1, 2}) == 0);
  CHECK(arithmetic_genus(chain_graph({5, 2, 2, 7}), {0, 1, 2, 3}) == 0);
  DivisorGraph cyc;
  for (int i = 0; i < 4; ++i) cyc.add_component(-2);
  for (int i = 0; i < 4; ++i) cyc.set_edge(i, (i + 1) % 4, 1);
  CHECK(arithmetic_genus(cyc, cyc.support()) == 1);
  CHECK(arithmetic_genus(cyc, {}) == 1);
  CHECK(arithmetic_genus(fork(1, {{2}, {3}, {2, 2}}), {0, 1, 2, 3, 4}) == 0);
}

TEST_CASE("branching numbers, tips and branching components") {
  auto g = chain_graph({2, 1, 3});
  CHECK(branching_number(g, 1) == 2);
  CHECK(branching_number(g, 0) == 1);
  DivisorGraph t;
  t.add_component(-1);
  t.add_component(1, "E", true);
  t.set_edge(0, 1, 2);
  CHECK(branching_number(t, 0) == 2);
  auto f = fork(1, {{2}, {2}, {1, 2, 2}});
  CHECK(branching_components(f) == std::vector<int>{0});
  CHECK(tips(f).size() == 3);
}

TEST_CASE("maximal twigs of a fork, a chain and a point") {
  auto f = fork(3, {{2}, {2}, {1, 2, 2}});
  auto tw = maximal_twigs(f);
  REQUIRE(tw.size() == 3);
  CHECK(tw[0] == std::vector<int>{1});
  CHECK(tw[1] == std::vector<int>{2});
  CHECK(tw[2] == std::vector<int>{5, 4, 3});

  auto c = chain_graph({2, 2, 2, 2});
  auto ct = maximal_twigs(c);
  REQUIRE(ct.size() == 2);
  CHECK(ct[0] == std::vector<int>{0});
  CHECK(ct[1] == std::vector<int>{3, 2, 1});

  auto p = chain_graph({4});
  CHECK(maximal_twigs(p).size() == 1);
  CHECK(tips(p).size() == 1);

  DivisorGraph cyc;
  for (int i = 0; i < 3; ++i) cyc.add_component(-2);
  for (int i = 0; i < 3; ++i) cyc.set_edge(i, (i + 1) % 3, 1);
  CHECK_THROWS_AS(maximal_twigs(cyc), DomainError);
}

TEST_CASE("negative definiteness") {
  auto g = chain_graph({2, 1, 3});
  CHECK(is_negative_definite(g, g.support()));
  auto h = chain_graph({1, 2, 2, 2, 1});
  CHECK_FALSE(is_negative_definite(h, h.support()));
  auto k = chain_graph({2, 2});
  CHECK(is_negative_definite(k, k.support()));
}

TEST_CASE("negative definiteness matches the determinant sign sequence and a lattice search") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> w(1, 4), len(1, 5);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> ws(static_cast<std::size_t>(len(rng)));
    for (auto& x : ws) x = w(rng);
    auto g = chain_graph(ws);
    bool nd = is_negative_definite(g, g.support());
    CHECK(nd == oracle::chain_negative_definite(ws));
    if (nd) {
      // necessary condition: x.Q.x < 0 on all nonzero x in [-2,2]^k
      std::vector<int> x(ws.size(), -2);
      while (true) {
        bool zero = std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
        if (!zero) {
          FractionalDivisor d;
          for (std::size_t i = 0; i < x.size(); ++i) d[static_cast<int>(i)] = x[i];
          CHECK(intersection_number(g, d, d) < 0);
        }
        std::size_t i = 0;
        while (i < x.size() && x[i] == 2) x[i++] = -2;
        if (i == x.size()) break;
        ++x[i];
      }
    }
  }
}

TEST_CASE("superfluous curves and snc-minimality") {
  CHECK_FALSE(is_snc_minimal(chain_graph({3, 1, 2})));
  auto g = chain_graph({2, 1, 3});
  int e = g.add_component(-4);
  g.set_edge(1, e, 1);
  CHECK(is_snc_minimal(g));
  DivisorGraph t;
  t.add_component(-1);
  t.add_component(-3);
  t.set_edge(0, 1, 2);
  CHECK(is_snc_minimal(t));
}

TEST_CASE("builders reject bad input") {
  DivisorGraph g;
  g.add_component(-2, "", true);
  CHECK_THROWS_AS(g.add_component(-2, "", true), DomainError);
  CHECK_THROWS_AS(g.set_edge(0, 0, 1), DomainError);
  CHECK_THROWS_AS(g.set_edge(0, 7, 1), DomainError);
  CHECK_THROWS_AS(g.require_ksq(), DomainError);
}

TEST_CASE("graph text round trip") {
  const std::string text =
      "{\n"
      "  \"components\": [\n"
      "    {\"id\": 0, \"selfint\": -2},\n"
      "    {\"id\": 1, \"selfint\": -1, \"label\": \"L\"},\n"
      "    {\"id\": 4, \"selfint\": 5, \"label\": \"E\", \"is_E\": true}\n"
      "  ],\n"
      "  \"edges\": [\n"
      "    [0, 1, 1],\n"
      "    [1, 4, 2]\n"
      "  ],\n"
      "  \"ksq\": 7\n"
      "}\n";
  auto g = parse_graph(text);
  CHECK(serialize_graph(g) == text);
  CHECK(parse_graph(serialize_graph(g)) == g);
  CHECK(g.multiplicity(4, 1) == 2);
  CHECK(*g.e_id() == 4);

  auto loose = parse_graph(R"({"edges": [[1,0,1]], "components": [{"selfint": -3, "id": 1}, {"id": 0, "selfint": -1}]})");
  CHECK(serialize_graph(parse_graph(serialize_graph(loose))) == serialize_graph(loose));
  CHECK(serialize_graph(DivisorGraph{}) == "{\n  \"components\": [],\n  \"edges\": []\n}\n");
}

TEST_CASE("graph parse errors carry positions") {
  try {
    parse_graph("{\n  \"components\": [\n    {\"id\": 0,, \"selfint\": -2}\n  ], \"edges\": []\n}");
    FAIL("no error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("3:") != std::string::npos);
  }
  try {
    parse_graph(R"({"components": [{"id": 0, "selfint": -2}, {"id": 1, "selfint": "x"}], "edges": []})");
    FAIL("no error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("$.components[1].selfint") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_graph(R"({"components": [], "edges": [], "extra": 1})"), DomainError);
  CHECK_THROWS_AS(parse_graph(R"({"components": [{"id": 0, "selfint": -2}, {"id": 1, "selfint": -2}], "edges": [[0,1,1],[1,0,1]]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_graph(R"({"components": [{"id": 0, "selfint": -2}, {"id": 1, "selfint": -2}], "edges": [[0,1,0]]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_graph(R"({"components": [{"id": 0, "selfint": -2}], "edges": [[0,3,1]]})"), DomainError);
}

TEST_CASE("bracket notation") {
  CHECK(format_chain({2, 1, 3}) == "[2,1,3]");
  CHECK(format_chain({5, 1, 2, 2, 2}) == "[5,1,(2)_3]");
  CHECK(format_chain({5, 1, 2, 2, 2}, false) == "[5,1,2,2,2]");
  CHECK(format_chain({2, 2, 1}) == "[2,2,1]");
  CHECK(format_sequence({9, 7, 2}) == "(9,7,2)");
  CHECK(format_divisor({{0, r(1, 2)}, {3, 1}}) == "{0: 1/2, 3: 1}");
  // lowest id printed at the right end
  auto g = chain_graph({3, 1, 2});
  CHECK(describe_graph(g) == "[2,1,3]");
}
