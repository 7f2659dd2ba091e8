#include "cuspcalc/twig_calculus.hpp"

#include <sstream>
#include <stdexcept>

#include "cuspcalc/error.hpp"
#include "cuspcalc/linalg.hpp"

namespace cuspcalc {

OrderedChain OrderedChain::from_ids(const DivisorGraph& g, std::vector<int> ids) {
  if (ids.empty()) throw DomainError("empty chain");
  Support s(ids.begin(), ids.end());
  if (s.size() != ids.size()) throw DomainError("chain lists a component twice");
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      int m = g.multiplicity(ids[i], ids[j]);
      if (j == i + 1 && m != 1)
        throw DomainError("components " + std::to_string(ids[i]) + " and " + std::to_string(ids[j]) +
                          " are consecutive but do not meet once");
      if (j > i + 1 && m != 0)
        throw DomainError("components " + std::to_string(ids[i]) + " and " + std::to_string(ids[j]) +
                          " are not consecutive but meet");
    }
  OrderedChain c;
  c.ids_ = std::move(ids);
  return c;
}

Integer discriminant(const DivisorGraph& g, const Support& t) {
  return linalg::determinant(neg_intersection_matrix(g, {t.begin(), t.end()}));
}

Integer discriminant(const std::vector<int>& weights) {
  DivisorGraph g = chain_graph(weights);
  return discriminant(g, g.support());
}

Integer discriminant_recurrence(const std::vector<int>& weights) {
  Integer next = 1, after = 0;  // d of the tail starting one and two places further
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
    Integer cur = *it * next - after;
    after = next;
    next = cur;
  }
  return next;
}

Integer discriminant_recurrence(const DivisorGraph& g, const OrderedChain& chain) {
  std::vector<int> w;
  for (int id : chain.ids()) w.push_back(-g.self_int(id));
  return discriminant_recurrence(w);
}

namespace {

void require_inductance_pre(const DivisorGraph& g, const OrderedChain& chain) {
  for (int id : chain.ids())
    if (g.self_int(id) == -1)
      throw DomainError("chain contains the (-1)-curve " + std::to_string(id));
  if (!is_negative_definite(g, chain.support())) throw DomainError("chain is not negative definite");
}

Support tail(const OrderedChain& chain, std::size_t from) {
  return {chain.ids().begin() + static_cast<long>(from), chain.ids().end()};
}

}  // namespace

Rational inductance(const DivisorGraph& g, const OrderedChain& chain) {
  require_inductance_pre(g, chain);
  return Rational(discriminant(g, tail(chain, 1)), discriminant(g, chain.support()));
}

Rational delta(const DivisorGraph& g, const OrderedChain& chain) {
  require_inductance_pre(g, chain);
  return Rational(Integer(1), discriminant(g, chain.support()));
}

void check_twig_preconditions(const DivisorGraph& g) {
  std::vector<std::string> problems;
  Support all = g.support();
  if (!is_connected(g, all)) problems.push_back("graph is not connected");
  if (!g.is_snc()) problems.push_back("graph is not snc");
  for (int id : g.ids())
    if (is_superfluous(g, id)) problems.push_back("superfluous (-1)-curve " + std::to_string(id));
  if (!all.empty() && is_negative_definite(g, all)) problems.push_back("intersection matrix is negative definite");
  if (problems.empty()) {
    for (const auto& twig : maximal_twigs_unchecked(g)) {
      Support s(twig.begin(), twig.end());
      if (!is_negative_definite(g, s))
        problems.push_back("maximal twig at tip " + std::to_string(twig.front()) + " is not negative definite");
    }
  }
  if (!problems.empty()) {
    std::ostringstream os;
    os << "bark preconditions violated:";
    for (const auto& p : problems) os << " " << p << ";";
    std::string s = os.str();
    s.pop_back();
    throw DomainError(s);
  }
}

Rational total_inductance(const DivisorGraph& g) {
  check_twig_preconditions(g);
  Rational sum;
  for (const auto& twig : maximal_twigs_unchecked(g)) sum += inductance(g, OrderedChain::from_ids(g, twig));
  return sum;
}

Rational total_delta(const DivisorGraph& g) {
  check_twig_preconditions(g);
  Rational sum;
  for (const auto& twig : maximal_twigs_unchecked(g)) sum += delta(g, OrderedChain::from_ids(g, twig));
  return sum;
}

namespace {

// Solves Q x = b on the given ordered support.
std::vector<Rational> solve_on(const DivisorGraph& g, const std::vector<int>& order,
                               const std::vector<Rational>& rhs) {
  linalg::RatMatrix q(order.size(), std::vector<Rational>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      q[i][j] = i == j ? Rational(g.self_int(order[i])) : Rational(g.multiplicity(order[i], order[j]));
  auto x = linalg::solve(q, rhs);
  if (!x) throw DomainError("singular defining system (support not negative definite)");
  return *x;
}

}  // namespace

FractionalDivisor bark_twig(const DivisorGraph& g, const OrderedChain& twig) {
  g.require_snc("bark_twig");
  const auto& ids = twig.ids();
  if (branching_number(g, ids.front()) != 1)
    throw DomainError("component " + std::to_string(ids.front()) + " is not a tip of the graph");
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (branching_number(g, ids[i]) != 2)
      throw DomainError("component " + std::to_string(ids[i]) + " of the twig has branching number " +
                        std::to_string(branching_number(g, ids[i])));
  if (!is_negative_definite(g, twig.support())) throw DomainError("twig is not negative definite");

  Integer d = discriminant(g, twig.support());
  FractionalDivisor closed;
  for (std::size_t j = 0; j < ids.size(); ++j) closed[ids[j]] = Rational(discriminant(g, tail(twig, j + 1)), d);

  std::vector<Rational> rhs;
  for (int id : ids) rhs.emplace_back(branching_number(g, id) - 2);
  auto x = solve_on(g, ids, rhs);
  for (std::size_t j = 0; j < ids.size(); ++j)
    if (x[j] != closed[ids[j]])
      throw std::logic_error("bark closed form disagrees with linear solve at component " +
                             std::to_string(ids[j]));
  return closed;
}

FractionalDivisor bark(const DivisorGraph& g) {
  check_twig_preconditions(g);
  FractionalDivisor out;
  for (const auto& twig : maximal_twigs_unchecked(g))
    for (const auto& [id, c] : bark_twig(g, OrderedChain::from_ids(g, twig))) out[id] += c;
  return out;
}

FractionalDivisor bark_prime(const DivisorGraph& g, const Support& delta_minus) {
  FractionalDivisor out;
  for (const Support& comp : connected_components(g, delta_minus)) {
    auto order = chain_order(g, comp);
    if (!order) throw DomainError("support of Bk' has a non-chain connected component");
    if (!is_negative_definite(g, comp)) throw DomainError("support of Bk' is not negative definite");
    bool has_tip = false;
    for (int id : comp)
      if (branching_number(g, id) <= 1) has_tip = true;
    if (!has_tip)
      throw DomainError("support of Bk' has a component containing no tip of the graph (not a twig)");
    std::vector<Rational> rhs;
    for (int id : *order) rhs.emplace_back(branching_number(g, id) - 2);
    auto x = solve_on(g, *order, rhs);
    for (std::size_t i = 0; i < order->size(); ++i) out[(*order)[i]] = x[i];
  }
  return out;
}

ZariskiNegativePart zariski_negative_part(const DivisorGraph& g, bool hypothesis_asserted) {
  return {bark(g), hypothesis_asserted};
}

}  // namespace cuspcalc
