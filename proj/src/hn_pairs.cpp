#include "cuspcalc/hn_pairs.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cuspcalc/birational.hpp"
#include "cuspcalc/error.hpp"

namespace cuspcalc {

CharPairSeq::CharPairSeq(std::vector<CharPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw DomainError("empty sequence of characteristic pairs");
  auto fail = [&](const std::string& why) { throw DomainError("inadmissible pair sequence " + str() + ": " + why); };
  for (const auto& cp : pairs_)
    if (cp.c < 1 || cp.p < 0) fail("pairs need c >= 1 and p >= 0");
  if (pairs_[0].p == 0) {
    if (pairs_[0].c != 1) fail("p = 0 is only allowed in the smooth germ (1,0)");
    for (std::size_t i = 1; i < pairs_.size(); ++i)
      if (pairs_[i].c != 1 || pairs_[i].p != 1) fail("(1,0) may only be followed by (1,1) pairs");
    return;
  }
  if (pairs_[0].p > pairs_[0].c) fail("p1 > c1");
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    const auto& prev = pairs_[i - 1];
    if (pairs_[i].c != std::gcd(prev.c, prev.p))
      fail("c" + std::to_string(i + 1) + " != gcd(c" + std::to_string(i) + ", p" + std::to_string(i) + ")");
    if (pairs_[i].p < 1) fail("p" + std::to_string(i + 1) + " < 1");
    if (pairs_[i].p > pairs_[i].c) fail("p" + std::to_string(i + 1) + " > c" + std::to_string(i + 1));
  }
  if (std::gcd(pairs_.back().c, pairs_.back().p) != 1) fail("gcd(c_h, p_h) != 1");
}

CharPairSeq CharPairSeq::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  std::vector<CharPair> pairs;
  std::size_t i = 0;
  auto bad = [&](const std::string& why) {
    throw DomainError("malformed pair sequence '" + std::string(text) + "' at character " + std::to_string(i + 1) +
                      ": " + why);
  };
  auto number = [&]() -> long {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) bad("expected a non-negative integer");
    if (i - start > 15) bad("integer too large");
    return std::stol(s.substr(start, i - start));
  };
  if (s.empty()) bad("empty input");
  while (i < s.size()) {
    if (s[i] != '(') bad("expected '('");
    ++i;
    long c = number();
    if (i >= s.size() || s[i] != ',') bad("expected ','");
    ++i;
    long p = number();
    if (i >= s.size() || s[i] != ')') bad("expected ')'");
    ++i;
    pairs.push_back({c, p});
  }
  return CharPairSeq(std::move(pairs));
}

std::string CharPairSeq::str() const {
  std::ostringstream os;
  for (const auto& cp : pairs_) os << "(" << cp.c << "," << cp.p << ")";
  return os.str();
}

std::vector<long> euclid_expansion(long c, long p) {
  std::vector<long> out;
  if (p == 0) return out;
  if (p < 0 || c < p) throw DomainError("euclid_expansion needs 0 <= p <= c");
  while (true) {
    out.push_back(p);
    if (c == p) break;
    if (c - p >= p) {
      c -= p;
    } else {
      long r = c - p;
      c = p;
      p = r;
    }
  }
  return out;
}

std::vector<long> multiplicity_sequence(const CharPairSeq& seq) {
  std::vector<long> out;
  for (const auto& cp : seq.pairs()) {
    auto block = euclid_expansion(cp.c, cp.p);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

CuspInvariants cusp_invariants(const CharPairSeq& seq) {
  CuspInvariants inv;
  inv.M = seq.pairs()[0].c - 1;
  for (const auto& cp : seq.pairs()) {
    inv.M += cp.p;
    inv.I += cp.c * cp.p;
    auto block = euclid_expansion(cp.c, cp.p);
    long s1 = 0, s2 = 0;
    for (long mu : block) {
      s1 += mu;
      s2 += mu * mu;
    }
    if (s1 != cp.c + cp.p - std::gcd(cp.c, cp.p) || s2 != cp.c * cp.p)
      throw std::logic_error("block identity violated for (" + std::to_string(cp.c) + "," + std::to_string(cp.p) + ")");
    inv.mult_seq.insert(inv.mult_seq.end(), block.begin(), block.end());
  }
  return inv;
}

namespace {

std::optional<CharPairSeq> decompose(const std::vector<long>& mult, long c1) {
  std::vector<CharPair> pairs;
  std::size_t pos = 0;
  long c = c1;
  while (pos < mult.size()) {
    long p = mult[pos];
    if (p > c) return std::nullopt;
    auto block = euclid_expansion(c, p);
    if (pos + block.size() > mult.size() || !std::equal(block.begin(), block.end(), mult.begin() + static_cast<long>(pos)))
      return std::nullopt;
    pairs.push_back({c, p});
    pos += block.size();
    c = std::gcd(c, p);
  }
  if (c != 1) return std::nullopt;
  return CharPairSeq(std::move(pairs));
}

}  // namespace

CharPairSeq pairs_from_multiplicity_sequence(const std::vector<long>& mult) {
  if (mult.empty()) return CharPairSeq();
  for (std::size_t i = 1; i < mult.size(); ++i)
    if (mult[i] > mult[i - 1] || mult[i] < 1) throw DomainError("multiplicity sequence must be positive and non-increasing");
  if (mult[0] == 1) {
    std::vector<CharPair> pairs{{1, 0}};
    pairs.insert(pairs.end(), mult.size(), CharPair{1, 1});
    return CharPairSeq(std::move(pairs));
  }
  long total = std::accumulate(mult.begin(), mult.end(), 0L);
  for (long c1 = total; c1 >= mult[0]; --c1)
    if (auto seq = decompose(mult, c1)) return *seq;
  throw DomainError("sequence is not the multiplicity sequence of a plane branch");
}

CharPairSeq canonical_form(const CharPairSeq& seq) {
  if (seq.is_smooth()) return seq;
  return pairs_from_multiplicity_sequence(multiplicity_sequence(seq));
}

int ExceptionalGraph::minus_one() const { return graph.empty() ? -1 : graph.ids().back(); }

namespace {

void blow_up_at_germ(ExceptionalGraph& ex, long mu) {
  std::vector<int> centre;
  for (const auto& [id, m] : ex.germ_contact)
    if (m > 0) centre.push_back(id);
  BlowupSpec spec;
  if (centre.empty())
    spec = BlowupSpec::free();
  else if (centre.size() == 1)
    spec = BlowupSpec::outer(centre[0]);
  else if (centre.size() == 2)
    spec = BlowupSpec::inner(centre[0], centre[1]);
  else
    throw std::logic_error("germ meets more than two exceptional curves");
  auto res = blow_up(ex.graph, spec);
  ex.graph = std::move(res.graph);
  for (int id : centre) {
    long left = ex.germ_contact[id] - mu;
    if (left < 0) throw DomainError("multiplicity sequence inconsistent with the germ's contacts");
    if (left == 0)
      ex.germ_contact.erase(id);
    else
      ex.germ_contact[id] = left;
  }
  ex.germ_contact[res.new_id] = mu;
  ex.mult_seq.push_back(mu);
  if (mu == 1) {
    ++ex.tau;
    if (centre.size() == 1) ex.s = 1;
  }
}

long contact_sum(const ExceptionalGraph& ex) {
  long s = 0;
  for (const auto& [_, m] : ex.germ_contact) s += m;
  return s;
}

}  // namespace

ExceptionalGraph build_exceptional_graph(const CharPairSeq& seq) {
  auto mult = multiplicity_sequence(seq);
  if (mult.empty()) throw DomainError("the smooth germ (1,0) has no exceptional divisor");
  ExceptionalGraph ex;
  for (long mu : mult) blow_up_at_germ(ex, mu);
  if (contact_sum(ex) != 1) throw std::logic_error("resolution did not end transversal to one curve");
  return ex;
}

ExceptionalGraph build_weak_resolution_graph(const CharPairSeq& seq) {
  ExceptionalGraph ex;
  for (long mu : multiplicity_sequence(seq))
    if (mu > 1) blow_up_at_germ(ex, mu);
  return ex;
}

ExceptionalGraph resolve_tangency(const ExceptionalGraph& partial) {
  ExceptionalGraph ex = partial;
  while (contact_sum(ex) > 1 || ex.germ_contact.size() > 1) blow_up_at_germ(ex, 1);
  return ex;
}

DivisorGraph with_germ(const ExceptionalGraph& ex, int e_self_int, const std::string& label) {
  DivisorGraph g = ex.graph;
  int e = g.add_component(e_self_int, label, true);
  for (const auto& [id, m] : ex.germ_contact) g.set_edge(id, e, static_cast<int>(m));
  return g;
}

CharPairSeq pairs_from_chain(const DivisorGraph& q) {
  Support all = q.support();
  if (!is_tree(q, all)) throw DomainError("pairs_from_chain needs a connected snc tree");
  std::vector<int> minus_ones;
  for (int id : q.ids())
    if (q.self_int(id) == -1) minus_ones.push_back(id);
  if (minus_ones.size() != 1)
    throw DomainError("expected a unique (-1)-curve, found " + std::to_string(minus_ones.size()));
  if (!contracts_to_smooth_point(q, all).contracts) throw DomainError("graph does not contract to a smooth point");

  // Strip (-1)-tips.
  DivisorGraph cur = q;
  long m = 0;
  while (!cur.empty()) {
    int tip = -1;
    for (int id : cur.ids())
      if (cur.self_int(id) == -1 && branching_number(cur, id) <= 1) tip = id;
    if (tip < 0) break;
    cur = contract_minus_one(cur, tip);
    ++m;
  }

  std::vector<CharPair> pairs;
  if (cur.empty()) {
    pairs.push_back({1, 0});
  } else {
    // Put the germ transversal to the (-1)-curve and contract back, tracking
    // its contact with every curve; the contacts of the contracted curves are
    // the multiplicities of the centres.
    std::map<int, long> contact;
    for (int id : cur.ids())
      if (cur.self_int(id) == -1) contact[id] = 1;
    std::vector<long> mult;
    while (!cur.empty()) {
      std::vector<int> ones;
      for (int id : cur.ids())
        if (cur.self_int(id) == -1) ones.push_back(id);
      if (ones.size() != 1) throw DomainError("not the exceptional divisor of a sequence of point blowups");
      int e = ones[0];
      long mu = contact[e];
      if (mu < 1) throw DomainError("not the exceptional divisor of a sequence of point blowups");
      for (const auto& [nb, mult_e] : cur.neighbors(e)) contact[nb] += mu * mult_e;
      cur = contract_minus_one(cur, e);
      contact.erase(e);
      mult.push_back(mu);
    }
    std::reverse(mult.begin(), mult.end());
    pairs = pairs_from_multiplicity_sequence(mult).pairs();
  }
  pairs.insert(pairs.end(), static_cast<std::size_t>(m), CharPair{1, 1});
  return CharPairSeq(std::move(pairs));
}

std::array<long, 3> degree_genus_equations(const std::vector<CuspWithContact>& cusps, long d, long gamma) {
  long sum_m = 0, sum_i = 0, sum_g = 0;
  for (const auto& cu : cusps) {
    if (cu.rho < 1) throw DomainError("contact multiplicity rho must be positive");
    auto inv = cusp_invariants(cu.pairs);
    sum_m += cu.rho * inv.M;
    sum_i += cu.rho * cu.rho * inv.I;
    sum_g += cu.rho * (cu.rho * inv.I - inv.M);
  }
  return {gamma - 2 + 3 * d - sum_m, gamma + d * d - sum_i, (d - 1) * (d - 2) - sum_g};
}

}  // namespace cuspcalc
