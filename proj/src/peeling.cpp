#include "cuspcalc/peeling.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cuspcalc/birational.hpp"
#include "cuspcalc/error.hpp"
#include "cuspcalc/twig_calculus.hpp"

namespace cuspcalc {

namespace {

Support flatten(const std::vector<std::vector<int>>& parts) {
  Support s;
  for (const auto& p : parts) s.insert(p.begin(), p.end());
  return s;
}

int dot_with(const DivisorGraph& g, int id, const Support& s) {
  int sum = 0;
  for (const auto& [nb, m] : g.neighbors(id))
    if (s.count(nb)) sum += m;
  return sum;
}

}  // namespace

Support PeelingData::delta_support() const { return flatten(delta); }
Support PeelingData::delta_plus_support() const { return flatten(delta_plus); }
Support PeelingData::delta_minus_support() const { return flatten(delta_minus); }

Rational half_log_canonical_dot(const DivisorGraph& g, const PeelingData& peel, int id) {
  FractionalDivisor r{{id, Rational(1)}};
  return canonical_dot(g, r) + intersection_number(g, peel.d_flat, r) / Rational(2);
}

PeelingData compute_peeling(const DivisorGraph& g) {
  PeelingData pd;
  for (const auto& twig : maximal_twigs_unchecked(g)) {
    std::vector<int> part;
    for (int id : twig) {
      if (g.self_int(id) != -2) break;
      part.push_back(id);
    }
    if (!part.empty()) pd.delta.push_back(part);
  }
  Support delta = pd.delta_support();

  for (int id : g.ids()) {
    if (g.self_int(id) != -1) continue;
    int beta = branching_number(g, id);
    auto nb = g.neighbors(id);
    if ((beta == 3 && dot_with(g, id, delta) == 1) || (beta == 2 && nb.size() == 1)) pd.upsilon.insert(id);
  }
  for (int a : pd.upsilon)
    for (int b : pd.upsilon)
      if (a < b && g.multiplicity(a, b) != 0)
        throw DomainError("components " + std::to_string(a) + " and " + std::to_string(b) + " of Upsilon meet");

  for (const auto& twig : pd.delta) {
    Support s(twig.begin(), twig.end());
    int meets = 0;
    for (int u : pd.upsilon)
      if (dot_with(g, u, s) > 0) ++meets;
    if (meets > 1)
      throw DomainError("(-2)-twig at tip " + std::to_string(twig.front()) + " meets more than one curve of Upsilon");
    (meets == 1 ? pd.delta_plus : pd.delta_minus).push_back(twig);
  }

  Support minus = pd.delta_minus_support(), plus = pd.delta_plus_support();
  pd.bark_prime = bark_prime(g, minus);
  for (int id : g.ids()) {
    if (pd.upsilon.count(id) || plus.count(id))
      pd.d_flat[id] = 0;
    else if (minus.count(id))
      pd.d_flat[id] = Rational(1) - pd.bark_prime.at(id);
    else
      pd.d_flat[id] = 1;
  }
  for (int id : minus) {
    const Rational& c = pd.d_flat[id];
    if (c <= 0 || c >= 1)
      throw DomainError("coefficient of D_flat at " + std::to_string(id) + " is " + c.str() + ", outside (0,1)");
  }

  Support check = delta;
  check.insert(pd.upsilon.begin(), pd.upsilon.end());
  for (int id : check) {
    Rational v = half_log_canonical_dot(g, pd, id);
    if (v != 0)
      throw DomainError("(K + D_flat/2).R = " + v.str() + " for component " + std::to_string(id) +
                        ", expected 0");
  }
  return pd;
}

CandidateVerdict check_A_candidate(const DivisorGraph& g, const PeelingData& peel, const ExternalCurve& a) {
  CandidateVerdict v;
  for (const auto& [id, m] : a.meets) {
    g.component(id);
    if (m < 0) v.reasons.push_back("negative intersection with " + std::to_string(id));
  }
  if (a.self_int != -1) v.reasons.push_back("A is not a (-1)-curve");

  Support plus = peel.delta_plus_support(), minus = peel.delta_minus_support();
  int with_up_plus = 0, with_minus = 0, with_rest = 0;
  Rational flat;
  for (const auto& [id, m] : a.meets) {
    if (m == 0) continue;
    if (peel.upsilon.count(id) || plus.count(id)) with_up_plus += m;
    if (minus.count(id)) {
      with_minus += m;
      v.delta_minus_component = id;
    } else {
      with_rest += m;
      v.other_component = id;
    }
    flat += Rational(m) * peel.d_flat.at(id);
  }
  if (with_up_plus != 0) v.reasons.push_back("A meets Upsilon + Delta+");
  if (with_rest != 1) {
    v.reasons.push_back("A.(D - Delta-) = " + std::to_string(with_rest) + ", expected 1");
    v.other_component = -1;
  }
  if (with_minus != 1) {
    v.reasons.push_back("A.Delta- = " + std::to_string(with_minus) + ", expected 1");
    v.delta_minus_component = -1;
  } else if (branching_number(g, Support{v.delta_minus_component}, minus) > 1) {
    v.reasons.push_back("Delta- component " + std::to_string(v.delta_minus_component) + " is not a tip of Delta-");
  }
  Rational k_dot_a(-2 - a.self_int);
  v.half_log_canonical_dot = k_dot_a + flat / Rational(2);
  if (v.half_log_canonical_dot >= 0) v.reasons.push_back("(K + D_flat/2).A = " + v.half_log_canonical_dot.str() + " is not negative");
  v.ok = v.reasons.empty();
  return v;
}

std::string to_string(StepType t) {
  switch (t) {
    case StepType::I: return "I";
    case StepType::II: return "II";
    case StepType::MinorException: return "minor-exception";
  }
  return "?";
}

Rational log_canonical_square(const DivisorGraph& g) {
  FractionalDivisor d = reduced(g);
  return Rational(g.require_ksq()) + Rational(2) * canonical_dot(g, d) + intersection_number(g, d, d);
}

StepReport minimalization_step(const DivisorGraph& g, const ExternalCurve& a) {
  PeelingData peel = compute_peeling(g);
  CandidateVerdict v = check_A_candidate(g, peel, a);
  if (!v.ok) {
    std::ostringstream os;
    os << "A is not a valid candidate:";
    for (const auto& r : v.reasons) os << " " << r << ";";
    std::string s = os.str();
    s.pop_back();
    throw DomainError(s);
  }
  for (int id : g.ids())
    if (is_superfluous(g, id))
      throw DomainError("D contains the superfluous (-1)-curve " + std::to_string(id));
  StepReport rep;
  rep.kd_square_before = log_canonical_square(g);

  DivisorGraph with_a = g;
  rep.a_id = with_a.add_component(a.self_int, "A");
  for (const auto& [id, m] : a.meets)
    if (m > 0) with_a.set_edge(id, rep.a_id, m);
  rep.kda_square = log_canonical_square(with_a);

  // Minor exception: the Delta- twig met by A and A meet the same component.
  int r = v.delta_minus_component;
  bool minor = false;
  for (const auto& twig : peel.delta_minus)
    if (std::find(twig.begin(), twig.end(), r) != twig.end()) {
      for (const auto& [nb, m] : g.neighbors(twig.back()))
        if (nb == v.other_component && std::find(twig.begin(), twig.end(), nb) == twig.end()) minor = true;
    }

  // Only images of what was contracted can become superfluous; D itself has none.
  Support touched;
  auto contract = [&](const DivisorGraph& from, int id) {
    for (const auto& [nb, m] : from.neighbors(id)) touched.insert(nb);
    touched.erase(id);
    rep.contracted.push_back(id);
    return contract_minus_one(from, id);
  };
  DivisorGraph cur = contract(with_a, rep.a_id);
  while (true) {
    int pick = -1;
    for (int id : touched)
      if (is_superfluous(cur, id)) {
        pick = id;
        break;
      }
    if (pick < 0) break;
    cur = contract(cur, pick);
  }
  rep.graph = cur;
  rep.kd_square_after = log_canonical_square(cur);
  bool both = std::find(rep.contracted.begin(), rep.contracted.end(), r) != rep.contracted.end() &&
              std::find(rep.contracted.begin(), rep.contracted.end(), v.other_component) != rep.contracted.end();
  rep.type = minor ? StepType::MinorException : (both ? StepType::II : StepType::I);
  return rep;
}

NoetherReport noether_check(const DivisorGraph& g) {
  NoetherReport r;
  int ksq = g.require_ksq();
  r.components = static_cast<int>(g.size());
  r.rho = 10 - ksq;
  r.index = r.components - r.rho;
  r.consistent = true;
  if (r.rho < 1) {
    r.consistent = false;
    r.note = "K^2 = " + std::to_string(ksq) + " > 9 is impossible on a smooth rational surface";
  } else if (r.index < 0) {
    r.consistent = false;
    r.note = "#D < rho: the boundary cannot span the Picard group";
  }
  return r;
}

Integer chain_quotient_order(const DivisorGraph& g, const Support& component) {
  if (!chain_order(g, component)) throw DomainError("|Gamma| is only computed for chains");
  if (!is_negative_definite(g, component)) throw DomainError("component is not negative definite");
  return discriminant(g, component);
}

InequalityReport bmy_evaluate(const DivisorGraph& g, long chi,
                              const std::optional<std::vector<Integer>>& quotient_orders) {
  FractionalDivisor bk = bark(g);
  FractionalDivisor d = reduced(g);
  Rational kd2 = log_canonical_square(g);
  Rational kd_bk = canonical_dot(g, bk) + intersection_number(g, d, bk);
  Rational p2 = kd2 - Rational(2) * kd_bk + intersection_number(g, bk, bk);
  if (p2 != kd2 + total_inductance(g))
    throw std::logic_error("(K + D - Bk)^2 disagrees with (K + D)^2 + ind");

  std::vector<Integer> orders;
  if (quotient_orders) {
    orders = *quotient_orders;
  } else {
    for (const Support& comp : connected_components(g, g.support()))
      if (chain_order(g, comp) && is_negative_definite(g, comp)) orders.push_back(chain_quotient_order(g, comp));
  }
  InequalityReport r;
  r.lhs = p2 / Rational(3);
  r.rhs = Rational(chi);
  for (const Integer& o : orders) {
    if (o <= 0) throw DomainError("quotient orders must be positive");
    r.rhs += Rational(Integer(1), o);
  }
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= 0;
  return r;
}

InequalityReport bmy_specialized(long p2, long i, const Rational& ind) {
  InequalityReport r;
  r.lhs = Rational(p2 + i - 2) + ind;
  r.rhs = 3;
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= 0;
  return r;
}

InequalityReport bmy_specialized(const DivisorGraph& g, long p2, long i) {
  return bmy_specialized(p2, i, total_inductance(g));
}

std::optional<long> MMPParams::n() const {
  if (!n0 || !n1) return std::nullopt;
  return *n0 + *n1;
}

std::pair<long, long> boundary_identities(const MMPParams& p, long kn_kn_dn, long en_kn_dn) {
  std::vector<std::string> missing;
  if (!p.p2) missing.push_back("p2");
  if (!p.c) missing.push_back("c");
  if (!p.tau_star) missing.push_back("tau_star");
  if (!p.n0) missing.push_back("n0");
  if (!p.n1) missing.push_back("n1");
  if (!missing.empty()) {
    std::string s = "missing fields:";
    for (const auto& m : missing) s += " " + m;
    throw DomainError(s);
  }
  long n = *p.n();
  return {kn_kn_dn - (*p.p2 - *p.c - *p.tau_star - n), en_kn_dn - (2 * *p.c - 2 + *p.tau_star + *p.n1)};
}

std::string to_string(InequalityVerdict::Status s) {
  switch (s) {
    case InequalityVerdict::Status::Holds: return "holds";
    case InequalityVerdict::Status::Violated: return "violated";
    case InequalityVerdict::Status::Missing: return "missing";
  }
  return "?";
}

namespace {

struct FieldCheck {
  std::vector<std::string> missing;
  template <typename T>
  const T& need(const std::optional<T>& v, const char* name) {
    static const T zero{};
    if (!v) {
      missing.push_back(name);
      return zero;
    }
    return *v;
  }
};

InequalityVerdict verdict(std::string name, std::string statement, FieldCheck& fc,
                          const std::function<Rational()>& slack) {
  InequalityVerdict v;
  v.name = std::move(name);
  v.statement = std::move(statement);
  if (!fc.missing.empty()) {
    v.missing = fc.missing;
    v.status = InequalityVerdict::Status::Missing;
    return v;
  }
  v.slack = slack();
  v.status = *v.slack >= 0 ? InequalityVerdict::Status::Holds : InequalityVerdict::Status::Violated;
  return v;
}

Rational R(long x) { return Rational(x); }

}  // namespace

std::vector<InequalityVerdict> inequality_suite(const MMPParams& p) {
  std::vector<InequalityVerdict> out;
  {
    FieldCheck f;
    long gn = f.need(p.gamma_n, "gamma_n"), ts = f.need(p.tau_star, "tau_star"), n1 = f.need(p.n1, "n1"),
         e1 = f.need(p.eta1, "eta1"), n0 = f.need(p.n0, "n0"), e0 = f.need(p.eta0, "eta0"),
         z = f.need(p.zeta, "zeta"), p2 = f.need(p.p2, "p2");
    out.push_back(verdict("gamma_tau_bound", "gamma_n + tau* + (n1 - eta1) + 2(n0 - eta0) <= 2 zeta + 2 p2", f, [&] {
      return R(2 * z + 2 * p2) - R(gn + ts + (n1 - e1) + 2 * (n0 - e0));
    }));
  }
  {
    FieldCheck f;
    long a = f.need(p.sum_kc_tau_plus, "sum_kc_tau_plus"), cp = f.need(p.sharp_C_plus, "sharp_C_plus"),
         te = f.need(p.sum_tau_exc, "sum_tau_exc"), n0 = f.need(p.n0, "n0"), n1 = f.need(p.n1, "n1"),
         ne = f.need(p.n_exc, "n_exc"), kr = f.need(p.k_dot_Rn, "k_dot_Rn"), p2 = f.need(p.p2, "p2"),
         z = f.need(p.zeta, "zeta");
    out.push_back(verdict("kn_rn_identity",
                          "sum_{C+}(K_n.C_j' + tau_j*) + #C+ + sum_{C_exc} tau_j* + (n - n_exc) + K_n.R_n = p2 - zeta",
                          f, [&] {
                            // identity: report -|residual| so any mismatch is a violation
                            long res = a + cp + te + (n0 + n1 - ne) + kr - (p2 - z);
                            return R(res < 0 ? res : -res);
                          }));
  }
  {
    FieldCheck f;
    long gn = f.need(p.gamma_n, "gamma_n"), ts = f.need(p.tau_star, "tau_star"), z = f.need(p.zeta, "zeta"),
         p2 = f.need(p.p2, "p2");
    out.push_back(verdict("gamma_tau_range", "2 <= (gamma_n + tau*)/2 <= zeta + p2 <= 2 p2", f, [&] {
      Rational half = R(gn + ts) / R(2);
      return std::min({half - R(2), R(z + p2) - half, R(2 * p2 - z - p2)});
    }));
  }
  {
    FieldCheck f;
    long rho = f.need(p.rho_n, "rho_n"), p2 = f.need(p.p2, "p2"), c = f.need(p.c, "c"), s = f.need(p.s, "s"),
         z = f.need(p.zeta, "zeta");
    out.push_back(verdict("rho_range", "rho(X_n') <= 8 + 2 p2 + c + s + zeta <= 20 + 2c", f, [&] {
      long mid = 8 + 2 * p2 + c + s + z;
      return std::min(R(mid - rho), R(20 + 2 * c - mid));
    }));
  }
  {
    FieldCheck f;
    long hd = f.need(p.hash_Dn, "hash_Dn"), p2 = f.need(p.p2, "p2"), c = f.need(p.c, "c"), s = f.need(p.s, "s"),
         z = f.need(p.zeta, "zeta"), n0 = f.need(p.n0, "n0"), n1 = f.need(p.n1, "n1");
    out.push_back(verdict("boundary_count_range", "#D_n' <= 8 + 2 p2 + c + s + zeta + n <= 24 + 2c", f, [&] {
      long mid = 8 + 2 * p2 + c + s + z + n0 + n1;
      return std::min(R(mid - hd), R(24 + 2 * c - mid));
    }));
  }
  {
    FieldCheck f;
    long p2 = f.need(p.p2, "p2"), i = f.need(p.i, "i");
    Rational ind = f.need(p.ind, "ind");
    out.push_back(verdict("bmy_step", "P_i^2 = p2 + i - 2 + ind(D_i') <= 3", f,
                          [&] { return bmy_specialized(p2, i, ind).slack; }));
  }
  {
    FieldCheck f;
    long t = f.need(p.t, "t"), i = f.need(p.i, "i"), p2 = f.need(p.p2, "p2"), n1i = f.need(p.n1_i, "n1_i"),
         c = f.need(p.c, "c"), me = f.need(p.m_E, "m_E");
    Rational ind = f.need(p.ind, "ind"), del = f.need(p.delta, "delta");
    if (f.missing.empty() && me < 2) f.missing.push_back("m_E (must be >= 2)");
    out.push_back(verdict("twig_count_bound",
                          "t(D_i') + i <= p2 + ind(D_i') + delta(D_i') + max(n1(i) + c - 2, 0)/m_E", f, [&] {
                            Rational rhs = R(p2) + ind + del + R(std::max(n1i + c - 2, 0L)) / R(me);
                            return rhs - R(t + i);
                          }));
  }
  return out;
}

}  // namespace cuspcalc
