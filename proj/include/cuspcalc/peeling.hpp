#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspcalc/divisor_graph.hpp"

namespace cuspcalc {

struct PeelingData {
  std::vector<std::vector<int>> delta;  // maximal (-2)-twigs, each from its tip inward
  Support upsilon;
  std::vector<std::vector<int>> delta_plus;
  std::vector<std::vector<int>> delta_minus;
  FractionalDivisor bark_prime;  // Bk' of delta_minus
  FractionalDivisor d_flat;      // D - Upsilon - Delta+ - Bk' Delta-

  Support delta_support() const;
  Support delta_plus_support() const;
  Support delta_minus_support() const;
};

// Throws DomainError naming the offending component when an invariant fails,
// including (K + D_flat/2).R = 0 for every R in Delta + Upsilon.
PeelingData compute_peeling(const DivisorGraph& g);

// (K + D_flat/2).R for a component of g.
Rational half_log_canonical_dot(const DivisorGraph& g, const PeelingData& peel, int id);

// A curve off the graph, given by its self-intersection and its intersection
// numbers with components of the graph.
struct ExternalCurve {
  int self_int = -1;
  std::map<int, int> meets;
};

struct CandidateVerdict {
  bool ok = false;
  std::vector<std::string> reasons;  // failed conditions
  Rational half_log_canonical_dot;   // (K + D_flat/2).A
  int delta_minus_component = -1;    // the Delta- component met by A, if unique
  int other_component = -1;          // the component of D - Delta- met by A, if unique
};

CandidateVerdict check_A_candidate(const DivisorGraph& g, const PeelingData& peel, const ExternalCurve& a);

enum class StepType { I, II, MinorException };
std::string to_string(StepType t);

struct StepReport {
  DivisorGraph graph;             // image of D after the step
  StepType type = StepType::I;
  int a_id = -1;                  // id given to A in the intermediate graph D + A
  std::vector<int> contracted;    // A first, then the other curves in order
  Rational kd_square_before;      // (K + D)^2
  Rational kda_square;            // (K + D + A)^2
  Rational kd_square_after;       // (K' + D')^2
};

// (K + D)^2 = K^2 + 2 K.D + D^2; needs ksq.
Rational log_canonical_square(const DivisorGraph& g);

// Adds A, contracts it and then the images that became superfluous (smallest
// id first). Throws DomainError if A is not a valid candidate or D already
// has a superfluous (-1)-curve.
StepReport minimalization_step(const DivisorGraph& g, const ExternalCurve& a);

struct NoetherReport {
  int components = 0;
  int rho = 0;    // 10 - K^2
  int index = 0;  // #D - rho
  bool consistent = false;
  std::string note;
};
NoetherReport noether_check(const DivisorGraph& g);

struct InequalityReport {
  Rational lhs;
  Rational rhs;
  Rational slack;  // rhs - lhs
  bool holds = false;
};

// Order of the local fundamental group of a chain of quotient type, d(chain).
Integer chain_quotient_order(const DivisorGraph& g, const Support& component);

// (1/3)(K + D - Bk D)^2 <= chi + sum 1/|Gamma|. quotient_orders defaults to
// the connected components of g that are negative definite chains.
InequalityReport bmy_evaluate(const DivisorGraph& g, long chi,
                              const std::optional<std::vector<Integer>>& quotient_orders);
// P^2 = p2 + i - 2 + ind <= 3.
InequalityReport bmy_specialized(long p2, long i, const Rational& ind);
InequalityReport bmy_specialized(const DivisorGraph& g, long p2, long i);

struct MMPParams {
  std::optional<long> p2, zeta, gamma_n, tau_star, n0, n1, eta0, eta1, c, s, n_exc, k_dot_Rn, sharp_C_plus;
  // Sums entering the full identity: sum over C+ of (K_n.C_j' + tau_j*), and
  // sum over C_exc of tau_j*.
  std::optional<long> sum_kc_tau_plus, sum_tau_exc;
  std::optional<long> rho_n, hash_Dn;         // rho(X_n'), #D_n'
  std::optional<long> i, t, n1_i, m_E;        // step index, #twigs, n_1(i), m_E
  std::optional<Rational> ind, delta;         // ind(D_i'), delta(D_i')

  std::optional<long> n() const;
};

// Residuals (measured - rhs) of K_n.(K_n + D_n) = p2 - c - tau* - n and
// E_n.(K_n + D_n) = 2c - 2 + tau* + n1. Throws DomainError on missing fields.
std::pair<long, long> boundary_identities(const MMPParams& p, long kn_kn_dn, long en_kn_dn);

struct InequalityVerdict {
  enum class Status { Holds, Violated, Missing };
  std::string name;
  std::string statement;
  Status status = Status::Missing;
  std::optional<Rational> slack;  // minimum slack over the chained relations
  std::vector<std::string> missing;
};
std::string to_string(InequalityVerdict::Status s);

std::vector<InequalityVerdict> inequality_suite(const MMPParams& p);

}  // namespace cuspcalc
