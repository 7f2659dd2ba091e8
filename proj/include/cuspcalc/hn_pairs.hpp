#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cuspcalc/divisor_graph.hpp"

namespace cuspcalc {

struct CharPair {
  long c = 1;
  long p = 0;
  auto operator<=>(const CharPair&) const = default;
};

// Admissible sequence of characteristic pairs: p1 <= c1, c_{i+1} = gcd(c_i, p_i),
// p_{i+1} <= c_{i+1}, gcd(c_h, p_h) = 1. The smooth germ is (1,0), which may
// only be followed by (1,1) pairs.
class CharPairSeq {
 public:
  CharPairSeq() : pairs_{{1, 0}} {}
  explicit CharPairSeq(std::vector<CharPair> pairs);

  // "(c1,p1)(c2,p2)...", whitespace-insensitive.
  static CharPairSeq parse(std::string_view text);

  const std::vector<CharPair>& pairs() const { return pairs_; }
  bool is_smooth() const { return pairs_.size() == 1 && pairs_[0].p == 0; }
  // p1 >= 2: the germ itself is singular.
  bool is_singular() const { return pairs_[0].p >= 2; }
  std::string str() const;

  auto operator<=>(const CharPairSeq&) const = default;

 private:
  std::vector<CharPair> pairs_;
};

struct CuspInvariants {
  long M = 0;
  long I = 0;
  std::vector<long> mult_seq;
};

// Subtractive Euclidean expansion of one block (c, p).
std::vector<long> euclid_expansion(long c, long p);
std::vector<long> multiplicity_sequence(const CharPairSeq& seq);
CuspInvariants cusp_invariants(const CharPairSeq& seq);

// Normal form: decomposition of the multiplicity sequence with maximal c1;
// sequences with p1 = 1 normalise to (1,0)(1,1)_n.
CharPairSeq canonical_form(const CharPairSeq& seq);
CharPairSeq pairs_from_multiplicity_sequence(const std::vector<long>& mult_seq);

// Exceptional divisor produced by blowing up the infinitely near points of
// the germ. Component ids follow the blowup order.
struct ExceptionalGraph {
  DivisorGraph graph;
  std::map<int, long> germ_contact;  // components met by the germ's proper transform
  std::vector<long> mult_seq;        // multiplicities of the blowups performed
  int tau = 0;                       // blowups with multiplicity 1
  int s = 0;                         // 1 if one of them had its centre on a single component
  int minus_one() const;             // the last exceptional curve, -1 if none
};

// Minimal log resolution: all blowups; the germ ends transversal to one curve.
ExceptionalGraph build_exceptional_graph(const CharPairSeq& seq);
// Minimal weak resolution: only the blowups with multiplicity > 1.
ExceptionalGraph build_weak_resolution_graph(const CharPairSeq& seq);
// Continues a partial resolution with multiplicity-1 blowups at the germ until
// it meets the exceptional divisor transversally in a single curve.
ExceptionalGraph resolve_tangency(const ExceptionalGraph& partial);

// Adds the germ's proper transform as a component marked E meeting the
// exceptional curves with the tracked contact multiplicities.
DivisorGraph with_germ(const ExceptionalGraph& ex, int e_self_int, const std::string& label = "E");

// Inverse of build_exceptional_graph on trees with a unique (-1)-curve that
// contract to a smooth point.
CharPairSeq pairs_from_chain(const DivisorGraph& q);

struct CuspWithContact {
  CharPairSeq pairs;
  long rho = 1;
};

// Residuals of gamma - 2 + 3d = sum rho M, gamma + d^2 = sum rho^2 I and
// (d-1)(d-2) = sum rho (rho I - M).
std::array<long, 3> degree_genus_equations(const std::vector<CuspWithContact>& cusps, long d, long gamma);

}  // namespace cuspcalc
