#pragma once

#include <vector>

#include "cuspcalc/divisor_graph.hpp"

namespace cuspcalc {

// A chain of components listed from its distinguished tip inward.
class OrderedChain {
 public:
  // Validates that consecutive ids meet once transversally and no others meet.
  static OrderedChain from_ids(const DivisorGraph& g, std::vector<int> ids);

  const std::vector<int>& ids() const { return ids_; }
  int tip() const { return ids_.front(); }
  std::size_t size() const { return ids_.size(); }
  Support support() const { return {ids_.begin(), ids_.end()}; }

 private:
  std::vector<int> ids_;
};

Integer discriminant(const DivisorGraph& g, const Support& t);
Integer discriminant(const std::vector<int>& weights);  // chain in weight notation

// d(T) = w1 d(T - T1) - d(T - T1 - T2), evaluated from the far end.
Integer discriminant_recurrence(const DivisorGraph& g, const OrderedChain& chain);
Integer discriminant_recurrence(const std::vector<int>& weights);

// ind = d(T - tip)/d(T) and delta = 1/d(T); need a negative definite chain
// with no (-1)-components.
Rational inductance(const DivisorGraph& g, const OrderedChain& chain);
Rational delta(const DivisorGraph& g, const OrderedChain& chain);

// Throws DomainError listing every violated precondition of the bark
// calculus (connected snc, snc-minimal, not negative definite, negative
// definite maximal twigs).
void check_twig_preconditions(const DivisorGraph& g);

Rational total_inductance(const DivisorGraph& g);
Rational total_delta(const DivisorGraph& g);

// Bark of one twig; coefficients from the discriminant quotients, checked
// against an exact solve of Bk.R = beta(R) - 2 on the twig.
FractionalDivisor bark_twig(const DivisorGraph& g, const OrderedChain& twig);
FractionalDivisor bark(const DivisorGraph& g);

// Unique divisor on delta_minus with (K + D - Bk').R = 0 for R in delta_minus.
FractionalDivisor bark_prime(const DivisorGraph& g, const Support& delta_minus);

struct ZariskiNegativePart {
  FractionalDivisor divisor;
  // The caller's assertion that no (-1)-curve A off the graph has T.A <= 1.
  bool hypothesis_asserted = false;
};
ZariskiNegativePart zariski_negative_part(const DivisorGraph& g, bool hypothesis_asserted);

}  // namespace cuspcalc
