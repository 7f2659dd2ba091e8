#pragma once

#include <optional>
#include <vector>

#include "cuspcalc/rational.hpp"

namespace cuspcalc::linalg {

using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;

// Fraction-free Bareiss elimination with row pivoting.
Integer determinant(IntMatrix m);

// Leading principal minors 1..n by Bareiss without pivoting. Stops at the
// first vanishing minor (later minors cannot be read off), so the result may
// be shorter than n.
std::vector<Integer> leading_minors(IntMatrix m);

// Gaussian elimination over Q; nullopt when the system is singular.
std::optional<std::vector<Rational>> solve(RatMatrix a, std::vector<Rational> b);

}  // namespace cuspcalc::linalg
