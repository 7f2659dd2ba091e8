#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// They deliberately avoid the library's own algorithms.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "cuspcalc/divisor_graph.hpp"

namespace oracle {

using cuspcalc::Rational;

// Determinant over Q by plain elimination, fine for the small sizes used.
inline Rational det(std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// Solves m x = b over Q; m must be invertible.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

// det of minus the intersection matrix of a chain [w1..wk].
inline Rational chain_det(const std::vector<int>& w) {
  std::size_t n = w.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = w[i];
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
  }
  return n == 0 ? Rational(1) : det(m);
}

// Hirzebruch-Jung style contraction of a chain: repeatedly remove a 1 and
// bump its neighbours, any order.
inline bool chain_contracts(std::vector<int> w) {
  while (!w.empty()) {
    std::size_t i = 0;
    while (i < w.size() && w[i] != 1) ++i;
    if (i == w.size()) return false;
    if (i > 0) --w[i - 1];
    if (i + 1 < w.size()) --w[i + 1];
    w.erase(w.begin() + static_cast<long>(i));
  }
  return true;
}

// Negative definite with a positive determinant sequence via exact elimination.
inline bool chain_negative_definite(const std::vector<int>& w) {
  for (std::size_t k = 1; k <= w.size(); ++k)
    if (chain_det(std::vector<int>(w.begin(), w.begin() + static_cast<long>(k))) <= 0) return false;
  return true;
}

// Integer roots of (d-1)(d-2) = S in [3, 300].
inline std::vector<long> degree_roots(long S) {
  std::vector<long> out;
  for (long d = 3; d <= 300; ++d)
    if ((d - 1) * (d - 2) == S) out.push_back(d);
  return out;
}

// Euclid multiplicity sequence of one block, written out by repeated subtraction.
inline std::vector<long> block_mults(long c, long p) {
  std::vector<long> out;
  while (p > 0) {
    if (c >= p) {
      out.push_back(p);
      c -= p;
    } else {
      std::swap(c, p);
    }
  }
  return out;
}

}  // namespace oracle
