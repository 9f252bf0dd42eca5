#pragma once

// Brute-force reference implementations, deliberately independent of the
// library's algorithms.

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "intrew/rational.hpp"

namespace oracles {

using intrew::Rational;
using intrew::Vector;

/// Remainder of a polynomial (coefficients by degree) modulo the monic
/// polynomial x^d + lower[d-1] x^(d-1) + ... + lower[0], by long division.
inline Vector poly_remainder(Vector p, const std::vector<Rational>& lower) {
  const std::size_t d = lower.size();
  for (std::size_t k = p.size(); k-- > d;) {
    Rational c = p[k];
    if (c == 0) continue;
    p[k] = 0;
    for (std::size_t i = 0; i < d; ++i) p[k - d + i] -= c * lower[i];
  }
  return p;
}

/// Rank by naive Gaussian elimination over a copy of the rows.
inline std::size_t rank(std::vector<Vector> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Connected components of the undirected graph on n vertices.
inline std::size_t components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
  }
  return count;
}

/// Normal forms reachable from x in a terminating relation given by pairs.
inline std::set<std::size_t> reachable_normal_forms(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                                    std::size_t x) {
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [a, b] : rel) succ[a].push_back(b);
  std::set<std::size_t> out;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{x};
  seen[x] = true;
  while (!stack.empty()) {
    auto y = stack.back();
    stack.pop_back();
    if (succ[y].empty()) out.insert(y);
    for (auto z : succ[y])
      if (!seen[z]) {
        seen[z] = true;
        stack.push_back(z);
      }
  }
  return out;
}

}  // namespace oracles
