#pragma once

// Rewriting relations as data: labelled relations on a finite set, and
// algebraic relations on a free vector space (basis element -> vector).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"
#include "intrew/graph.hpp"

namespace intrew {

struct SetRule {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;
};

struct SetRelation {
  CarrierObject elements;
  std::vector<SetRule> rules;

  /// Rules named "x->y" after their endpoints.
  static SetRelation from_pairs(CarrierObject elements, const std::vector<std::pair<std::string, std::string>>& pairs) {
    SetRelation rel{std::move(elements), {}};
    for (const auto& [a, b] : pairs)
      rel.rules.push_back({a + "->" + b, rel.elements.index_of(a), rel.elements.index_of(b)});
    return rel;
  }

  std::vector<std::string> rule_ids() const {
    std::vector<std::string> ids;
    for (const auto& r : rules) ids.push_back(r.id);
    return ids;
  }

  /// R = the set of rules, with source and target projections.
  InternalGraph graph() const {
    CarrierObject r = CarrierObject::set(rule_ids());
    std::vector<std::size_t> s;
    std::vector<std::size_t> t;
    for (const auto& rule : rules) {
      s.push_back(rule.source);
      t.push_back(rule.target);
    }
    return InternalGraph(CarrierMap::set_map(r, elements, s), CarrierMap::set_map(r, elements, t));
  }

  bool is_normal_form(std::size_t x) const {
    return std::none_of(rules.begin(), rules.end(), [x](const SetRule& r) { return r.source == x; });
  }
};

/// Some element lying on a cycle of the relation, if any (self-loops count).
inline std::optional<std::size_t> find_cycle(const SetRelation& rel) {
  const std::size_t n = rel.elements.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& r : rel.rules) succ[r.source].push_back(r.target);
  std::vector<int> color(n, 0);
  std::optional<std::size_t> found;
  auto dfs = [&](auto&& self, std::size_t x) -> void {
    color[x] = 1;
    for (auto y : succ[x]) {
      if (found) return;
      if (color[y] == 1) {
        found = y;
        return;
      }
      if (color[y] == 0) self(self, y);
    }
    color[x] = 2;
  };
  for (std::size_t x = 0; x < n && !found; ++x)
    if (color[x] == 0) dfs(dfs, x);
  return found;
}

inline void require_terminating(const SetRelation& rel) {
  if (auto x = find_cycle(rel))
    throw Error(Errc::NotTerminating, "relation has a cycle through " + rel.elements.label(*x),
                rel.elements.label(*x));
}

/// Length of the longest rewriting sequence starting at each element.
inline std::vector<std::size_t> longest_derivation(const SetRelation& rel) {
  require_terminating(rel);
  const std::size_t n = rel.elements.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& r : rel.rules) succ[r.source].push_back(r.target);
  std::vector<std::optional<std::size_t>> memo(n);
  auto go = [&](auto&& self, std::size_t x) -> std::size_t {
    if (memo[x]) return *memo[x];
    std::size_t best = 0;
    for (auto y : succ[x]) best = std::max(best, self(self, y) + 1);
    memo[x] = best;
    return best;
  };
  std::vector<std::size_t> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = go(go, x);
  return out;
}

struct AlgebraicRule {
  std::string id;
  std::size_t lhs = 0;
  Vector rhs;
};

/// A relation x -> u on kX, with a terminating order on X given by ranks:
/// y < x iff rank[y] < rank[x].
struct AlgebraicRelation {
  CarrierObject basis;
  std::vector<long long> rank;
  std::vector<AlgebraicRule> rules;

  /// Ranks default to basis order. Throws InvalidRule when x occurs in the
  /// support of one of its own right-hand sides.
  static AlgebraicRelation make(CarrierObject basis, std::vector<AlgebraicRule> rules,
                                std::optional<std::vector<long long>> rank = std::nullopt) {
    if (basis.kind() != Kind::Vect) throw Error(Errc::KindMismatch, "algebraic relations live on vector spaces");
    AlgebraicRelation ar;
    ar.basis = std::move(basis);
    if (rank) {
      if (rank->size() != ar.basis.size()) throw Error(Errc::InvalidRule, "one rank per basis element required");
      ar.rank = std::move(*rank);
    } else {
      for (std::size_t i = 0; i < ar.basis.size(); ++i) ar.rank.push_back(static_cast<long long>(i));
    }
    ar.rules = std::move(rules);
    for (const auto& r : ar.rules) {
      if (r.lhs >= ar.basis.size() || r.rhs.size() != ar.basis.size())
        throw Error(Errc::InvalidRule, "rule " + r.id + " does not fit the basis", r.id);
      if (r.rhs[r.lhs] != 0)
        throw Error(Errc::InvalidRule, "rule " + r.id + " has its left-hand side in the support of its right-hand side",
                    r.id);
    }
    return ar;
  }

  std::vector<std::string> rule_ids() const {
    std::vector<std::string> ids;
    for (const auto& r : rules) ids.push_back(r.id);
    return ids;
  }

  bool is_normal_form(std::size_t x) const {
    return std::none_of(rules.begin(), rules.end(), [x](const AlgebraicRule& r) { return r.lhs == x; });
  }

  std::vector<std::size_t> rules_from(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < rules.size(); ++k)
      if (rules[k].lhs == x) out.push_back(k);
    return out;
  }

  Element vector_of(std::size_t x) const { return basis.generator(x); }

  /// R = k{rules}; the source of a rule is its left-hand basis vector and
  /// its target the right-hand side.
  InternalGraph graph() const {
    CarrierObject r = CarrierObject::vect(rule_ids());
    std::vector<Element> s;
    std::vector<Element> t;
    for (const auto& rule : rules) {
      s.push_back(basis.generator(rule.lhs));
      t.push_back(Element::vector(rule.rhs));
    }
    return InternalGraph(CarrierMap::from_images(r, basis, s), CarrierMap::from_images(r, basis, t));
  }
};

/// Every element in the support of a right-hand side is strictly below the
/// left-hand side.
inline void require_decreasing(const AlgebraicRelation& ar) {
  for (const auto& r : ar.rules)
    for (auto y : support(r.rhs))
      if (ar.rank[y] >= ar.rank[r.lhs])
        throw Error(Errc::NotDecreasing,
                    "rule " + r.id + " rewrites " + ar.basis.label(r.lhs) + " to a combination involving " +
                        ar.basis.label(y),
                    r.id);
}

}  // namespace intrew
