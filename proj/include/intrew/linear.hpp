#pragma once

// Algebraic rewriting on kX: the step relations ->_alg and ->_wf, normal
// forms, and the congruence quotient kX / span{x - u}.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"
#include "intrew/filtration.hpp"
#include "intrew/graph.hpp"
#include "intrew/rational.hpp"
#include "intrew/relations.hpp"
#include "intrew/termination.hpp"

namespace intrew {

/// One instance λx + v -> λu + v of a rule x -> u.
struct AlgStep {
  std::size_t rule = 0;
  Rational lambda;
  Vector context;  // v
};

/// λ·rhs + v, provided u = λ·lhs + v.
inline Vector alg_step(const AlgebraicRelation& ar, const Vector& u, std::size_t rule, const Rational& lambda,
                       const Vector& v) {
  if (rule >= ar.rules.size()) throw Error(Errc::InvalidRule, "no such rule");
  const AlgebraicRule& r = ar.rules[rule];
  Vector expected = lambda * unit_vector(ar.basis.size(), r.lhs) + v;
  if (expected != u)
    throw Error(Errc::DecompositionMismatch, "u is not " + lambda.str() + "·" + ar.basis.label(r.lhs) + " + v", r.id);
  return lambda * r.rhs + v;
}

/// alg_step restricted to λ != 0 and lhs outside supp(v).
inline Vector wf_step(const AlgebraicRelation& ar, const Vector& u, std::size_t rule, const Rational& lambda,
                      const Vector& v) {
  if (rule >= ar.rules.size()) throw Error(Errc::InvalidRule, "no such rule");
  const AlgebraicRule& r = ar.rules[rule];
  if (lambda == 0) throw Error(Errc::NotWellFormedStep, "well-formed steps have a non-zero coefficient", r.id);
  if (v[r.lhs] != 0)
    throw Error(Errc::NotWellFormedStep, ar.basis.label(r.lhs) + " occurs in the context of the step", r.id);
  return alg_step(ar, u, rule, lambda, v);
}

/// The unique well-formed step of u at the rule: λ is forced to be the
/// coefficient of the left-hand side and v the rest.
inline std::optional<AlgStep> wf_step_at(const AlgebraicRelation& ar, const Vector& u, std::size_t rule) {
  std::size_t x = ar.rules[rule].lhs;
  if (u[x] == 0) return std::nullopt;
  Vector v = u;
  v[x] = 0;
  return AlgStep{rule, u[x], std::move(v)};
}

inline Vector apply_step(const AlgebraicRelation& ar, const AlgStep& s) {
  return s.lambda * ar.rules[s.rule].rhs + s.context;
}

/// All one-step ->_wf successors, by support position then rule.
inline std::vector<std::pair<AlgStep, Vector>> wf_successors(const AlgebraicRelation& ar, const Vector& u) {
  std::vector<std::pair<AlgStep, Vector>> out;
  for (auto x : support(u))
    for (auto k : ar.rules_from(x)) {
      auto s = wf_step_at(ar, u, k);
      out.emplace_back(*s, apply_step(ar, *s));
    }
  return out;
}

struct Normalization {
  Vector result;
  std::vector<AlgStep> trace;
};

enum class ReductionPosition { Greatest, Least };

/// Repeated ->_wf steps at the greatest (or least) reducible support element,
/// using the chosen rule there.
inline Normalization wf_normalize(const AlgebraicRelation& ar, const Vector& u,
                                  ReductionPosition pos = ReductionPosition::Greatest) {
  require_decreasing(ar);
  auto chosen = algebraic_choice(ar);
  Normalization out{u, {}};
  for (;;) {
    std::optional<std::size_t> at;
    for (auto x : support(out.result)) {
      if (!chosen[x]) continue;
      bool better = !at || (pos == ReductionPosition::Greatest ? ar.rank[x] > ar.rank[*at] : ar.rank[x] < ar.rank[*at]);
      if (better) at = x;
    }
    if (!at) return out;
    AlgStep s = *wf_step_at(ar, out.result, *chosen[*at]);
    out.result = apply_step(ar, s);
    out.trace.push_back(std::move(s));
  }
}

inline std::vector<std::size_t> nf_generators(const AlgebraicRelation& ar) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < ar.basis.size(); ++x)
    if (ar.is_normal_form(x)) out.push_back(x);
  return out;
}

/// NF(->) = span of the basis elements without rules, with its inclusion.
inline Subobject nf_subspace(const AlgebraicRelation& ar) { return sub_generated(ar.basis, nf_generators(ar)); }

/// span{lhs - rhs} as a matrix whose columns are the rule differences.
inline Matrix relation_span(const AlgebraicRelation& ar) {
  std::vector<Vector> cols;
  for (const auto& r : ar.rules) cols.push_back(unit_vector(ar.basis.size(), r.lhs) - r.rhs);
  return Matrix::from_columns(ar.basis.size(), cols);
}

struct CongruenceQuotient {
  CarrierObject object;
  CarrierMap q;       // kX -> kX / span{x - u}
  CarrierMap canmap;  // NF -> quotient
  bool iso = false;
};

inline CongruenceQuotient congruence_quotient(const AlgebraicRelation& ar) {
  Coequalizer ce = quotient_by_graph(ar.graph());
  Subobject nf = nf_subspace(ar);
  CarrierMap can = compose(ce.q, nf.inclusion);
  bool iso = is_isomorphism(can);
  return {ce.object, ce.q, std::move(can), iso};
}

/// A ->_wf trace read as a path in R^sym over kX (R = k{rules}).
inline Path trace_path(const AlgebraicRelation& ar, const InternalGraph& g, const Vector& start,
                       const std::vector<AlgStep>& trace) {
  Path p = unit_path(g, Element::vector(start));
  for (const auto& s : trace) {
    LinearStep ls{zero_vector(ar.rules.size()), zero_vector(ar.rules.size()), s.context};
    ls.forward[s.rule] = s.lambda;
    p.linear_steps.push_back(std::move(ls));
  }
  return p;
}

struct InternalSystem {
  InternalGraph graph;
  LocalStrategy strategy;
};

/// R = k{rules} with its two projections; its reflexive part is the E
/// summand of R + E carried by the strategy.
inline InternalSystem to_internal(const AlgebraicRelation& ar) {
  return {ar.graph(), strategy_from_algebraic_relation(ar)};
}

/// Monomials 1, x, ..., x^degree with x^k -> x^k - x^(k-d) p(x) for a monic p
/// of degree d (coefficients p_0 .. p_{d-1}, leading 1 implied).
inline AlgebraicRelation polynomial_system(const std::vector<Rational>& lower_coefficients, std::size_t degree) {
  const std::size_t d = lower_coefficients.size();
  std::vector<std::string> labels;
  for (std::size_t k = 0; k <= degree; ++k) labels.push_back(k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k));
  CarrierObject basis = CarrierObject::vect(labels);
  std::vector<AlgebraicRule> rules;
  for (std::size_t k = d; k <= degree && d > 0; ++k) {
    Vector rhs = zero_vector(degree + 1);
    for (std::size_t i = 0; i < d; ++i) rhs[k - d + i] = -lower_coefficients[i];
    rules.push_back({"r" + std::to_string(k), k, std::move(rhs)});
  }
  if (d == 0) throw Error(Errc::InvalidRule, "the modulus must have positive degree");
  return AlgebraicRelation::make(std::move(basis), std::move(rules));
}

}  // namespace intrew
