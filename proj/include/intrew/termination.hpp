#pragma once

// Terminating graphs: a graph R over a filtered object E with a local
// strategy h : E -> R + E and h^τ_i : E_i -> E_{<i}.

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"
#include "intrew/filtration.hpp"
#include "intrew/graph.hpp"
#include "intrew/relations.hpp"
#include "intrew/report.hpp"

namespace intrew {

struct LocalStrategy {
  InternalGraph graph;
  Filtration filtration;
  CarrierMap h;                  // E -> R + E, laid out as reflexive_closure(graph)
  std::vector<CarrierMap> htau;  // E_i -> E_{<i}

  GraphSum reflexive() const { return reflexive_closure(graph); }

  /// tgt_{R+E} ∘ h as a map E -> E.
  CarrierMap step_target() const { return compose(reflexive().graph.tgt(), h); }
};

namespace detail {

inline std::string witness_in(const CarrierObject& e, const CarrierMap& into_e, std::size_t generator) {
  return format_element(e, into_e.image(generator));
}

}  // namespace detail

inline Report verify_local_strategy(const LocalStrategy& ls) {
  Report rep;
  const Filtration& f = ls.filtration;
  const DirectedPoset& I = f.index();
  const CarrierObject& e = f.total();
  GraphSum re = ls.reflexive();

  bool shapes = ls.graph.base() == e && ls.h.dom() == e && ls.h.cod() == re.graph.edges() &&
                ls.htau.size() == I.size();
  for (std::size_t i = 0; shapes && i < I.size(); ++i)
    shapes = ls.htau[i].dom() == f.stage(i) && ls.htau[i].cod() == f.below(i).object;
  if (!shapes) {
    rep.add("shapes", false, {}, "h or h^tau has the wrong domain or codomain");
    return rep;
  }

  // Finite posets built by DirectedPoset are acyclic, hence terminating.
  rep.add("TG1", I.size() > 0);

  {
    CarrierMap lhs = compose(re.graph.src(), ls.h);
    auto d = first_difference(lhs, identity(e));
    rep.add("TG2", !d, d ? format_element(e, e.generator(*d)) : std::string{});
  }
  {
    std::string witness;
    for (auto i : I.minimal()) {
      auto d = first_difference(compose(ls.h, f.inj(i)), compose(re.inj2, f.inj(i)));
      if (d) {
        witness = detail::witness_in(e, f.inj(i), *d);
        break;
      }
    }
    rep.add("TG3", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t i = 0; i < I.size() && witness.empty(); ++i) {
      auto d = first_difference(compose(re.graph.tgt(), compose(ls.h, f.inj(i))), compose(f.below(i).inj, ls.htau[i]));
      if (d) witness = detail::witness_in(e, f.inj(i), *d);
    }
    rep.add("TG4", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t i = 0; i < I.size() && witness.empty(); ++i)
      for (auto j : I.lower_covers(i)) {
        auto d = first_difference(compose(f.below_transition(j, i), ls.htau[j]), compose(ls.htau[i], f.link(j, i)));
        if (d) {
          witness = detail::witness_in(e, f.inj(j), *d);
          break;
        }
      }
    rep.add("naturality", witness.empty(), witness);
  }
  {
    std::string witness;
    for (auto i : I.minimal()) {
      auto d = first_difference(ls.htau[i], identity(f.stage(i)));
      if (d) {
        witness = detail::witness_in(e, f.inj(i), *d);
        break;
      }
    }
    rep.add("min-identity", witness.empty(), witness);
  }
  return rep;
}

/// h^τ_i obtained by factoring tgt ∘ h ∘ ι_i through ι_{<i}. Throws
/// VerificationFailed (TG4) when some step does not go down the filtration.
inline std::vector<CarrierMap> derive_htau(const InternalGraph& g, const Filtration& f, const CarrierMap& h) {
  CarrierMap t = compose(reflexive_closure(g).graph.tgt(), h);
  std::vector<CarrierMap> out;
  for (std::size_t i = 0; i < f.index().size(); ++i) {
    CarrierMap ti = compose(t, f.inj(i));
    auto k = factor_through(ti, f.below(i).inj);
    if (!k) {
      std::string w;
      for (std::size_t x = 0; x < f.stage(i).size() && w.empty(); ++x)
        if (!preimage(f.below(i).inj, ti.image(x))) w = format_element(f.total(), f.inj(i).image(x));
      throw Error(Errc::VerificationFailed, "TG4: the chosen step at " + w + " does not go down the filtration", w);
    }
    out.push_back(std::move(*k));
  }
  return out;
}

/// h from a choice of edge per generator of E (nullopt: the unit).
inline CarrierMap h_from_choice(const InternalGraph& g, const std::vector<std::optional<std::size_t>>& choice) {
  GraphSum re = reflexive_closure(g);
  const CarrierObject& e = g.base();
  if (choice.size() != e.size()) throw Error(Errc::DomainMismatch, "one choice per generator of E required");
  std::vector<Element> images;
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (choice[x] && *choice[x] >= g.edges().size())
      throw Error(Errc::DomainMismatch, "choice at " + e.label(x) + " is not an edge of R", e.label(x));
    images.push_back(choice[x] ? re.inj1.image(*choice[x]) : re.inj2.image(x));
  }
  return CarrierMap::from_images(e, re.graph.edges(), images);
}

/// Local strategy with a user-supplied filtration and step choice.
inline LocalStrategy strategy_from_choice(const InternalGraph& g, Filtration f,
                                          const std::vector<std::optional<std::size_t>>& choice) {
  if (!(g.base() == f.total())) throw Error(Errc::DomainMismatch, "filtration and graph have different bases");
  CarrierMap h = h_from_choice(g, choice);
  auto htau = derive_htau(g, f, h);
  return {g, std::move(f), std::move(h), std::move(htau)};
}

/// Normal forms keep the unit; any other x takes a rule x -> y with y in a
/// lower stage, preferring the least target stage, then the earliest target
/// in element order, then the earliest rule.
inline LocalStrategy strategy_from_set_relation(const SetRelation& rel) {
  auto st = relation_stages(rel);
  Filtration f = filtration_from_terminating_relation(rel);
  std::vector<std::optional<std::size_t>> choice(rel.elements.size());
  for (std::size_t x = 0; x < rel.elements.size(); ++x) {
    if (st[x] == 0) continue;
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> best;
    for (std::size_t k = 0; k < rel.rules.size(); ++k) {
      const auto& r = rel.rules[k];
      if (r.source != x || st[r.target] >= st[x]) continue;
      auto key = std::make_tuple(st[r.target], r.target, k);
      if (!best || key < *best) best = key;
    }
    choice[x] = std::get<2>(*best);
  }
  return strategy_from_choice(rel.graph(), std::move(f), choice);
}

/// Per basis element: nothing on normal forms, otherwise the rule whose
/// right-hand side sits in the lowest stage (earliest rule on ties).
inline std::vector<std::optional<std::size_t>> algebraic_choice(const AlgebraicRelation& ar) {
  auto ht = height(ar);
  std::vector<std::optional<std::size_t>> choice(ar.basis.size());
  for (std::size_t x = 0; x < ar.basis.size(); ++x) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (auto k : ar.rules_from(x)) {
      auto key = std::make_pair(rhs_height(ar.rules[k].rhs, ht), k);
      if (!best || key < *best) best = key;
    }
    if (best) choice[x] = best->second;
  }
  return choice;
}

inline LocalStrategy strategy_from_algebraic_relation(const AlgebraicRelation& ar) {
  return strategy_from_choice(ar.graph(), filtration_from_height(ar), algebraic_choice(ar));
}

/// (S, (f + id) ∘ h, h^τ) for a graph morphism f : R -> S.
inline LocalStrategy transport_strategy(const LocalStrategy& ls, const InternalGraph& s, const CarrierMap& f) {
  if (!is_graph_morphism(ls.graph, s, f)) throw Error(Errc::NotGraphMorphism, "transport along a non-morphism");
  GraphSum rs = reflexive_closure(s);
  GraphSum rr = ls.reflexive();
  Coproduct cp{rr.graph.edges(), {rr.inj1, rr.inj2}};
  CarrierMap f_plus_id = copair(cp, {compose(rs.inj1, f), rs.inj2});
  return {s, ls.filtration, compose(f_plus_id, ls.h), ls.htau};
}

}  // namespace intrew
