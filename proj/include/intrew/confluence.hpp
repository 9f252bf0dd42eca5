#pragma once

// Local-confluence structures and Newman's lemma for graphs, with the
// classical brute-force equivalences used as oracles.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"
#include "intrew/filtration.hpp"
#include "intrew/graph.hpp"
#include "intrew/linear.hpp"
#include "intrew/relations.hpp"
#include "intrew/report.hpp"
#include "intrew/strategy.hpp"
#include "intrew/termination.hpp"

namespace intrew {

struct LcStructure {
  LocalStrategy base;
  DirectedPoset J = DirectedPoset::nat_prefix(1);
  Filtration rstage;                // J-filtration of R
  std::vector<std::size_t> level;   // J-stage at which each generator of R appears
  std::vector<Path> conv;           // per generator of R: tgt(h(src r)) <->* tgt(r)
};

/// R_j = generators of level at most j, over J = {0 < ... < max level}.
inline Filtration level_filtration(const CarrierObject& r, const std::vector<std::size_t>& level) {
  std::size_t top = level.empty() ? 1 : *std::max_element(level.begin(), level.end());
  std::vector<std::vector<std::size_t>> stages(top + 1);
  for (std::size_t j = 0; j <= top; ++j)
    for (std::size_t k = 0; k < level.size(); ++k)
      if (level[k] <= j) stages[j].push_back(k);
  return filtration_from_stages(DirectedPoset::nat_prefix(top + 1), r, stages);
}

inline LcStructure make_lc_structure(LocalStrategy base, std::vector<std::size_t> level, std::vector<Path> conv) {
  Filtration rs = level_filtration(base.graph.edges(), level);
  DirectedPoset J = rs.index();
  return {std::move(base), std::move(J), std::move(rs), std::move(level), std::move(conv)};
}

inline Report verify_lc_structure(const LcStructure& lc) {
  Report rep;
  const InternalGraph& g = lc.base.graph;
  const CarrierObject& r = g.edges();
  const Filtration& rs = lc.rstage;
  if (!(rs.total() == r) || lc.conv.size() != r.size() || lc.level.size() != r.size() || !(rs.index() == lc.J)) {
    rep.add("shapes", false, {}, "stages or conversions do not match R");
    return rep;
  }
  rep.add("J-total", lc.J.is_total());
  rep.add("min-empty", rs.min().object.size() == 0);

  std::string wlevel;
  std::string wvalid;
  std::string weq1;
  std::string weq2;
  std::string wlow;
  CarrierMap step_t = lc.base.step_target();
  for (std::size_t k = 0; k < r.size(); ++k) {
    const std::string& name = r.label(k);
    Element gen = r.generator(k);
    if (wlevel.empty() && rs.stage_of(gen) != lc.level[k]) wlevel = name;
    const Path& p = lc.conv[k];
    if (!is_valid_path(g, p)) {
      if (wvalid.empty()) wvalid = name;
      continue;
    }
    if (weq1.empty() && !(source(p) == step_t(g.src()(gen)))) weq1 = name;
    if (weq2.empty() && !(target(g, p) == g.tgt()(gen))) weq2 = name;
    if (!wlow.empty()) continue;
    if (g.kind() == Kind::Set) {
      for (const auto& s : p.steps)
        if (lc.level[s.edge] >= lc.level[k]) wlow = name;
    } else {
      const CarrierMap& below = rs.below(lc.level[k]).inj;
      bool minimal = lc.J.is_minimal(lc.level[k]);
      for (const auto& s : p.linear_steps) {
        for (const Vector* v : {&s.forward, &s.backward}) {
          if (is_zero(*v)) continue;
          if (minimal || !preimage(below, Element::vector(*v))) wlow = name;
        }
      }
    }
  }
  rep.add("levels", wlevel.empty(), wlevel);
  rep.add("valid-paths", wvalid.empty(), wvalid);
  rep.add("LC-eq-1", weq1.empty(), weq1);
  rep.add("LC-eq-2", weq2.empty(), weq2);
  rep.add("lower-steps", wlow.empty(), wlow);

  std::string wnat;
  for (std::size_t j = 0; j < lc.J.size() && wnat.empty(); ++j)
    for (auto i : lc.J.lower_covers(j)) {
      for (std::size_t x = 0; x < rs.stage(i).size(); ++x) {
        Path lower = apply_on_generators(g, lc.conv, rs.inj(i).image(x));
        Path upper = apply_on_generators(g, lc.conv, rs.inj(j)(rs.link(i, j).image(x)));
        if (!paths_equal(lower, upper)) {
          wnat = format_element(r, rs.inj(i).image(x));
          break;
        }
      }
    }
  rep.add("naturality", wnat.empty(), wnat);
  return rep;
}

struct NewmanCertificate {
  GlobalStrategy strategy;
  SplitCertificate split;
};

/// Induces the global strategy, re-runs the induction over J showing that
/// H^τ coequalizes every rule, then certifies the split coequalizer.
inline NewmanCertificate newman(const LcStructure& lc) {
  Report rep = verify_lc_structure(lc);
  if (!rep.passed()) {
    const Check* c = rep.first_failure();
    throw Error(Errc::InvalidLc, "lc-structure fails " + c->name, c->witness);
  }
  GlobalStrategy gs = induce_global_strategy(lc.base);
  const InternalGraph& g = lc.base.graph;
  const CarrierObject& r = g.edges();
  CarrierMap step_t = lc.base.step_target();
  auto bug = [](const std::string& what, const std::string& w) {
    return Error(Errc::InternalConsistency, "Newman audit: " + what + " at " + w, w);
  };
  std::vector<std::size_t> order(r.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lc.level[a] < lc.level[b]; });
  std::vector<bool> audited(r.size(), false);
  for (auto k : order) {
    Element gen = r.generator(k);
    Element x = g.src()(gen);
    if (!(gs.Htau(x) == gs.Htau(step_t(x)))) throw bug("recursion equation fails", r.label(k));
    const Path& p = lc.conv[k];
    for (const auto& s : p.steps)
      if (!audited[s.edge]) throw bug("conversion uses an unaudited step", r.label(k));
    for (const auto& s : p.linear_steps)
      for (const Vector* v : {&s.forward, &s.backward}) {
        Element e = Element::vector(*v);
        if (!(gs.Htau(g.src()(e)) == gs.Htau(g.tgt()(e)))) throw bug("conversion step not coequalized", r.label(k));
      }
    if (!(gs.Htau(source(p)) == gs.Htau(target(g, p)))) throw bug("conversion ends differ", r.label(k));
    if (!(gs.Htau(x) == gs.Htau(g.tgt()(gen)))) throw bug("rule not coequalized", r.label(k));
    audited[k] = true;
  }
  auto conf = is_confluent_strategy(gs);
  if (!conf.confluent) throw bug("strategy not confluent", conf.witness);
  SplitCertificate cert = split_coequalizer_certificate(gs);
  if (!cert.holds()) throw bug("split coequalizer certificate fails", cert.witness);
  return {std::move(gs), cert};
}

struct LcSearch {
  std::optional<LcStructure> lc;
  std::optional<std::size_t> blocked;  // generator of R without a conversion
  std::string witness;
};

/// J-levels for a set graph: the longest rewriting sequence from the source
/// when the edges form a terminating relation, otherwise the stage depth of
/// the source (shifted so that no edge sits at level 0).
inline std::vector<std::size_t> set_lc_levels(const LocalStrategy& ls) {
  const InternalGraph& g = ls.graph;
  SetRelation rel{g.base(), {}};
  for (std::size_t k = 0; k < g.edges().size(); ++k)
    rel.rules.push_back({g.edges().label(k), g.src().table()[k], g.tgt().table()[k]});
  std::vector<std::size_t> level(g.edges().size());
  if (!find_cycle(rel)) {
    auto longest = longest_derivation(rel);
    for (std::size_t k = 0; k < level.size(); ++k) level[k] = longest[g.src().table()[k]];
    return level;
  }
  const Filtration& f = ls.filtration;
  bool shift = false;
  for (std::size_t k = 0; k < level.size(); ++k) {
    level[k] = f.index().depth(f.stage_of(g.src().image(k)));
    shift = shift || level[k] == 0;
  }
  if (shift)
    for (auto& l : level) ++l;
  return level;
}

/// Breadth-first search for conversions through strictly lower edges, steps
/// tried by (level, edge, forward first).
inline LcSearch search_lc_structure_set(const LocalStrategy& ls, std::optional<std::size_t> depth_cap = std::nullopt) {
  const InternalGraph& g = ls.graph;
  if (g.kind() != Kind::Set) throw Error(Errc::KindMismatch, "search_lc_structure_set needs a set graph");
  const std::size_t n = g.base().size();
  const std::size_t cap = depth_cap.value_or(2 * n);
  const auto& src = g.src().table();
  const auto& tgt = g.tgt().table();
  auto level = set_lc_levels(ls);

  std::vector<std::tuple<std::size_t, std::size_t, int>> order;
  for (std::size_t e = 0; e < src.size(); ++e) {
    order.emplace_back(level[e], e, 0);
    order.emplace_back(level[e], e, 1);
  }
  std::sort(order.begin(), order.end());

  CarrierMap step_t = ls.step_target();
  std::vector<Path> conv;
  for (std::size_t k = 0; k < src.size(); ++k) {
    std::size_t from = step_t.table()[src[k]];
    std::size_t to = tgt[k];
    std::vector<std::optional<std::pair<std::size_t, PathStep>>> parent(n);
    std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
    dist[from] = 0;
    std::deque<std::size_t> queue{from};
    while (!queue.empty() && dist[to] == std::numeric_limits<std::size_t>::max()) {
      std::size_t y = queue.front();
      queue.pop_front();
      if (dist[y] >= cap) continue;
      for (const auto& [lv, e, dir] : order) {
        if (lv >= level[k]) break;
        std::size_t a = dir == 0 ? src[e] : tgt[e];
        std::size_t b = dir == 0 ? tgt[e] : src[e];
        if (a != y || dist[b] != std::numeric_limits<std::size_t>::max()) continue;
        dist[b] = dist[y] + 1;
        parent[b] = std::make_pair(y, PathStep{e, dir == 0 ? Direction::Forward : Direction::Backward});
        queue.push_back(b);
      }
    }
    if (dist[to] == std::numeric_limits<std::size_t>::max()) return {std::nullopt, k, g.edges().label(k)};
    Path p = unit_path(g, Element::point(from));
    for (std::size_t at = to; at != from; at = parent[at]->first) p.steps.push_back(parent[at]->second);
    std::reverse(p.steps.begin(), p.steps.end());
    conv.push_back(std::move(p));
  }
  return {make_lc_structure(ls, std::move(level), std::move(conv)), std::nullopt, {}};
}

/// Longest chain x > y1 > y2 ... following supports of right-hand sides.
inline std::vector<std::size_t> support_depth(const AlgebraicRelation& ar) {
  require_decreasing(ar);
  std::vector<std::size_t> order(ar.basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ar.rank[a] < ar.rank[b]; });
  std::vector<std::size_t> depth(ar.basis.size(), 0);
  for (auto x : order)
    for (auto k : ar.rules_from(x)) {
      std::size_t d = 1;
      for (auto y : support(ar.rules[k].rhs)) d = std::max(d, depth[y] + 1);
      depth[x] = std::max(depth[x], d);
    }
  return depth;
}

/// Conversions from basis peaks: both sides of x -> h^τ(x) and x -> u are
/// normalized and the two traces joined. Blocked when the normal forms differ.
inline LcSearch construct_lc_structure_linear(const AlgebraicRelation& ar) {
  LocalStrategy ls = strategy_from_algebraic_relation(ar);
  const InternalGraph& g = ls.graph;
  auto depth = support_depth(ar);
  auto choice = algebraic_choice(ar);
  std::vector<std::size_t> level;
  std::vector<Path> conv;
  for (std::size_t k = 0; k < ar.rules.size(); ++k) {
    const AlgebraicRule& r = ar.rules[k];
    level.push_back(depth[r.lhs]);
    const Vector& start = ar.rules[*choice[r.lhs]].rhs;
    if (*choice[r.lhs] == k) {
      conv.push_back(unit_path(g, Element::vector(start)));
      continue;
    }
    Normalization a = wf_normalize(ar, start);
    Normalization b = wf_normalize(ar, r.rhs);
    if (a.result != b.result) return {std::nullopt, k, r.id};
    Path pa = trace_path(ar, g, start, a.trace);
    Path pb = trace_path(ar, g, r.rhs, b.trace);
    conv.push_back(compose_paths(g, pa, invert_path(g, pb)));
  }
  return {make_lc_structure(std::move(ls), std::move(level), std::move(conv)), std::nullopt, {}};
}

// ---------------------------------------------------------------------------
// Classical equivalences, decided by brute force

/// Named boolean verdicts that are expected to coincide.
struct Verdicts {
  std::vector<std::pair<std::string, bool>> values;
  std::string witness;

  bool value(const std::string& name) const {
    for (const auto& [n, v] : values)
      if (n == name) return v;
    throw Error(Errc::InternalConsistency, "no verdict named " + name);
  }

  bool agree() const {
    return std::all_of(values.begin(), values.end(), [&](const auto& p) { return p.second == values.front().second; });
  }
};

/// Reflexive-transitive reachability of a finite relation, row per element.
inline std::vector<boost::dynamic_bitset<>> reachability(const SetRelation& rel) {
  const std::size_t n = rel.elements.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& r : rel.rules) succ[r.source].push_back(r.target);
  std::vector<boost::dynamic_bitset<>> reach(n, boost::dynamic_bitset<>(n));
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> stack{x};
    reach[x].set(x);
    while (!stack.empty()) {
      std::size_t y = stack.back();
      stack.pop_back();
      for (auto z : succ[y])
        if (!reach[x].test(z)) {
          reach[x].set(z);
          stack.push_back(z);
        }
    }
  }
  return reach;
}

/// SC1 local confluence, SC2 confluence, SC3 Church-Rosser, SC4 NF -> E/<->*
/// bijective.
inline Verdicts sc_suite(const SetRelation& rel) {
  require_terminating(rel);
  const std::size_t n = rel.elements.size();
  auto reach = reachability(rel);
  auto joinable = [&](std::size_t a, std::size_t b) { return reach[a].intersects(reach[b]); };
  auto lbl = [&](std::size_t x) { return rel.elements.label(x); };
  Verdicts out;

  std::string w1;
  for (std::size_t i = 0; i < rel.rules.size() && w1.empty(); ++i)
    for (std::size_t j = i + 1; j < rel.rules.size(); ++j) {
      const auto& a = rel.rules[i];
      const auto& b = rel.rules[j];
      if (a.source == b.source && !joinable(a.target, b.target)) {
        w1 = lbl(a.target) + " <- " + lbl(a.source) + " -> " + lbl(b.target);
        break;
      }
    }
  out.values.emplace_back("SC1", w1.empty());

  std::string w2;
  for (std::size_t x = 0; x < n && w2.empty(); ++x)
    for (auto y = reach[x].find_first(); y != boost::dynamic_bitset<>::npos && w2.empty(); y = reach[x].find_next(y))
      for (auto z = reach[x].find_next(y); z != boost::dynamic_bitset<>::npos; z = reach[x].find_next(z))
        if (!joinable(y, z)) {
          w2 = lbl(y) + " <<- " + lbl(x) + " ->> " + lbl(z);
          break;
        }
  out.values.emplace_back("SC2", w2.empty());

  UnionFind uf(n);
  for (const auto& r : rel.rules) uf.unite(r.source, r.target);
  std::string w3;
  for (std::size_t x = 0; x < n && w3.empty(); ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (uf.find(x) == uf.find(y) && !joinable(x, y)) {
        w3 = lbl(x) + " <->* " + lbl(y);
        break;
      }
  out.values.emplace_back("SC3", w3.empty());

  std::map<std::size_t, std::size_t> nf_of_class;
  std::string w4;
  for (std::size_t x = 0; x < n; ++x) {
    if (!rel.is_normal_form(x)) continue;
    auto [it, fresh] = nf_of_class.emplace(uf.find(x), x);
    if (!fresh && w4.empty()) w4 = lbl(it->second) + " ~ " + lbl(x);
  }
  for (std::size_t x = 0; x < n && w4.empty(); ++x)
    if (!nf_of_class.count(uf.find(x))) w4 = lbl(x);
  out.values.emplace_back("SC4", w4.empty());

  for (const auto& w : {w1, w2, w3, w4})
    if (out.witness.empty()) out.witness = w;
  return out;
}

struct WfClosure {
  std::vector<Vector> states;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Every vector reachable from the seeds by ->_wf steps. Finite because the
/// relation terminates and each vector has finitely many successors.
inline WfClosure wf_closure(const AlgebraicRelation& ar, const std::vector<Vector>& seeds, std::size_t max_states) {
  WfClosure out;
  std::map<Vector, std::size_t> index;
  std::deque<std::size_t> queue;
  auto intern = [&](const Vector& v) {
    auto [it, fresh] = index.emplace(v, out.states.size());
    if (fresh) {
      if (out.states.size() >= max_states)
        throw Error(Errc::BoundExceeded, "more than " + std::to_string(max_states) + " reachable vectors");
      out.states.push_back(v);
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (const auto& s : seeds) intern(s);
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    Vector u = out.states[i];
    for (const auto& [step, w] : wf_successors(ar, u)) out.edges.emplace_back(i, intern(w));
  }
  return out;
}

/// The ->_wf closure of the seeds as a finite relation labelled by vectors.
inline SetRelation wf_fragment(const AlgebraicRelation& ar, const std::vector<Vector>& seeds, std::size_t max_states) {
  WfClosure c = wf_closure(ar, seeds, max_states);
  std::vector<std::string> labels;
  for (const auto& v : c.states) labels.push_back(format_element(ar.basis, Element::vector(v)));
  SetRelation rel{CarrierObject::set(std::move(labels)), {}};
  for (const auto& [a, b] : c.edges) rel.rules.push_back({rel.elements.label(a) + "->" + rel.elements.label(b), a, b});
  return rel;
}

/// Basis vectors and e_x ± e_y for x < y.
inline std::vector<Vector> ac_seeds(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t x = 0; x < n; ++x) out.push_back(unit_vector(n, x));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      out.push_back(unit_vector(n, x) + unit_vector(n, y));
      out.push_back(unit_vector(n, x) - unit_vector(n, y));
    }
  return out;
}

/// AC1 joinability of basis peaks, AC2 confluence on the reachable fragment,
/// AC3 NF -> kX/<->* an isomorphism.
inline Verdicts ac_suite(const AlgebraicRelation& ar, std::size_t max_states = 20000) {
  require_decreasing(ar);
  const std::size_t n = ar.basis.size();
  Verdicts out;
  auto reach_set = [&](const Vector& u) {
    auto states = wf_closure(ar, {u}, max_states).states;
    std::sort(states.begin(), states.end());
    return states;
  };
  std::string w1;
  for (std::size_t x = 0; x < n && w1.empty(); ++x) {
    auto from = ar.rules_from(x);
    for (std::size_t i = 0; i < from.size() && w1.empty(); ++i)
      for (std::size_t j = i + 1; j < from.size(); ++j) {
        auto ru = reach_set(ar.rules[from[i]].rhs);
        auto rv = reach_set(ar.rules[from[j]].rhs);
        std::vector<Vector> common;
        std::set_intersection(ru.begin(), ru.end(), rv.begin(), rv.end(), std::back_inserter(common));
        if (common.empty()) {
          w1 = ar.rules[from[i]].id + " / " + ar.rules[from[j]].id;
          break;
        }
      }
  }
  out.values.emplace_back("AC1", w1.empty());

  Verdicts sc = sc_suite(wf_fragment(ar, ac_seeds(n), max_states));
  out.values.emplace_back("AC2", sc.value("SC2"));

  CongruenceQuotient cq = congruence_quotient(ar);
  out.values.emplace_back("AC3", cq.iso);
  out.witness = !w1.empty() ? w1 : sc.witness;
  return out;
}

struct BridgeReport {
  std::size_t trials = 0;
  std::size_t counterexamples = 0;
  bool basis_clause = true;  // x -> u is also a ->_alg and a ->_wf step
  std::string first_counterexample;
};

/// Random ->_alg steps u -> v, each checked for some w with u ->=_wf w and
/// v ->=_wf w.
inline BridgeReport bridge_lemma_check(const AlgebraicRelation& ar, std::size_t trials, std::mt19937_64& rng) {
  require_decreasing(ar);
  const std::size_t n = ar.basis.size();
  BridgeReport rep;
  for (std::size_t k = 0; k < ar.rules.size(); ++k) {
    Vector x = unit_vector(n, ar.rules[k].lhs);
    Vector zero = zero_vector(n);
    if (wf_step(ar, x, k, 1, zero) != ar.rules[k].rhs || alg_step(ar, x, k, 1, zero) != ar.rules[k].rhs)
      rep.basis_clause = false;
  }
  if (ar.rules.empty()) return rep;
  std::uniform_int_distribution<std::size_t> pick_rule(0, ar.rules.size() - 1);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> eighth(0, 7);
  auto one_step = [&](const Vector& u) {
    std::vector<Vector> out{u};
    for (const auto& [s, w] : wf_successors(ar, u)) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t k = pick_rule(rng);
    Rational lambda = eighth(rng) == 0 ? Rational(0) : Rational(num(rng), den(rng));
    Vector ctx = zero_vector(n);
    for (auto& c : ctx)
      if (coin(rng)) c = Rational(num(rng), den(rng));
    Vector u = lambda * unit_vector(n, ar.rules[k].lhs) + ctx;
    Vector v = alg_step(ar, u, k, lambda, ctx);
    auto su = one_step(u);
    auto sv = one_step(v);
    std::vector<Vector> common;
    std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(), std::back_inserter(common));
    ++rep.trials;
    if (common.empty()) {
      if (rep.counterexamples++ == 0)
        rep.first_counterexample = format_element(ar.basis, Element::vector(u)) + " -> " +
                                   format_element(ar.basis, Element::vector(v));
    }
  }
  return rep;
}

}  // namespace intrew
