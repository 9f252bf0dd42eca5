#pragma once

// Seeded random instances and the property suites run over them.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "intrew/confluence.hpp"

namespace intrew {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for instance `index` of a run seeded with `seed`.
inline std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
}

/// Runs body(i) for i < count on up to `threads` workers; results keep index order.
template <typename T>
std::vector<T> run_indexed(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& body) {
  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) slots[i] = body(i);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

inline std::vector<std::size_t> random_rank(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::shuffle(rank.begin(), rank.end(), rng);
  return rank;
}

inline std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 4);
  long long d = den(rng) == 4 ? 2 : 1;
  return Rational(num(rng), d);
}

}  // namespace detail

/// Terminating relation: every rule goes down a random rank.
inline SetRelation random_set_system(std::mt19937_64& rng, std::size_t max_elements, std::size_t max_rules) {
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(max_elements, 1));
  std::size_t n = size(rng);
  auto rank = detail::random_rank(rng, n);
  std::uniform_int_distribution<std::size_t> count(0, max_rules);
  std::size_t wanted = count(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  SetRelation rel{CarrierObject::set(detail::numbered("e", n)), {}};
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (std::size_t attempt = 0; attempt < 4 * wanted && rel.rules.size() < wanted; ++attempt) {
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (rank[a] <= rank[b] || !used.insert({a, b}).second) continue;
    rel.rules.push_back({rel.elements.label(a) + "->" + rel.elements.label(b), a, b});
  }
  return rel;
}

/// Decreasing algebraic relation on at most max_basis basis elements.
inline AlgebraicRelation random_algebraic_system(std::mt19937_64& rng, std::size_t max_basis) {
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(max_basis, 1));
  std::size_t n = size(rng);
  auto rank = detail::random_rank(rng, n);
  std::vector<AlgebraicRule> rules;
  std::uniform_int_distribution<int> rule_count(0, 2);
  std::uniform_int_distribution<int> coin(0, 2);
  for (std::size_t x = 0; x < n; ++x) {
    int k = rank[x] == 0 ? 0 : rule_count(rng);
    for (int c = 0; c < k; ++c) {
      Vector rhs = zero_vector(n);
      for (std::size_t y = 0; y < n; ++y)
        if (rank[y] < rank[x] && coin(rng) != 0) rhs[y] = detail::small_rational(rng);
      rules.push_back({"r" + std::to_string(rules.size()), x, std::move(rhs)});
    }
  }
  std::vector<long long> order(rank.begin(), rank.end());
  return AlgebraicRelation::make(CarrierObject::vect(detail::numbered("b", n)), std::move(rules), std::move(order));
}

inline InternalGraph random_set_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges) {
  std::uniform_int_distribution<std::size_t> size(1, max_vertices);
  std::size_t n = size(rng);
  std::uniform_int_distribution<std::size_t> count(0, max_edges);
  std::size_t m = count(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> s(m), t(m);
  for (std::size_t k = 0; k < m; ++k) {
    s[k] = pick(rng);
    t[k] = pick(rng);
  }
  CarrierObject e = CarrierObject::set(detail::numbered("v", n));
  CarrierObject r = CarrierObject::set(detail::numbered("r", m));
  return InternalGraph(CarrierMap::set_map(r, e, s), CarrierMap::set_map(r, e, t));
}

inline InternalGraph random_vect_graph(std::mt19937_64& rng, std::size_t max_dim, std::size_t max_edges) {
  std::uniform_int_distribution<std::size_t> size(1, max_dim);
  std::size_t n = size(rng);
  std::uniform_int_distribution<std::size_t> count(0, max_edges);
  std::size_t m = count(rng);
  Matrix s(n, m), t(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      s(i, k) = detail::small_rational(rng);
      t(i, k) = detail::small_rational(rng);
    }
  CarrierObject e = CarrierObject::vect(detail::numbered("v", n));
  CarrierObject r = CarrierObject::vect(detail::numbered("r", m));
  return InternalGraph(CarrierMap::linear(r, e, s), CarrierMap::linear(r, e, t));
}

// ---------------------------------------------------------------------------
// Set systems: SC1-SC4, lc-search and Newman

struct SetInstanceResult {
  std::size_t index = 0;
  std::size_t elements = 0;
  std::size_t rules = 0;
  Verdicts sc;
  bool lc_found = false;
  bool search_complete = true;      // SC1 implies the lc-search succeeds
  std::optional<bool> newman_ok;    // certificate produced and SC2 agrees
  std::optional<bool> split_holds;  // for every confluent induced strategy
  std::string error;

  bool passed() const {
    return error.empty() && sc.agree() && search_complete && newman_ok.value_or(true) && split_holds.value_or(true);
  }
};

inline SetInstanceResult set_instance(const SetRelation& rel, std::size_t index, std::optional<std::size_t> depth_cap) {
  SetInstanceResult out;
  out.index = index;
  out.elements = rel.elements.size();
  out.rules = rel.rules.size();
  try {
    out.sc = sc_suite(rel);
    LocalStrategy ls = strategy_from_set_relation(rel);
    LcSearch search = search_lc_structure_set(ls, depth_cap);
    out.lc_found = search.lc.has_value();
    out.search_complete = !out.sc.value("SC1") || out.lc_found;
    if (search.lc) {
      NewmanCertificate cert = newman(*search.lc);
      out.newman_ok = cert.split.holds() && out.sc.value("SC2");
    }
    GlobalStrategy gs = induce_global_strategy(ls);
    if (is_confluent_strategy(gs).confluent) out.split_holds = split_coequalizer_certificate(gs).holds();
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

inline std::vector<SetInstanceResult> run_set_suite(std::uint64_t seed, std::size_t count, std::size_t max_elements,
                                                    std::size_t max_rules, std::optional<std::size_t> depth_cap = {},
                                                    unsigned threads = default_threads()) {
  return run_indexed<SetInstanceResult>(count, threads, [&](std::size_t i) {
    auto rng = instance_rng(seed, i);
    return set_instance(random_set_system(rng, max_elements, max_rules), i, depth_cap);
  });
}

// ---------------------------------------------------------------------------
// Algebraic systems: AC1-AC3, bridge lemma, Newman

struct LinearInstanceResult {
  std::size_t index = 0;
  std::size_t basis = 0;
  std::size_t rules = 0;
  Verdicts ac;
  bool lc_found = false;
  std::optional<bool> newman_ok;  // certificate holds and matches the rank oracle
  std::optional<bool> split_holds;
  std::size_t bridge_trials = 0;
  std::size_t bridge_counterexamples = 0;
  bool bridge_basis_clause = true;
  std::string error;

  bool passed() const {
    return error.empty() && ac.agree() && lc_found == ac.value("AC1") && newman_ok.value_or(true) &&
           split_holds.value_or(true) && bridge_counterexamples == 0 && bridge_basis_clause;
  }
};

/// dim kX - rank{x - u}, by elimination independent of the carrier code.
inline std::size_t quotient_dimension_by_rank(const AlgebraicRelation& ar) {
  std::vector<Vector> rows;
  for (const auto& r : ar.rules) rows.push_back(unit_vector(ar.basis.size(), r.lhs) - r.rhs);
  return ar.basis.size() - row_reduce(Matrix::from_rows(ar.basis.size(), rows)).pivots.size();
}

inline LinearInstanceResult linear_instance(const AlgebraicRelation& ar, std::size_t index, std::size_t bridge_trials,
                                            std::mt19937_64& rng) {
  LinearInstanceResult out;
  out.index = index;
  out.basis = ar.basis.size();
  out.rules = ar.rules.size();
  try {
    out.ac = ac_suite(ar);
    LcSearch search = construct_lc_structure_linear(ar);
    out.lc_found = search.lc.has_value();
    if (search.lc) {
      NewmanCertificate cert = newman(*search.lc);
      out.newman_ok = cert.split.holds() && cert.split.min_size == quotient_dimension_by_rank(ar) &&
                      cert.split.quotient_size == cert.split.min_size;
    }
    GlobalStrategy gs = induce_global_strategy(strategy_from_algebraic_relation(ar));
    if (is_confluent_strategy(gs).confluent) out.split_holds = split_coequalizer_certificate(gs).holds();
    BridgeReport br = bridge_lemma_check(ar, bridge_trials, rng);
    out.bridge_trials = br.trials;
    out.bridge_counterexamples = br.counterexamples;
    out.bridge_basis_clause = br.basis_clause;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

inline std::vector<LinearInstanceResult> run_linear_suite(std::uint64_t seed, std::size_t count, std::size_t max_basis,
                                                          std::size_t bridge_trials,
                                                          unsigned threads = default_threads()) {
  return run_indexed<LinearInstanceResult>(count, threads, [&](std::size_t i) {
    auto rng = instance_rng(seed, i);
    AlgebraicRelation ar = random_algebraic_system(rng, max_basis);
    return linear_instance(ar, i, bridge_trials, rng);
  });
}

// ---------------------------------------------------------------------------
// E/R = E/R^sym

struct QuotientInstanceResult {
  std::size_t index = 0;
  Kind kind = Kind::Set;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  bool agree = false;
};

inline QuotientInstanceResult quotient_instance(const InternalGraph& g, std::size_t index) {
  QuotientInstanceResult out{index, g.kind(), g.base().size(), g.edges().size(), false};
  Coequalizer q = quotient_by_graph(g);
  Coequalizer qs = quotient_by_graph(symmetric_closure(g).graph);
  Coequalizer qt = quotient_by_graph(truncated_closure(g, 2, true).graph);
  out.agree = q.object == qs.object && equal_maps(q.q, qs.q) && q.object == qt.object && equal_maps(q.q, qt.q);
  return out;
}

/// Even indices are set graphs, odd indices vector-space graphs.
inline std::vector<QuotientInstanceResult> run_quotient_suite(std::uint64_t seed, std::size_t count,
                                                              std::size_t max_elements,
                                                              unsigned threads = default_threads()) {
  return run_indexed<QuotientInstanceResult>(count, threads, [&](std::size_t i) {
    auto rng = instance_rng(seed, i);
    InternalGraph g = i % 2 == 0 ? random_set_graph(rng, max_elements, 2 * max_elements)
                                 : random_vect_graph(rng, std::min<std::size_t>(max_elements, 4), 3);
    return quotient_instance(g, i);
  });
}

// ---------------------------------------------------------------------------
// Universal property of the closures, exhaustively on small set graphs

struct ClosureEnumeration {
  std::size_t graphs = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

namespace detail {

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;

inline PairSet close_pairs(PairSet p, std::size_t n, Closure which) {
  const bool refl = which == Closure::Refl || which == Closure::ReflTrans || which == Closure::ReflSymTrans;
  const bool sym = which == Closure::Sym || which == Closure::ReflSymTrans;
  const bool trans = which == Closure::Trans || which == Closure::ReflTrans || which == Closure::ReflSymTrans;
  if (refl)
    for (std::size_t x = 0; x < n; ++x) p.insert({x, x});
  for (bool changed = true; changed;) {
    changed = false;
    PairSet add;
    if (sym)
      for (auto [a, b] : p) add.insert({b, a});
    if (trans)
      for (auto [a, b] : p)
        for (auto [c, d] : p)
          if (b == c) add.insert({a, d});
    for (const auto& q : add) changed = p.insert(q).second || changed;
  }
  return p;
}

inline InternalGraph relation_graph(const CarrierObject& e, const PairSet& pairs) {
  std::vector<std::string> labels;
  std::vector<std::size_t> s, t;
  for (auto [a, b] : pairs) {
    labels.push_back(e.label(a) + e.label(b));
    s.push_back(a);
    t.push_back(b);
  }
  CarrierObject r = CarrierObject::set(std::move(labels));
  return InternalGraph(CarrierMap::set_map(r, e, s), CarrierMap::set_map(r, e, t));
}

/// Every relation closed under `which`, containing `base`, with at most `limit` pairs.
inline std::vector<PairSet> closed_supersets(const PairSet& base, std::size_t n, Closure which, std::size_t limit) {
  std::set<PairSet> seen;
  std::vector<PairSet> out;
  PairSet start = close_pairs(base, n, which);
  if (start.size() > limit) return out;
  std::vector<PairSet> stack{start};
  seen.insert(start);
  while (!stack.empty()) {
    PairSet cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (cur.count({a, b})) continue;
        PairSet next = cur;
        next.insert({a, b});
        next = close_pairs(std::move(next), n, which);
        if (next.size() <= limit && seen.insert(next).second) stack.push_back(next);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// All set graphs with at most max_vertices vertices and max_edges edges
/// (edge lists up to reordering), each checked for every closure against
/// every closed relation graph with at most max_target_edges edges through
/// which the graph maps.
inline ClosureEnumeration closure_enumeration(std::size_t max_vertices, std::size_t max_edges,
                                              std::size_t max_target_edges) {
  ClosureEnumeration out;
  const Closure kinds[] = {Closure::Refl, Closure::Sym, Closure::Trans, Closure::ReflTrans, Closure::ReflSymTrans};
  UniversalCheckOptions opts;
  opts.max_target_edges = max_target_edges;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    CarrierObject e = CarrierObject::set(detail::numbered("v", n));
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) all.emplace_back(a, b);
    std::vector<std::size_t> edges;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      ++out.graphs;
      std::vector<std::size_t> s, t;
      detail::PairSet image;
      for (auto k : edges) {
        s.push_back(all[k].first);
        t.push_back(all[k].second);
        image.insert(all[k]);
      }
      CarrierObject r = CarrierObject::set(detail::numbered("r", edges.size()));
      InternalGraph g(CarrierMap::set_map(r, e, s), CarrierMap::set_map(r, e, t));
      for (Closure which : kinds)
        for (const auto& target : detail::closed_supersets(image, n, which, max_target_edges)) {
          InternalGraph sg = detail::relation_graph(e, target);
          std::vector<std::size_t> f;
          for (auto k : edges)
            f.push_back(static_cast<std::size_t>(std::distance(target.begin(), target.find(all[k]))));
          ++out.checks;
          auto res = closure_universal_check(g, sg, relation_structure(sg), CarrierMap::set_map(r, sg.edges(), f), which, opts);
          if (!res.holds()) {
            if (out.failures++ == 0)
              out.first_failure = std::string(closure_name(which)) + " on " + std::to_string(n) + " vertices, " +
                                  std::to_string(edges.size()) + " edges";
          }
        }
      if (edges.size() == max_edges) return;
      for (std::size_t k = from; k < all.size(); ++k) {
        edges.push_back(k);
        rec(k);
        edges.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage-wise pullbacks of chain-filtered graphs

struct ColimitInstanceResult {
  std::size_t index = 0;
  Kind kind = Kind::Set;
  std::size_t pullback_size = 0;
  bool stages_embed = false;   // each R_i x_{E_i} R_i injects into R x_E R
  bool colimit_iso = false;    // colim_i (R_i x_{E_i} R_i) -> R x_E R is an isomorphism
  bool filtration_valid = false;

  bool passed() const { return stages_embed && colimit_iso && filtration_valid; }
};

namespace detail {

/// Stage of each generator, with the top stage forced to contain everything.
inline std::vector<std::size_t> random_stages(std::mt19937_64& rng, std::size_t n, std::size_t stages) {
  std::uniform_int_distribution<std::size_t> pick(0, stages - 1);
  std::vector<std::size_t> out(n);
  for (auto& s : out) s = pick(rng);
  return out;
}

inline std::vector<std::vector<std::size_t>> stage_members(const std::vector<std::size_t>& stage_of, std::size_t stages) {
  std::vector<std::vector<std::size_t>> out(stages);
  for (std::size_t i = 0; i < stages; ++i)
    for (std::size_t x = 0; x < stage_of.size(); ++x)
      if (stage_of[x] <= i) out[i].push_back(x);
  return out;
}

}  // namespace detail

/// A graph R over E with 4-stage chains E_0 ⊆ ... ⊆ E_3 = E and R_0 ⊆ ... ⊆ R_3 = R,
/// src and tgt sending R_i into E_i; composable pairs are computed stage-wise.
inline ColimitInstanceResult colimit_instance(std::mt19937_64& rng, Kind kind, std::size_t index) {
  const std::size_t stages = 4;
  std::uniform_int_distribution<std::size_t> size(1, 5);
  std::size_t n = size(rng);
  std::size_t m = size(rng);
  auto estage = detail::random_stages(rng, n, stages);
  auto rstage = detail::random_stages(rng, m, stages);
  CarrierObject e = kind == Kind::Set ? CarrierObject::set(detail::numbered("v", n)) : CarrierObject::vect(detail::numbered("v", n));
  CarrierObject r = kind == Kind::Set ? CarrierObject::set(detail::numbered("r", m)) : CarrierObject::vect(detail::numbered("r", m));
  std::vector<Element> s, t;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::size_t> allowed;
    for (std::size_t x = 0; x < n; ++x)
      if (estage[x] <= rstage[k]) allowed.push_back(x);
    if (allowed.empty()) {
      // Pull the first vertex down so the edge has somewhere to land.
      estage[0] = std::min(estage[0], rstage[k]);
      allowed.push_back(0);
    }
    std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
    if (kind == Kind::Set) {
      s.push_back(Element::point(allowed[pick(rng)]));
      t.push_back(Element::point(allowed[pick(rng)]));
    } else {
      Vector vs = zero_vector(n), vt = zero_vector(n);
      for (auto x : allowed) {
        vs[x] = detail::small_rational(rng);
        vt[x] = detail::small_rational(rng);
      }
      s.push_back(Element::vector(vs));
      t.push_back(Element::vector(vt));
    }
  }
  InternalGraph g(CarrierMap::from_images(r, e, s), CarrierMap::from_images(r, e, t));
  Filtration fe = filtration_from_stages(DirectedPoset::nat_prefix(stages), e, detail::stage_members(estage, stages));
  Filtration fr = filtration_from_stages(DirectedPoset::nat_prefix(stages), r, detail::stage_members(rstage, stages));

  Pullback whole = pullback(g.tgt(), g.src());
  ColimitInstanceResult out;
  out.index = index;
  out.kind = kind;
  out.pullback_size = whole.object.size();
  out.stages_embed = true;
  std::vector<Pullback> parts;
  std::vector<CarrierMap> into_whole;
  for (std::size_t i = 0; i < stages; ++i) {
    CarrierMap si = *factor_through(compose(g.src(), fr.inj(i)), fe.inj(i));
    CarrierMap ti = *factor_through(compose(g.tgt(), fr.inj(i)), fe.inj(i));
    parts.push_back(pullback(ti, si));
    auto lift = pullback_lift(whole, compose(fr.inj(i), parts.back().pi1), compose(fr.inj(i), parts.back().pi2));
    if (!lift || !is_injective(*lift)) {
      out.stages_embed = false;
      return out;
    }
    into_whole.push_back(*lift);
  }
  std::vector<CarrierObject> objs;
  std::vector<CarrierMap> links;
  for (std::size_t i = 0; i < stages; ++i) {
    objs.push_back(parts[i].object);
    if (i + 1 < stages) {
      auto link = factor_through(into_whole[i], into_whole[i + 1]);
      if (!link) return out;
      links.push_back(*link);
    }
  }
  ChainColimit c = chain_colimit(objs, links);
  out.colimit_iso = is_isomorphism(colimit_map(c, into_whole));
  try {
    Filtration fp(DirectedPoset::nat_prefix(stages), whole.object, into_whole);
    out.filtration_valid = true;
  } catch (const Error&) {
    out.filtration_valid = false;
  }
  return out;
}

/// Even indices are sets, odd indices vector spaces.
inline std::vector<ColimitInstanceResult> run_colimit_suite(std::uint64_t seed, std::size_t count,
                                                            unsigned threads = default_threads()) {
  return run_indexed<ColimitInstanceResult>(count, threads, [&](std::size_t i) {
    auto rng = instance_rng(seed, i);
    return colimit_instance(rng, i % 2 == 0 ? Kind::Set : Kind::Vect, i);
  });
}

}  // namespace intrew
