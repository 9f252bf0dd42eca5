#pragma once

// Internal graphs over a carrier object E and their closures. The transitive
// closures are countable coproducts and are never materialized: elements of
// R^sym are handled as symbolic paths, and only finite truncations are built
// when a test needs an actual object.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"

namespace intrew {

class InternalGraph {
 public:
  InternalGraph() = default;
  InternalGraph(CarrierMap src, CarrierMap tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
    if (!(src_.dom() == tgt_.dom()) || !(src_.cod() == tgt_.cod()))
      throw Error(Errc::InvalidMap, "source and target of a graph must be parallel");
  }

  Kind kind() const noexcept { return src_.kind(); }
  /// E
  const CarrierObject& base() const noexcept { return src_.cod(); }
  /// R
  const CarrierObject& edges() const noexcept { return src_.dom(); }
  const CarrierMap& src() const noexcept { return src_; }
  const CarrierMap& tgt() const noexcept { return tgt_; }

  bool operator==(const InternalGraph&) const = default;

 private:
  CarrierMap src_;
  CarrierMap tgt_;
};

inline InternalGraph identity_graph(const CarrierObject& e) { return InternalGraph(identity(e), identity(e)); }

inline InternalGraph empty_graph(const CarrierObject& e) { return InternalGraph(initial_map(e), initial_map(e)); }

inline void require_same_base(const InternalGraph& r, const InternalGraph& s) {
  if (!(r.base() == s.base())) throw Error(Errc::BaseMismatch, "graphs live over different objects");
}

struct GraphProduct {
  InternalGraph graph;
  CarrierMap pi1;
  CarrierMap pi2;
};

/// RS: composable pairs, the pullback of t_R and s_S.
inline GraphProduct graph_product(const InternalGraph& r, const InternalGraph& s) {
  require_same_base(r, s);
  Pullback pb = pullback(r.tgt(), s.src());
  InternalGraph g(compose(r.src(), pb.pi1), compose(s.tgt(), pb.pi2));
  return {std::move(g), std::move(pb.pi1), std::move(pb.pi2)};
}

struct GraphSum {
  InternalGraph graph;
  CarrierMap inj1;
  CarrierMap inj2;
};

inline GraphSum graph_sum(const InternalGraph& r, const InternalGraph& s) {
  require_same_base(r, s);
  Coproduct cp = coproduct(r.edges(), s.edges());
  InternalGraph g(copair(cp, {r.src(), s.src()}), copair(cp, {r.tgt(), s.tgt()}));
  return {std::move(g), cp.injections[0], cp.injections[1]};
}

inline InternalGraph opposite(const InternalGraph& r) { return InternalGraph(r.tgt(), r.src()); }

/// R + E; inj2 is the unit u : E -> R + E.
inline GraphSum reflexive_closure(const InternalGraph& r) { return graph_sum(r, identity_graph(r.base())); }

/// R + R°.
inline GraphSum symmetric_closure(const InternalGraph& r) { return graph_sum(r, opposite(r)); }

inline bool is_graph_morphism(const InternalGraph& r, const InternalGraph& s, const CarrierMap& f) {
  if (!(f.dom() == r.edges()) || !(f.cod() == s.edges()) || !(r.base() == s.base())) return false;
  return equal_maps(compose(s.src(), f), r.src()) && equal_maps(compose(s.tgt(), f), r.tgt());
}

/// E/R, the coequalizer of source and target.
inline Coequalizer quotient_by_graph(const InternalGraph& r) { return coequalizer(r.src(), r.tgt()); }

struct TruncatedClosure {
  InternalGraph graph;
  CarrierMap embedding;  // R -> closure, as length-one forward paths
};

/// The finite part of R* (or R^sym when symmetric) made of paths of length at
/// most max_length, built from sums and iterated products of graphs.
inline TruncatedClosure truncated_closure(const InternalGraph& r, std::size_t max_length, bool symmetric) {
  InternalGraph t = r;
  CarrierMap r_into_t = identity(r.edges());
  if (symmetric) {
    GraphSum sc = symmetric_closure(r);
    t = sc.graph;
    r_into_t = sc.inj1;
  }
  std::vector<InternalGraph> powers;
  InternalGraph power = t;
  for (std::size_t n = 1; n <= max_length; ++n) {
    if (n > 1) power = graph_product(power, t).graph;
    powers.push_back(power);
  }
  std::vector<CarrierObject> parts{r.base()};
  std::vector<std::string> tags{"e"};
  std::vector<CarrierMap> srcs{identity(r.base())};
  std::vector<CarrierMap> tgts{identity(r.base())};
  for (std::size_t n = 0; n < powers.size(); ++n) {
    parts.push_back(powers[n].edges());
    tags.push_back("p" + std::to_string(n + 1));
    srcs.push_back(powers[n].src());
    tgts.push_back(powers[n].tgt());
  }
  Coproduct cp = coproduct_of(parts, tags);
  InternalGraph g(copair(cp, srcs), copair(cp, tgts));
  CarrierMap emb = max_length >= 1 ? compose(cp.injections[1], r_into_t)
                                   : CarrierMap::from_images(r.edges(), cp.object, {});
  if (max_length == 0 && r.edges().size() > 0)
    throw Error(Errc::BoundExceeded, "a closure truncated at length 0 cannot receive R");
  return {std::move(g), std::move(emb)};
}

// ---------------------------------------------------------------------------
// Symbolic paths in R^sym

enum class Direction { Forward, Backward };

/// One step of a set-valued path: an edge of R, possibly traversed backwards.
struct PathStep {
  std::size_t edge = 0;
  Direction direction = Direction::Forward;
  bool operator==(const PathStep&) const = default;
};

/// One component of a vector-valued path: an element of R ⊕ R° ⊕ E. The E part
/// is an identity step, used to pad paths of different lengths before adding.
struct LinearStep {
  Vector forward;
  Vector backward;
  Vector identity;
  bool operator==(const LinearStep&) const = default;
};

/// An element of R^sym: its source (anchor) followed by a tuple of composable
/// steps. The empty tuple is the reflexive unit at the anchor.
struct Path {
  Element anchor = Element::point(0);
  std::vector<PathStep> steps;           // sets
  std::vector<LinearStep> linear_steps;  // vector spaces
};

inline Element step_source(const InternalGraph& g, const PathStep& s) {
  return (s.direction == Direction::Forward ? g.src() : g.tgt()).image(s.edge);
}

inline Element step_target(const InternalGraph& g, const PathStep& s) {
  return (s.direction == Direction::Forward ? g.tgt() : g.src()).image(s.edge);
}

inline Element step_source(const InternalGraph& g, const LinearStep& s) {
  return Element::vector(g.src().matrix().apply(s.forward) + g.tgt().matrix().apply(s.backward) + s.identity);
}

inline Element step_target(const InternalGraph& g, const LinearStep& s) {
  return Element::vector(g.tgt().matrix().apply(s.forward) + g.src().matrix().apply(s.backward) + s.identity);
}

inline bool is_identity_step(const LinearStep& s) { return is_zero(s.forward) && is_zero(s.backward); }

inline const Element& source(const Path& p) { return p.anchor; }

inline Element target(const InternalGraph& g, const Path& p) {
  if (g.kind() == Kind::Set) return p.steps.empty() ? p.anchor : step_target(g, p.steps.back());
  return p.linear_steps.empty() ? p.anchor : step_target(g, p.linear_steps.back());
}

/// Number of genuine rewriting steps (identity components are not counted).
inline std::size_t path_length(const Path& p) {
  if (!p.steps.empty()) return p.steps.size();
  return static_cast<std::size_t>(
      std::count_if(p.linear_steps.begin(), p.linear_steps.end(), [](const LinearStep& s) { return !is_identity_step(s); }));
}

/// Composability of consecutive steps and consistency of the anchor.
inline bool is_valid_path(const InternalGraph& g, const Path& p) {
  if (!g.base().contains(p.anchor)) return false;
  if (g.kind() == Kind::Set) {
    Element at = p.anchor;
    for (const auto& s : p.steps) {
      if (s.edge >= g.edges().size() || !(step_source(g, s) == at)) return false;
      at = step_target(g, s);
    }
    return true;
  }
  Element at = p.anchor;
  for (const auto& s : p.linear_steps) {
    if (s.forward.size() != g.edges().size() || s.backward.size() != g.edges().size() ||
        s.identity.size() != g.base().size())
      return false;
    if (!(step_source(g, s) == at)) return false;
    at = step_target(g, s);
  }
  return true;
}

inline Path unit_path(const InternalGraph& g, const Element& x) {
  if (!g.base().contains(x)) throw Error(Errc::DomainMismatch, "unit_path: element outside the base object");
  Path p;
  p.anchor = x;
  return p;
}

/// The length-one path along an edge (sets) or an edge vector (vector spaces).
inline Path embed_step(const InternalGraph& g, const Element& r, Direction dir) {
  if (!g.edges().contains(r)) throw Error(Errc::DomainMismatch, "embed_step: element outside R");
  Path p;
  if (g.kind() == Kind::Set) {
    PathStep s{r.index(), dir};
    p.anchor = step_source(g, s);
    p.steps.push_back(s);
    return p;
  }
  LinearStep s{zero_vector(g.edges().size()), zero_vector(g.edges().size()), zero_vector(g.base().size())};
  (dir == Direction::Forward ? s.forward : s.backward) = r.coords();
  p.anchor = step_source(g, s);
  p.linear_steps.push_back(std::move(s));
  return p;
}

/// Reads an element of R + E (as laid out by reflexive_closure) as a path:
/// the R part becomes a forward step, the E part a reflexive unit.
inline Path embed_reflexive(const InternalGraph& g, const Element& y) {
  const std::size_t nr = g.edges().size();
  if (g.kind() == Kind::Set) {
    if (y.index() < nr) return embed_step(g, Element::point(y.index()), Direction::Forward);
    return unit_path(g, Element::point(y.index() - nr));
  }
  const Vector& v = y.coords();
  Vector r_part(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nr));
  Vector e_part(v.begin() + static_cast<std::ptrdiff_t>(nr), v.end());
  if (is_zero(r_part)) return unit_path(g, Element::vector(std::move(e_part)));
  LinearStep s{std::move(r_part), zero_vector(nr), std::move(e_part)};
  Path p;
  p.anchor = step_source(g, s);
  p.linear_steps.push_back(std::move(s));
  return p;
}

inline Path compose_paths(const InternalGraph& g, const Path& p, const Path& q) {
  if (!(target(g, p) == source(q))) throw Error(Errc::NotComposable, "target of the first path differs from source of the second");
  Path out = p;
  out.steps.insert(out.steps.end(), q.steps.begin(), q.steps.end());
  out.linear_steps.insert(out.linear_steps.end(), q.linear_steps.begin(), q.linear_steps.end());
  return out;
}

inline Path invert_path(const InternalGraph& g, const Path& p) {
  Path out;
  out.anchor = target(g, p);
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it)
    out.steps.push_back({it->edge, it->direction == Direction::Forward ? Direction::Backward : Direction::Forward});
  for (auto it = p.linear_steps.rbegin(); it != p.linear_steps.rend(); ++it)
    out.linear_steps.push_back({it->backward, it->forward, it->identity});
  return out;
}

/// Drops pure identity components, which the unit laws of R^sym identify away.
inline Path canonical(const Path& p) {
  Path out = p;
  std::erase_if(out.linear_steps, [](const LinearStep& s) { return is_identity_step(s); });
  return out;
}

inline bool paths_equal(const Path& p, const Path& q) {
  Path a = canonical(p);
  Path b = canonical(q);
  return a.anchor == b.anchor && a.steps == b.steps && a.linear_steps == b.linear_steps;
}

inline Path pad_path(const InternalGraph& g, const Path& p, std::size_t length) {
  Path out = p;
  while (out.linear_steps.size() < length) {
    Element t = target(g, out);
    out.linear_steps.push_back({zero_vector(g.edges().size()), zero_vector(g.edges().size()), t.coords()});
  }
  return out;
}

inline Path zero_path(const InternalGraph& g) { return unit_path(g, g.base().zero()); }

/// Componentwise sum in the pullback, after padding to a common length.
inline Path add_paths(const InternalGraph& g, const Path& p, const Path& q) {
  if (g.kind() != Kind::Vect) throw Error(Errc::KindMismatch, "paths in a set cannot be added");
  std::size_t n = std::max(p.linear_steps.size(), q.linear_steps.size());
  Path a = pad_path(g, p, n);
  Path b = pad_path(g, q, n);
  Path out;
  out.anchor = Element::vector(a.anchor.coords() + b.anchor.coords());
  for (std::size_t k = 0; k < n; ++k)
    out.linear_steps.push_back({a.linear_steps[k].forward + b.linear_steps[k].forward,
                                a.linear_steps[k].backward + b.linear_steps[k].backward,
                                a.linear_steps[k].identity + b.linear_steps[k].identity});
  return out;
}

inline Path scale_path(const Rational& s, const Path& p) {
  Path out;
  out.anchor = Element::vector(s * p.anchor.coords());
  for (const auto& st : p.linear_steps) out.linear_steps.push_back({s * st.forward, s * st.backward, s * st.identity});
  return out;
}

/// Evaluates a path-valued map given on generators: a lookup for sets, the
/// linear extension for vector spaces.
inline Path apply_on_generators(const InternalGraph& g, const std::vector<Path>& on_generators, const Element& x) {
  if (x.kind() == Kind::Set) return on_generators.at(x.index());
  Path acc = zero_path(g);
  const Vector& v = x.coords();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) acc = add_paths(g, acc, scale_path(v[i], on_generators.at(i)));
  return acc;
}

inline std::string format_path(const InternalGraph& g, const Path& p) {
  std::ostringstream out;
  out << format_element(g.base(), p.anchor);
  if (g.kind() == Kind::Set) {
    for (const auto& s : p.steps)
      out << (s.direction == Direction::Forward ? " -[" : " <[") << g.edges().label(s.edge)
          << (s.direction == Direction::Forward ? "]-> " : "]- ") << format_element(g.base(), step_target(g, s));
    return out.str();
  }
  for (const auto& s : canonical(p).linear_steps) {
    out << " =[";
    bool any = false;
    if (!is_zero(s.forward)) {
      out << format_element(g.edges(), Element::vector(s.forward));
      any = true;
    }
    if (!is_zero(s.backward)) {
      out << (any ? " ; " : "") << "(" << format_element(g.edges(), Element::vector(s.backward)) << ")°";
    }
    out << "]=> " << format_element(g.base(), step_target(g, s));
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Universal property of the closures (sets only)

enum class Closure { Refl, Sym, Trans, ReflTrans, ReflSymTrans };

constexpr std::string_view closure_name(Closure c) {
  switch (c) {
    case Closure::Refl: return "refl";
    case Closure::Sym: return "sym";
    case Closure::Trans: return "trans";
    case Closure::ReflTrans: return "refl-trans";
    case Closure::ReflSymTrans: return "refl-sym-trans";
  }
  return "?";
}

/// Structure maps carried by a set graph S: u_S, s_S and m_S.
struct GraphStructure {
  std::optional<std::vector<std::size_t>> unit;                           // vertex -> loop
  std::optional<std::vector<std::size_t>> reverse;                        // edge -> reversed edge
  std::optional<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> compose;  // composable pair -> edge
};

/// For a relation graph (at most one edge per ordered pair) the structure maps
/// are forced; those that exist are filled in.
inline GraphStructure relation_structure(const InternalGraph& s) {
  const auto& src = s.src().table();
  const auto& tgt = s.tgt().table();
  auto find_edge = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    for (std::size_t e = 0; e < src.size(); ++e)
      if (src[e] == a && tgt[e] == b) return e;
    return std::nullopt;
  };
  GraphStructure st;
  std::vector<std::size_t> unit;
  for (std::size_t x = 0; x < s.base().size(); ++x) {
    auto e = find_edge(x, x);
    if (!e) break;
    unit.push_back(*e);
  }
  if (unit.size() == s.base().size()) st.unit = unit;
  std::vector<std::size_t> rev;
  for (std::size_t e = 0; e < src.size(); ++e) {
    auto r = find_edge(tgt[e], src[e]);
    if (!r) break;
    rev.push_back(*r);
  }
  if (rev.size() == src.size()) st.reverse = rev;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  bool transitive = true;
  for (std::size_t e1 = 0; e1 < src.size() && transitive; ++e1)
    for (std::size_t e2 = 0; e2 < src.size(); ++e2) {
      if (tgt[e1] != src[e2]) continue;
      auto c = find_edge(src[e1], tgt[e2]);
      if (!c) {
        transitive = false;
        break;
      }
      comp[{e1, e2}] = *c;
    }
  if (transitive) st.compose = comp;
  return st;
}

struct UniversalCheckOptions {
  std::size_t max_target_edges = 5;
  std::size_t max_path_length = 3;  // truncation depth for the transitive closures
};

struct UniversalCheckResult {
  bool construction_valid = false;   // the fold of f through S's structure preserves everything
  std::size_t solutions = 0;         // structure-preserving extensions found, capped at 2
  bool matches_construction = false;
  bool holds() const { return construction_valid && solutions == 1 && matches_construction; }
};

namespace detail {

inline std::vector<std::size_t> path_key(const Path& p) {
  std::vector<std::size_t> k{p.anchor.index()};
  for (const auto& s : p.steps) k.push_back(2 * s.edge + (s.direction == Direction::Backward ? 1 : 0));
  return k;
}

}  // namespace detail

/// Checks that f : R -> S extends uniquely to a structure-preserving map out of
/// the named closure of R. The extension is built by folding f through S's
/// structure maps; uniqueness is established by exhaustive backtracking over
/// all endpoint-respecting assignments on closure cells (paths up to the
/// configured length for the transitive closures).
inline UniversalCheckResult closure_universal_check(const InternalGraph& r, const InternalGraph& s,
                                                    const GraphStructure& structure, const CarrierMap& f,
                                                    Closure which, const UniversalCheckOptions& options = {}) {
  if (r.kind() != Kind::Set || s.kind() != Kind::Set)
    throw Error(Errc::KindMismatch, "closure_universal_check is defined on set graphs only");
  require_same_base(r, s);
  if (s.edges().size() > options.max_target_edges)
    throw Error(Errc::BoundExceeded, "target graph has " + std::to_string(s.edges().size()) + " edges, bound is " +
                                         std::to_string(options.max_target_edges));
  if (!is_graph_morphism(r, s, f)) throw Error(Errc::NotGraphMorphism, "f does not commute with source and target");

  const bool refl = which == Closure::Refl || which == Closure::ReflTrans || which == Closure::ReflSymTrans;
  const bool sym = which == Closure::Sym || which == Closure::ReflSymTrans;
  const bool trans = which == Closure::Trans || which == Closure::ReflTrans || which == Closure::ReflSymTrans;

  const auto& ssrc = s.src().table();
  const auto& stgt = s.tgt().table();
  if (refl) {
    if (!structure.unit) throw Error(Errc::StructureMissing, "target graph is not reflexive");
    const auto& u = *structure.unit;
    if (u.size() != s.base().size()) throw Error(Errc::StructureMissing, "unit map has the wrong size");
    for (std::size_t x = 0; x < u.size(); ++x)
      if (u[x] >= ssrc.size() || ssrc[u[x]] != x || stgt[u[x]] != x)
        throw Error(Errc::StructureMissing, "unit is not a graph map at " + s.base().label(x), s.base().label(x));
  }
  if (sym) {
    if (!structure.reverse) throw Error(Errc::StructureMissing, "target graph is not symmetric");
    const auto& rv = *structure.reverse;
    if (rv.size() != ssrc.size()) throw Error(Errc::StructureMissing, "reverse map has the wrong size");
    for (std::size_t e = 0; e < rv.size(); ++e)
      if (rv[e] >= ssrc.size() || ssrc[rv[e]] != stgt[e] || stgt[rv[e]] != ssrc[e])
        throw Error(Errc::StructureMissing, "reverse is not a graph map at " + s.edges().label(e), s.edges().label(e));
  }
  if (trans) {
    if (!structure.compose) throw Error(Errc::StructureMissing, "target graph is not transitive");
    for (std::size_t e1 = 0; e1 < ssrc.size(); ++e1)
      for (std::size_t e2 = 0; e2 < ssrc.size(); ++e2) {
        if (stgt[e1] != ssrc[e2]) continue;
        auto it = structure.compose->find({e1, e2});
        if (it == structure.compose->end() || ssrc[it->second] != ssrc[e1] || stgt[it->second] != stgt[e2])
          throw Error(Errc::StructureMissing, "composition undefined or ill-typed", s.edges().label(e1));
      }
  }

  // Closure cells, ordered by length.
  std::vector<Path> cells;
  if (refl)
    for (std::size_t x = 0; x < r.base().size(); ++x) cells.push_back(unit_path(r, Element::point(x)));
  std::vector<Path> frontier;
  for (std::size_t e = 0; e < r.edges().size(); ++e) {
    frontier.push_back(embed_step(r, Element::point(e), Direction::Forward));
    if (sym) frontier.push_back(embed_step(r, Element::point(e), Direction::Backward));
  }
  std::size_t max_len = trans ? options.max_path_length : 1;
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    cells.insert(cells.end(), frontier.begin(), frontier.end());
    if (len == max_len) break;
    std::vector<Path> next;
    for (const auto& p : frontier) {
      Element t = target(r, p);
      for (std::size_t e = 0; e < r.edges().size(); ++e) {
        for (Direction d : {Direction::Forward, Direction::Backward}) {
          if (d == Direction::Backward && !sym) continue;
          PathStep st{e, d};
          if (!(step_source(r, st) == t)) continue;
          Path q = p;
          q.steps.push_back(st);
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[detail::path_key(cells[i])] = i;

  auto cell_of = [&](const Path& p) -> std::optional<std::size_t> {
    auto it = index.find(detail::path_key(p));
    if (it == index.end()) return std::nullopt;
    return it->second;
  };

  // Constraints, each attached to the latest cell (in order) it mentions.
  struct Constraint {
    enum Type { Restrict, Unit, Inverse, Split } type;
    std::size_t a = 0, b = 0, c = 0;  // cell ids; meaning depends on type
    std::size_t value = 0;
  };
  std::vector<std::vector<Constraint>> at(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Path& p = cells[i];
    if (p.steps.size() == 1 && p.steps[0].direction == Direction::Forward)
      at[i].push_back({Constraint::Restrict, i, 0, 0, f.table()[p.steps[0].edge]});
    if (p.steps.empty()) at[i].push_back({Constraint::Unit, i, 0, 0, (*structure.unit)[p.anchor.index()]});
    if (sym) {
      if (auto j = cell_of(invert_path(r, p)); j && *j <= i) at[i].push_back({Constraint::Inverse, i, *j, 0, 0});
    }
    if (trans) {
      // c = prefix · suffix, including unit factors when reflexive.
      for (std::size_t k = 0; k <= p.steps.size(); ++k) {
        if ((k == 0 || k == p.steps.size()) && !refl) continue;
        if (p.steps.size() < 2 && !(refl && !p.steps.empty())) continue;
        Path pre;
        pre.anchor = p.anchor;
        pre.steps.assign(p.steps.begin(), p.steps.begin() + static_cast<std::ptrdiff_t>(k));
        Path suf;
        suf.anchor = target(r, pre);
        suf.steps.assign(p.steps.begin() + static_cast<std::ptrdiff_t>(k), p.steps.end());
        auto a = cell_of(pre);
        auto b = cell_of(suf);
        if (a && b) at[i].push_back({Constraint::Split, i, *a, *b, 0});
      }
    }
  }

  auto satisfied = [&](const std::vector<std::size_t>& g, const Constraint& c) {
    switch (c.type) {
      case Constraint::Restrict:
      case Constraint::Unit:
        return g[c.a] == c.value;
      case Constraint::Inverse:
        return g[c.b] == (*structure.reverse)[g[c.a]] && g[c.a] == (*structure.reverse)[g[c.b]];
      case Constraint::Split: {
        auto it = structure.compose->find({g[c.b], g[c.c]});
        return it != structure.compose->end() && g[c.a] == it->second;
      }
    }
    return false;
  };

  // Explicit extension: fold through S's structure.
  auto fold_step = [&](const PathStep& st) {
    std::size_t e = f.table()[st.edge];
    return st.direction == Direction::Forward ? e : (*structure.reverse)[e];
  };
  std::vector<std::size_t> built(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Path& p = cells[i];
    if (p.steps.empty()) {
      built[i] = (*structure.unit)[p.anchor.index()];
      continue;
    }
    std::size_t acc = fold_step(p.steps[0]);
    for (std::size_t k = 1; k < p.steps.size(); ++k) acc = structure.compose->at({acc, fold_step(p.steps[k])});
    built[i] = acc;
  }

  UniversalCheckResult result;
  result.construction_valid = true;
  for (std::size_t i = 0; i < cells.size() && result.construction_valid; ++i) {
    const Path& p = cells[i];
    std::size_t e = built[i];
    if (ssrc[e] != p.anchor.index() || stgt[e] != target(r, p).index()) result.construction_valid = false;
    for (const auto& c : at[i])
      if (!satisfied(built, c)) result.construction_valid = false;
  }

  std::vector<std::vector<std::size_t>> candidates(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::size_t a = cells[i].anchor.index();
    std::size_t b = target(r, cells[i]).index();
    for (std::size_t e = 0; e < ssrc.size(); ++e)
      if (ssrc[e] == a && stgt[e] == b) candidates[i].push_back(e);
  }
  std::vector<std::size_t> g(cells.size(), 0);
  std::vector<std::size_t> found;
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (result.solutions >= 2) return;
    if (i == cells.size()) {
      if (result.solutions == 0) found = g;
      ++result.solutions;
      return;
    }
    for (auto e : candidates[i]) {
      g[i] = e;
      bool ok = true;
      for (const auto& c : at[i])
        if (!satisfied(g, c)) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1);
      if (result.solutions >= 2) return;
    }
  };
  search(search, 0);
  result.matches_construction = result.solutions >= 1 && found == built;
  return result;
}

}  // namespace intrew
