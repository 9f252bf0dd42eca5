#pragma once

// Global strategies (H, H^τ) on R^sym, induced from a local strategy by
// induction over the filtration, and the split coequalizer they give rise to
// when confluent.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"
#include "intrew/filtration.hpp"
#include "intrew/graph.hpp"
#include "intrew/report.hpp"
#include "intrew/termination.hpp"

namespace intrew {

struct GlobalStrategy {
  LocalStrategy base;
  CarrierMap Htau;          // E -> min(E)
  std::vector<Path> paths;  // H on the generators of E
  std::vector<std::vector<Path>> stage_paths;  // H_i on the generators of E_i
  std::vector<CarrierMap> stage_Htau;          // H^τ_i : E_i -> min(E)

  const InternalGraph& graph() const { return base.graph; }
  const Filtration& filtration() const { return base.filtration; }

  /// H(x), extended linearly for vector spaces.
  Path H(const Element& x) const { return apply_on_generators(graph(), paths, x); }
};

namespace detail {

/// Maps out of E_{<i} defined stage by stage, read off through the origin of
/// each generator of the colimit.
inline std::vector<Path> below_paths(const StageColimit& below, const std::vector<std::vector<Path>>& stage_paths) {
  std::vector<Path> out;
  for (auto [k, x] : below.origin) out.push_back(stage_paths[k][x]);
  return out;
}

inline CarrierMap below_Htau(const StageColimit& below, const std::vector<CarrierMap>& stage_Htau,
                             const CarrierObject& min) {
  std::vector<Element> images;
  for (auto [k, x] : below.origin) images.push_back(stage_Htau[k].image(x));
  return CarrierMap::from_images(below.object, min, images);
}

}  // namespace detail

/// Checks on an induced strategy: GS1-GS3, both recursion equations, and the
/// bound on path lengths by stage depth.
inline Report verify_global_strategy(const GlobalStrategy& gs) {
  Report rep;
  const InternalGraph& g = gs.graph();
  const Filtration& f = gs.filtration();
  const CarrierObject& e = f.total();
  const StageColimit& mn = f.min();
  auto label = [&](std::size_t x) { return format_element(e, e.generator(x)); };

  std::string w1;
  std::string w2;
  std::string wh;
  std::string wl;
  CarrierMap lands = compose(mn.inj, gs.Htau);
  CarrierMap step_t = gs.base.step_target();
  for (std::size_t x = 0; x < e.size(); ++x) {
    const Path& p = gs.paths[x];
    if (w1.empty() && !(source(p) == e.generator(x))) w1 = label(x);
    if (w2.empty() && !(target(g, p) == lands.image(x))) w2 = label(x);
    if (wh.empty()) {
      Path rec = compose_paths(g, embed_reflexive(g, gs.base.h.image(x)), gs.H(step_t.image(x)));
      if (!paths_equal(rec, p)) wh = label(x);
    }
    if (wl.empty()) {
      std::size_t depth = f.index().depth(f.stage_of(e.generator(x)));
      if (path_length(p) > depth) wl = label(x);
    }
  }
  rep.add("GS1", w1.empty(), w1);
  rep.add("GS2", w2.empty(), w2);
  {
    auto d = first_difference(compose(gs.Htau, mn.inj), identity(mn.object));
    rep.add("GS3", !d, d ? format_element(e, mn.inj.image(*d)) : std::string{});
  }
  rep.add("recursion-H", wh.empty(), wh);
  {
    auto d = first_difference(gs.Htau, compose(gs.Htau, step_t));
    rep.add("recursion-Htau", !d, d ? label(*d) : std::string{});
  }
  rep.add("length-bound", wl.empty(), wl);
  return rep;
}

/// Minimal stages get unit paths and H^τ = the leg into min(E); above them
/// H_i = m ∘ <h_i, H_{<i} ∘ h^τ_i> and H^τ_i = H^τ_{<i} ∘ h^τ_i.
inline GlobalStrategy induce_global_strategy(const LocalStrategy& ls) {
  Report lr = verify_local_strategy(ls);
  if (!lr.passed()) {
    const Check* c = lr.first_failure();
    throw Error(Errc::VerificationFailed, "local strategy fails " + c->name, c->witness);
  }
  const InternalGraph& g = ls.graph;
  const Filtration& f = ls.filtration;
  const DirectedPoset& I = f.index();
  const StageColimit& mn = f.min();

  GlobalStrategy gs{ls, {}, {}, std::vector<std::vector<Path>>(I.size()), std::vector<CarrierMap>(I.size())};
  for (auto i : I.linear_extension()) {
    const CarrierMap& inj = f.inj(i);
    std::vector<Path>& Hi = gs.stage_paths[i];
    if (I.is_minimal(i)) {
      for (std::size_t x = 0; x < f.stage(i).size(); ++x) Hi.push_back(unit_path(g, inj.image(x)));
      gs.stage_Htau[i] = *mn.legs[i];
      continue;
    }
    const StageColimit& below = f.below(i);
    std::vector<Path> Hb = detail::below_paths(below, gs.stage_paths);
    CarrierMap Htau_b = detail::below_Htau(below, gs.stage_Htau, mn.object);
    for (std::size_t x = 0; x < f.stage(i).size(); ++x) {
      Path step = embed_reflexive(g, ls.h(inj.image(x)));
      Path rest = apply_on_generators(g, Hb, ls.htau[i].image(x));
      // H_{<i} is expressed in E_{<i}; its paths already live over E.
      Hi.push_back(compose_paths(g, step, rest));
    }
    gs.stage_Htau[i] = compose(Htau_b, ls.htau[i]);
  }

  // I is finite and directed: everything is read through the top stage.
  std::size_t top = I.top();
  const CarrierMap& inj_top = f.inj(top);
  const CarrierObject& e = f.total();
  std::vector<Element> nf;
  for (std::size_t x = 0; x < e.size(); ++x) {
    Element pre = *preimage(inj_top, e.generator(x));
    gs.paths.push_back(apply_on_generators(g, gs.stage_paths[top], pre));
    nf.push_back(gs.stage_Htau[top](pre));
  }
  gs.Htau = CarrierMap::from_images(e, mn.object, nf);

  Report gr = verify_global_strategy(gs);
  if (!gr.passed()) {
    const Check* c = gr.first_failure();
    throw Error(Errc::InternalConsistency, "induced strategy fails " + c->name, c->witness);
  }
  return gs;
}

struct ConfluenceResult {
  bool confluent = false;
  std::optional<std::size_t> edge;  // violating generator of R
  std::string witness;
};

/// H^τ ∘ src = H^τ ∘ tgt on the generators of R.
inline ConfluenceResult is_confluent_strategy(const GlobalStrategy& gs) {
  const InternalGraph& g = gs.graph();
  auto d = first_difference(compose(gs.Htau, g.src()), compose(gs.Htau, g.tgt()));
  if (!d) return {true, std::nullopt, {}};
  return {false, d, g.edges().label(*d)};
}

/// Brute-force counterpart for sets: H^τ agrees at both ends of every path
/// in R^sym of length at most max_length.
inline bool confluent_on_paths(const GlobalStrategy& gs, std::size_t max_length) {
  const InternalGraph& g = gs.graph();
  if (g.kind() != Kind::Set) throw Error(Errc::KindMismatch, "path enumeration is defined on sets only");
  const auto& nf = gs.Htau.table();
  for (std::size_t x = 0; x < g.base().size(); ++x) {
    std::vector<std::size_t> frontier{x};
    for (std::size_t len = 0; len < max_length; ++len) {
      std::vector<std::size_t> next;
      for (auto y : frontier)
        for (std::size_t r = 0; r < g.edges().size(); ++r) {
          if (g.src().table()[r] == y) next.push_back(g.tgt().table()[r]);
          if (g.tgt().table()[r] == y) next.push_back(g.src().table()[r]);
        }
      for (auto z : next)
        if (nf[z] != nf[x]) return false;
      frontier = std::move(next);
    }
  }
  return true;
}

/// Ends of min(E) <- E <- R^sym as a split coequalizer, with the comparison
/// to E/R.
struct SplitCertificate {
  bool retraction = false;       // e ∘ s = id
  bool section_square = false;   // s ∘ e = tgt ∘ t
  bool path_section = false;     // src ∘ t = id
  bool coequalizes = false;      // e ∘ src = e ∘ tgt
  bool isomorphism = false;      // min(E) -> E/R
  std::size_t quotient_size = 0;
  std::size_t min_size = 0;
  std::string witness;

  bool holds() const { return retraction && section_square && path_section && coequalizes && isomorphism; }
};

inline SplitCertificate split_coequalizer_certificate(const GlobalStrategy& gs) {
  auto conf = is_confluent_strategy(gs);
  if (!conf.confluent) throw Error(Errc::NotConfluent, "strategy is not confluent at " + conf.witness, conf.witness);
  const InternalGraph& g = gs.graph();
  const Filtration& f = gs.filtration();
  const CarrierObject& e = f.total();
  const StageColimit& mn = f.min();
  SplitCertificate cert;
  cert.retraction = equal_maps(compose(gs.Htau, mn.inj), identity(mn.object));
  CarrierMap lands = compose(mn.inj, gs.Htau);
  cert.section_square = true;
  cert.path_section = true;
  cert.coequalizes = true;
  auto record = [&](bool& flag, const std::string& w) {
    if (flag && cert.witness.empty()) cert.witness = w;
    flag = false;
  };
  for (std::size_t x = 0; x < e.size(); ++x) {
    const Path& p = gs.paths[x];
    std::string w = format_element(e, e.generator(x));
    if (!(target(g, p) == lands.image(x))) record(cert.section_square, w);
    if (!(source(p) == e.generator(x))) record(cert.path_section, w);
    if (!(gs.Htau(source(p)) == gs.Htau(target(g, p)))) record(cert.coequalizes, w);
    // Every prefix of a constructed path is itself an element of R^sym.
    Path prefix = unit_path(g, source(p));
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
      prefix.steps.push_back(p.steps[k]);
      if (!(gs.Htau(source(prefix)) == gs.Htau(target(g, prefix)))) record(cert.coequalizes, w);
    }
    for (std::size_t k = 0; k < p.linear_steps.size(); ++k) {
      prefix.linear_steps.push_back(p.linear_steps[k]);
      if (!(gs.Htau(source(prefix)) == gs.Htau(target(g, prefix)))) record(cert.coequalizes, w);
    }
  }
  Coequalizer q = quotient_by_graph(g);
  cert.isomorphism = is_isomorphism(compose(q.q, mn.inj));
  cert.quotient_size = q.object.size();
  cert.min_size = mn.object.size();
  return cert;
}

/// H^τ(x), read back in E.
inline Element normal_form(const GlobalStrategy& gs, const Element& x) {
  return gs.filtration().min().inj(gs.Htau(x));
}

}  // namespace intrew
