#pragma once

// Terminating directed posets and I-filtrations of carrier objects. Stages are
// sub-objects of the filtered object and links are inclusions.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intrew/carrier.hpp"
#include "intrew/relations.hpp"

namespace intrew {

class DirectedPoset {
 public:
  /// {0 < 1 < ... < n-1}
  static DirectedPoset nat_prefix(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(std::to_string(i));
      if (i > 0) covers.emplace_back(i - 1, i);
    }
    DirectedPoset p(std::move(labels), covers);
    p.nat_prefix_ = true;
    return p;
  }

  /// The order generated by covers (lo, hi). Throws InvalidFiltration unless
  /// the result is a non-empty directed partial order.
  static DirectedPoset finite(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
    return DirectedPoset(std::move(labels), covers);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool is_nat_prefix() const noexcept { return nat_prefix_; }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq_[i][j]; }

  std::vector<std::size_t> minimal() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (strictly_below(i).empty()) out.push_back(i);
    return out;
  }

  bool is_minimal(std::size_t i) const { return strictly_below(i).empty(); }

  std::vector<std::size_t> strictly_below(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (less(j, i)) out.push_back(j);
    return out;
  }

  /// j with j < i and nothing strictly between.
  std::vector<std::size_t> lower_covers(std::size_t i) const {
    std::vector<std::size_t> out;
    for (auto j : strictly_below(i)) {
      bool between = false;
      for (std::size_t k = 0; k < size() && !between; ++k) between = less(j, k) && less(k, i);
      if (!between) out.push_back(j);
    }
    return out;
  }

  /// The greatest element of I_{<i}, when there is one.
  std::optional<std::size_t> greatest_below(std::size_t i) const {
    auto below = strictly_below(i);
    for (auto m : below)
      if (std::all_of(below.begin(), below.end(), [&](std::size_t k) { return leq(k, m); })) return m;
    return std::nullopt;
  }

  /// A finite directed set always has a greatest element.
  std::size_t top() const {
    for (std::size_t m = 0; m < size(); ++m) {
      bool greatest = true;
      for (std::size_t k = 0; k < size() && greatest; ++k) greatest = leq(k, m);
      if (greatest) return m;
    }
    throw Error(Errc::InvalidFiltration, "directed poset without a greatest element");
  }

  /// Indices ordered so that every element comes after everything below it.
  std::vector<std::size_t> linear_extension() const {
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth(a) < depth(b); });
    return order;
  }

  /// Length of the longest chain from a minimal element up to i.
  std::size_t depth(std::size_t i) const {
    std::size_t best = 0;
    for (auto j : lower_covers(i)) best = std::max(best, depth(j) + 1);
    return best;
  }

  bool is_total() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!leq(i, j) && !leq(j, i)) return false;
    return true;
  }

  bool operator==(const DirectedPoset& o) const { return labels_ == o.labels_ && leq_ == o.leq_; }

 private:
  DirectedPoset(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& covers)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(Errc::InvalidFiltration, "a directed set is non-empty");
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
    for (auto [lo, hi] : covers) {
      if (lo >= n || hi >= n) throw Error(Errc::InvalidFiltration, "cover refers to an unknown index");
      if (lo == hi) throw Error(Errc::InvalidFiltration, "cover from an index to itself", labels_[lo]);
      leq_[lo][hi] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq_[k][j]) leq_[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw Error(Errc::InvalidFiltration, "covers contain a cycle through " + labels_[i], labels_[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool bounded = false;
        for (std::size_t z = 0; z < n && !bounded; ++z) bounded = leq_[i][z] && leq_[j][z];
        if (!bounded)
          throw Error(Errc::InvalidFiltration, labels_[i] + " and " + labels_[j] + " have no upper bound", labels_[i]);
      }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  bool nat_prefix_ = false;
};

/// A colimit of stages, with its legs and the stage generator each of its
/// own generators is named after. Used both for E_{<i} and for min(E).
struct StageColimit {
  CarrierObject object;
  CarrierMap inj;                                           // into E
  std::vector<std::optional<CarrierMap>> legs;              // E_k -> colimit, where defined
  std::vector<std::pair<std::size_t, std::size_t>> origin;  // generator -> (k, generator of E_k)
};

class Filtration {
 public:
  Filtration() = default;

  /// Stage i is the domain of inclusions[i]. Throws InvalidFiltration when an
  /// inclusion is not injective, a link does not exist, or E is not the colimit.
  Filtration(DirectedPoset index, CarrierObject total, std::vector<CarrierMap> inclusions)
      : index_(std::move(index)), total_(std::move(total)), inj_(std::move(inclusions)) {
    const std::size_t n = index_.size();
    if (inj_.size() != n) throw Error(Errc::InvalidFiltration, "one stage per index required");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(inj_[i].cod() == total_)) throw Error(Errc::InvalidFiltration, "stage does not map into E", index_.label(i));
      if (!is_injective(inj_[i]))
        throw Error(Errc::InvalidFiltration, "stage " + index_.label(i) + " is not a sub-object", index_.label(i));
    }
    links_.assign(n, std::vector<std::optional<CarrierMap>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!index_.leq(i, j)) continue;
        auto k = factor_through(inj_[i], inj_[j]);
        if (!k)
          throw Error(Errc::InvalidFiltration,
                      "stage " + index_.label(i) + " is not contained in stage " + index_.label(j), index_.label(i));
        links_[i][j] = std::move(*k);
      }
    validate();
    for (std::size_t i = 0; i < n; ++i) below_.push_back(compute_below(i));
    min_ = compute_min();
  }

  const DirectedPoset& index() const noexcept { return index_; }
  const CarrierObject& total() const noexcept { return total_; }
  const CarrierObject& stage(std::size_t i) const { return inj_.at(i).dom(); }
  const CarrierMap& inj(std::size_t i) const { return inj_.at(i); }
  const CarrierMap& link(std::size_t i, std::size_t j) const {
    if (!links_.at(i).at(j)) throw Error(Errc::InvalidFiltration, "no link between unrelated indices");
    return *links_[i][j];
  }
  /// E_{<i} with ι_{<i}; for minimal i this is E_i itself.
  const StageColimit& below(std::size_t i) const { return below_.at(i); }
  /// min(E), the coproduct of the minimal stages.
  const StageColimit& min() const noexcept { return min_; }

  /// The canonical map E_{<j} -> E_{<i} for j < i.
  CarrierMap below_transition(std::size_t j, std::size_t i) const {
    const StageColimit& bi = below_.at(i);
    if (index_.is_minimal(j)) return *bi.legs.at(j);
    const StageColimit& bj = below_.at(j);
    std::vector<Element> images;
    for (auto [k, x] : bj.origin) images.push_back(bi.legs.at(k)->image(x));
    return CarrierMap::from_images(bj.object, bi.object, images);
  }

  /// The first stage (in a linear extension of I) containing the element.
  std::size_t stage_of(const Element& x) const {
    for (auto i : index_.linear_extension())
      if (preimage(inj_[i], x)) return i;
    throw Error(Errc::InvalidFiltration, "element outside every stage");
  }

  /// Functoriality, cocone and colimit conditions. Throws on violation.
  void validate() const {
    const std::size_t n = index_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!equal_maps(link(i, i), identity(stage(i))))
        throw Error(Errc::InvalidFiltration, "link(i,i) is not the identity", index_.label(i));
      for (std::size_t j = 0; j < n; ++j) {
        if (!index_.leq(i, j)) continue;
        if (!equal_maps(compose(inj_[j], link(i, j)), inj_[i]))
          throw Error(Errc::InvalidFiltration, "cocone condition fails", index_.label(i));
        for (std::size_t k = 0; k < n; ++k)
          if (index_.leq(j, k) && !equal_maps(link(i, k), compose(link(j, k), link(i, j))))
            throw Error(Errc::InvalidFiltration, "links are not functorial", index_.label(i));
      }
    }
    // I is finite and directed, so the colimit is the top stage.
    if (!is_isomorphism(inj_[index_.top()]))
      throw Error(Errc::InvalidFiltration, "E is not the colimit of its stages");
  }

 private:
  StageColimit colimit_over(const std::vector<std::size_t>& ks) const {
    StageColimit out;
    out.legs.assign(index_.size(), std::nullopt);
    std::vector<CarrierObject> parts;
    std::vector<std::string> tags;
    for (auto k : ks) {
      parts.push_back(stage(k));
      tags.push_back(index_.label(k));
    }
    Coproduct cp = coproduct_of(parts, tags);
    std::vector<std::pair<std::size_t, std::size_t>> coproduct_origin;
    for (std::size_t p = 0; p < ks.size(); ++p)
      for (std::size_t x = 0; x < parts[p].size(); ++x) coproduct_origin.emplace_back(ks[p], x);
    // Identify x in E_k with its image in E_k' for every k < k' in the family.
    std::vector<CarrierObject> arrow_parts;
    std::vector<std::string> arrow_tags;
    std::vector<CarrierMap> left;
    std::vector<CarrierMap> right;
    for (std::size_t a = 0; a < ks.size(); ++a)
      for (std::size_t b = 0; b < ks.size(); ++b)
        if (index_.less(ks[a], ks[b])) {
          arrow_parts.push_back(stage(ks[a]));
          arrow_tags.push_back(index_.label(ks[a]) + "<" + index_.label(ks[b]));
          left.push_back(cp.injections[a]);
          right.push_back(compose(cp.injections[b], link(ks[a], ks[b])));
        }
    CarrierMap q = identity(cp.object);
    std::vector<std::size_t> reps(cp.object.size());
    for (std::size_t g = 0; g < reps.size(); ++g) reps[g] = g;
    CarrierObject obj = cp.object;
    if (!arrow_parts.empty()) {
      Coproduct arrows = coproduct_of(arrow_parts, arrow_tags);
      Coequalizer ce = coequalizer(copair(arrows, left), copair(arrows, right));
      q = ce.q;
      reps = ce.representatives;
      obj = ce.object;
    }
    std::vector<CarrierMap> stage_inj;
    for (auto k : ks) stage_inj.push_back(inj_[k]);
    CarrierMap into_total = copair(cp, stage_inj);
    std::vector<Element> images;
    for (auto rgen : reps) {
      images.push_back(into_total.image(rgen));
      out.origin.push_back(coproduct_origin[rgen]);
    }
    out.object = obj;
    out.inj = CarrierMap::from_images(obj, total_, images);
    for (std::size_t p = 0; p < ks.size(); ++p) out.legs[ks[p]] = compose(q, cp.injections[p]);
    return out;
  }

  StageColimit single_stage(std::size_t m, const std::vector<std::size_t>& family) const {
    StageColimit out;
    out.object = stage(m);
    out.inj = inj_[m];
    out.legs.assign(index_.size(), std::nullopt);
    for (auto k : family) out.legs[k] = link(k, m);
    for (std::size_t x = 0; x < stage(m).size(); ++x) out.origin.emplace_back(m, x);
    return out;
  }

  StageColimit compute_below(std::size_t i) const {
    if (index_.is_minimal(i)) return single_stage(i, {i});
    auto family = index_.strictly_below(i);
    if (auto m = index_.greatest_below(i)) return single_stage(*m, family);
    return colimit_over(family);
  }

  StageColimit compute_min() const {
    auto mins = index_.minimal();
    if (mins.size() == 1) return single_stage(mins[0], mins);
    // Minimal indices are pairwise incomparable: the colimit is the coproduct.
    return colimit_over(mins);
  }

  DirectedPoset index_ = DirectedPoset::nat_prefix(1);
  CarrierObject total_;
  std::vector<CarrierMap> inj_;
  std::vector<std::vector<std::optional<CarrierMap>>> links_;
  std::vector<StageColimit> below_;
  StageColimit min_;
};

/// f_{<i} = f ∘ ι_{<i}.
inline CarrierMap restrict_map(const Filtration& filt, const CarrierMap& f, std::size_t i) {
  return compose(f, filt.below(i).inj);
}

/// Filtration whose stage i is generated by the listed generators of E.
inline Filtration filtration_from_stages(DirectedPoset index, const CarrierObject& e,
                                         const std::vector<std::vector<std::size_t>>& stage_generators) {
  std::vector<CarrierMap> incl;
  for (const auto& gens : stage_generators) incl.push_back(sub_generated(e, gens).inclusion);
  return Filtration(std::move(index), e, std::move(incl));
}

/// Membership stage of each element: 0 for normal forms, otherwise one more
/// than the least stage among its successors.
inline std::vector<std::size_t> relation_stages(const SetRelation& rel) {
  require_terminating(rel);
  const std::size_t n = rel.elements.size();
  std::vector<std::optional<std::size_t>> stage(n);
  for (std::size_t x = 0; x < n; ++x)
    if (rel.is_normal_form(x)) stage[x] = 0;
  for (std::size_t level = 0;; ++level) {
    bool changed = false;
    std::vector<std::size_t> added;
    for (const auto& r : rel.rules)
      if (!stage[r.source] && stage[r.target] && *stage[r.target] <= level) added.push_back(r.source);
    for (auto x : added)
      if (!stage[x]) {
        stage[x] = level + 1;
        changed = true;
      }
    if (!changed) break;
  }
  std::vector<std::size_t> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = *stage[x];
  return out;
}

/// E_0 = NF, E_{i+1} = {x | x ->= y for some y in E_i}.
inline Filtration filtration_from_terminating_relation(const SetRelation& rel) {
  auto st = relation_stages(rel);
  std::size_t top = st.empty() ? 0 : *std::max_element(st.begin(), st.end());
  std::vector<std::vector<std::size_t>> stages(top + 1);
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t x = 0; x < st.size(); ++x)
      if (st[x] <= i) stages[i].push_back(x);
  return filtration_from_stages(DirectedPoset::nat_prefix(top + 1), rel.elements, stages);
}

/// Stage index of the right-hand side of a rule given element heights: the
/// largest height in its support, 0 for an empty support.
inline std::size_t rhs_height(const Vector& rhs, const std::vector<std::size_t>& h) {
  std::size_t best = 0;
  for (auto y : support(rhs)) best = std::max(best, h[y]);
  return best;
}

/// height(x) = 0 for normal forms, otherwise the least over rules x -> u of
/// (max height over supp(u)) + 1. A rule x -> 0 gives height 1.
inline std::vector<std::size_t> height(const AlgebraicRelation& ar) {
  require_decreasing(ar);
  const std::size_t n = ar.basis.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ar.rank[a] < ar.rank[b]; });
  std::vector<std::size_t> h(n, 0);
  for (auto x : order) {
    auto from = ar.rules_from(x);
    if (from.empty()) continue;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (auto k : from) best = std::min(best, rhs_height(ar.rules[k].rhs, h) + 1);
    h[x] = best;
  }
  return h;
}

/// kX_i = span{x | height(x) <= i}.
inline Filtration filtration_from_height(const AlgebraicRelation& ar) {
  auto h = height(ar);
  std::size_t top = h.empty() ? 0 : *std::max_element(h.begin(), h.end());
  std::vector<std::vector<std::size_t>> stages(top + 1);
  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t x = 0; x < h.size(); ++x)
      if (h[x] <= i) stages[i].push_back(x);
  return filtration_from_stages(DirectedPoset::nat_prefix(top + 1), ar.basis, stages);
}

/// Image of a set filtration under the free vector space functor.
inline Filtration linearize(const Filtration& f) {
  std::vector<CarrierMap> incl;
  for (std::size_t i = 0; i < f.index().size(); ++i) incl.push_back(linearize(f.inj(i)));
  return Filtration(f.index(), linearize(f.total()), std::move(incl));
}

}  // namespace intrew
