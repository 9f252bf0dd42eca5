#pragma once

// Finite carriers standing in for the ambient category: finite sets and
// finite-dimensional vector spaces over the rationals. A set map is an element
// table, a linear map a matrix whose columns are the images of basis vectors.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "intrew/errors.hpp"
#include "intrew/rational.hpp"

namespace intrew {

enum class Kind { Set, Vect };

constexpr std::string_view kind_name(Kind k) { return k == Kind::Set ? "set" : "vect"; }

/// A point of a finite set (an index into its labels) or a coordinate vector
/// over the basis of a vector space.
class Element {
 public:
  static Element point(std::size_t index) { return Element(index); }
  static Element vector(Vector coords) { return Element(std::move(coords)); }

  Kind kind() const noexcept { return std::holds_alternative<std::size_t>(value_) ? Kind::Set : Kind::Vect; }
  std::size_t index() const { return std::get<std::size_t>(value_); }
  const Vector& coords() const { return std::get<Vector>(value_); }

  bool operator==(const Element&) const = default;

 private:
  explicit Element(std::size_t i) : value_(i) {}
  explicit Element(Vector v) : value_(std::move(v)) {}
  std::variant<std::size_t, Vector> value_;
};

class CarrierObject {
 public:
  CarrierObject() = default;

  static CarrierObject set(std::vector<std::string> labels) { return CarrierObject(Kind::Set, std::move(labels)); }
  static CarrierObject vect(std::vector<std::string> basis) { return CarrierObject(Kind::Vect, std::move(basis)); }
  static CarrierObject empty(Kind kind) { return CarrierObject(kind, {}); }

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Cardinality (sets) or dimension (vector spaces).
  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw Error(Errc::InvalidObject, "unknown label '" + std::string(label) + "'", std::string(label));
  }

  /// The i-th element (sets) or basis vector (vector spaces).
  Element generator(std::size_t i) const {
    return kind_ == Kind::Set ? Element::point(i) : Element::vector(unit_vector(size(), i));
  }

  Element zero() const {
    if (kind_ != Kind::Vect) throw Error(Errc::KindMismatch, "zero vector requested in a set");
    return Element::vector(zero_vector(size()));
  }

  bool contains(const Element& e) const {
    if (e.kind() != kind_) return false;
    return kind_ == Kind::Set ? e.index() < size() : e.coords().size() == size();
  }

  bool operator==(const CarrierObject&) const = default;

 private:
  CarrierObject(Kind kind, std::vector<std::string> labels) : kind_(kind), labels_(std::move(labels)) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second) throw Error(Errc::InvalidObject, "duplicate label '" + l + "'", l);
  }

  Kind kind_ = Kind::Set;
  std::vector<std::string> labels_;
};

class CarrierMap {
 public:
  CarrierMap() = default;

  static CarrierMap set_map(CarrierObject dom, CarrierObject cod, std::vector<std::size_t> table) {
    if (dom.kind() != Kind::Set || cod.kind() != Kind::Set)
      throw Error(Errc::KindMismatch, "set map between non-set objects");
    if (table.size() != dom.size()) throw Error(Errc::InvalidMap, "table size differs from domain cardinality");
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i] >= cod.size()) throw Error(Errc::InvalidMap, "image outside codomain", dom.label(i));
    CarrierMap m;
    m.dom_ = std::move(dom);
    m.cod_ = std::move(cod);
    m.table_ = std::move(table);
    return m;
  }

  static CarrierMap linear(CarrierObject dom, CarrierObject cod, Matrix matrix) {
    if (dom.kind() != Kind::Vect || cod.kind() != Kind::Vect)
      throw Error(Errc::KindMismatch, "linear map between non-vector objects");
    if (matrix.cols() != dom.size() || matrix.rows() != cod.size())
      throw Error(Errc::InvalidMap, "matrix shape does not match dimensions");
    CarrierMap m;
    m.dom_ = std::move(dom);
    m.cod_ = std::move(cod);
    m.matrix_ = std::move(matrix);
    return m;
  }

  /// The map sending the i-th generator of dom to images[i].
  static CarrierMap from_images(CarrierObject dom, CarrierObject cod, const std::vector<Element>& images) {
    if (images.size() != dom.size()) throw Error(Errc::InvalidMap, "one image per generator required");
    if (dom.kind() == Kind::Set) {
      std::vector<std::size_t> table;
      table.reserve(images.size());
      for (const auto& e : images) table.push_back(e.index());
      return set_map(std::move(dom), std::move(cod), std::move(table));
    }
    std::vector<Vector> cols;
    cols.reserve(images.size());
    for (const auto& e : images) {
      if (e.coords().size() != cod.size()) throw Error(Errc::InvalidMap, "image vector has wrong dimension");
      cols.push_back(e.coords());
    }
    Matrix m = Matrix::from_columns(cod.size(), cols);
    return linear(std::move(dom), std::move(cod), std::move(m));
  }

  Kind kind() const noexcept { return dom_.kind(); }
  const CarrierObject& dom() const noexcept { return dom_; }
  const CarrierObject& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  Element operator()(const Element& e) const {
    if (!dom_.contains(e)) throw Error(Errc::DomainMismatch, "element outside the domain");
    if (kind() == Kind::Set) return Element::point(table_[e.index()]);
    return Element::vector(matrix_.apply(e.coords()));
  }

  Element image(std::size_t generator) const {
    if (kind() == Kind::Set) return Element::point(table_.at(generator));
    return Element::vector(matrix_.column(generator));
  }

  bool operator==(const CarrierMap&) const = default;

 private:
  CarrierObject dom_;
  CarrierObject cod_;
  std::vector<std::size_t> table_;
  Matrix matrix_;
};

inline CarrierMap identity(const CarrierObject& a) {
  if (a.kind() == Kind::Set) {
    std::vector<std::size_t> t(a.size());
    std::iota(t.begin(), t.end(), std::size_t{0});
    return CarrierMap::set_map(a, a, std::move(t));
  }
  return CarrierMap::linear(a, a, Matrix::identity(a.size()));
}

/// The unique map out of the empty set / zero space.
inline CarrierMap initial_map(const CarrierObject& cod) {
  return CarrierMap::from_images(CarrierObject::empty(cod.kind()), cod, {});
}

/// f ∘ g.
inline CarrierMap compose(const CarrierMap& f, const CarrierMap& g) {
  if (!(g.cod() == f.dom())) throw Error(Errc::DomainMismatch, "compose: codomain of g differs from domain of f");
  if (f.kind() == Kind::Set) {
    std::vector<std::size_t> t(g.dom().size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = f.table()[g.table()[i]];
    return CarrierMap::set_map(g.dom(), f.cod(), std::move(t));
  }
  return CarrierMap::linear(g.dom(), f.cod(), f.matrix() * g.matrix());
}

inline void require_parallel(const CarrierMap& f, const CarrierMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw Error(Errc::NotParallel, "maps are not parallel");
}

inline bool equal_maps(const CarrierMap& f, const CarrierMap& g) {
  require_parallel(f, g);
  return f.kind() == Kind::Set ? f.table() == g.table() : f.matrix() == g.matrix();
}

/// First generator of the common domain where f and g disagree.
inline std::optional<std::size_t> first_difference(const CarrierMap& f, const CarrierMap& g) {
  require_parallel(f, g);
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (!(f.image(i) == g.image(i))) return i;
  return std::nullopt;
}

inline bool is_injective(const CarrierMap& f) {
  if (f.kind() == Kind::Set) {
    std::vector<bool> hit(f.cod().size(), false);
    for (auto y : f.table()) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }
  return rank(f.matrix()) == f.dom().size();
}

inline bool is_surjective(const CarrierMap& f) {
  if (f.kind() == Kind::Set) {
    std::vector<bool> hit(f.cod().size(), false);
    for (auto y : f.table()) hit[y] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }
  return rank(f.matrix()) == f.cod().size();
}

inline bool is_isomorphism(const CarrierMap& f) {
  return f.dom().size() == f.cod().size() && is_injective(f);
}

// ---------------------------------------------------------------------------
// Coproducts

struct Coproduct {
  CarrierObject object;
  std::vector<CarrierMap> injections;
};

/// Coproduct of a family; labels are prefixed "<tag>." so the union is disjoint.
inline Coproduct coproduct_of(const std::vector<CarrierObject>& parts, const std::vector<std::string>& tags) {
  if (parts.empty()) throw Error(Errc::InvalidObject, "coproduct of an empty family needs an explicit kind");
  Kind kind = parts.front().kind();
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].kind() != kind) throw Error(Errc::KindMismatch, "coproduct of objects of different kinds");
    for (const auto& l : parts[p].labels()) labels.push_back(tags[p] + "." + l);
  }
  CarrierObject obj = kind == Kind::Set ? CarrierObject::set(std::move(labels)) : CarrierObject::vect(std::move(labels));
  Coproduct out{obj, {}};
  std::size_t offset = 0;
  for (const auto& part : parts) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < part.size(); ++i) images.push_back(obj.generator(offset + i));
    out.injections.push_back(CarrierMap::from_images(part, obj, images));
    offset += part.size();
  }
  return out;
}

inline Coproduct coproduct(const CarrierObject& a, const CarrierObject& b) {
  if (a.kind() != b.kind()) throw Error(Errc::KindMismatch, "coproduct of objects of different kinds");
  return coproduct_of({a, b}, {"L", "R"});
}

/// The unique map out of a coproduct restricting to legs[k] along injection k.
inline CarrierMap copair(const Coproduct& cp, const std::vector<CarrierMap>& legs) {
  if (legs.size() != cp.injections.size()) throw Error(Errc::InvalidMap, "copair: one leg per summand required");
  const CarrierObject& cod = legs.front().cod();
  std::vector<Element> images;
  for (std::size_t k = 0; k < legs.size(); ++k) {
    if (!(legs[k].dom() == cp.injections[k].dom())) throw Error(Errc::DomainMismatch, "copair: leg domain mismatch");
    if (!(legs[k].cod() == cod)) throw Error(Errc::CodomainMismatch, "copair: legs have different codomains");
    for (std::size_t i = 0; i < legs[k].dom().size(); ++i) images.push_back(legs[k].image(i));
  }
  return CarrierMap::from_images(cp.object, cod, images);
}

inline CarrierMap copair(const CarrierMap& f, const CarrierMap& g) {
  return copair(coproduct(f.dom(), g.dom()), {f, g});
}

// ---------------------------------------------------------------------------
// Pullbacks

struct Pullback {
  CarrierObject object;
  CarrierMap pi1;
  CarrierMap pi2;
};

/// Sets: {(a,b) | f(a) = g(b)} in lexicographic order. Vector spaces: the
/// kernel of [f | -g] on the direct sum, with its row-reduction basis.
inline Pullback pullback(const CarrierMap& f, const CarrierMap& g) {
  if (!(f.cod() == g.cod())) throw Error(Errc::CodomainMismatch, "pullback legs have different codomains");
  if (f.kind() != g.kind()) throw Error(Errc::KindMismatch, "pullback of maps of different kinds");
  if (f.kind() == Kind::Set) {
    std::vector<std::string> labels;
    std::vector<std::size_t> p1;
    std::vector<std::size_t> p2;
    for (std::size_t a = 0; a < f.dom().size(); ++a)
      for (std::size_t b = 0; b < g.dom().size(); ++b)
        if (f.table()[a] == g.table()[b]) {
          labels.push_back("(" + f.dom().label(a) + "," + g.dom().label(b) + ")");
          p1.push_back(a);
          p2.push_back(b);
        }
    CarrierObject obj = CarrierObject::set(std::move(labels));
    return {obj, CarrierMap::set_map(obj, f.dom(), std::move(p1)), CarrierMap::set_map(obj, g.dom(), std::move(p2))};
  }
  Matrix stacked = Matrix::hstack(f.matrix(), Rational(-1) * g.matrix());
  std::vector<Vector> kernel = kernel_basis(stacked);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < kernel.size(); ++k) labels.push_back("k" + std::to_string(k));
  CarrierObject obj = CarrierObject::vect(std::move(labels));
  Matrix basis = Matrix::from_columns(f.dom().size() + g.dom().size(), kernel);
  return {obj, CarrierMap::linear(obj, f.dom(), basis.row_block(0, f.dom().size())),
          CarrierMap::linear(obj, g.dom(), basis.row_block(f.dom().size(), basis.rows()))};
}

/// The unique map into the pullback restricting to a and b, when f ∘ a = g ∘ b.
inline std::optional<CarrierMap> pullback_lift(const Pullback& p, const CarrierMap& a, const CarrierMap& b) {
  if (!(a.dom() == b.dom()) || !(a.cod() == p.pi1.cod()) || !(b.cod() == p.pi2.cod()))
    throw Error(Errc::DomainMismatch, "pullback_lift: legs do not match the pullback");
  std::vector<Element> images;
  if (a.kind() == Kind::Set) {
    for (std::size_t x = 0; x < a.dom().size(); ++x) {
      std::optional<std::size_t> hit;
      for (std::size_t k = 0; k < p.object.size() && !hit; ++k)
        if (p.pi1.table()[k] == a.table()[x] && p.pi2.table()[k] == b.table()[x]) hit = k;
      if (!hit) return std::nullopt;
      images.push_back(Element::point(*hit));
    }
  } else {
    Matrix both = Matrix::vstack(p.pi1.matrix(), p.pi2.matrix());
    Matrix targets = Matrix::vstack(a.matrix(), b.matrix());
    for (std::size_t x = 0; x < a.dom().size(); ++x) {
      auto y = solve(both, targets.column(x));
      if (!y) return std::nullopt;
      images.push_back(Element::vector(std::move(*y)));
    }
  }
  return CarrierMap::from_images(a.dom(), p.object, images);
}

// ---------------------------------------------------------------------------
// Coequalizers

struct Coequalizer {
  CarrierObject object;
  CarrierMap q;
  /// For each generator of the quotient, the generator of cod it was named after.
  std::vector<std::size_t> representatives;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Keeps the smaller index as root so every root is its class's least member.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Sets: quotient by the equivalence generated by f(x) ~ g(x), each class named
/// by its least label in label order. Vector spaces: cod / image(f - g), with
/// basis the non-pivot columns of the reduced relation matrix.
inline Coequalizer coequalizer(const CarrierMap& f, const CarrierMap& g) {
  require_parallel(f, g);
  const CarrierObject& cod = f.cod();
  if (f.kind() == Kind::Set) {
    UnionFind uf(cod.size());
    for (std::size_t i = 0; i < f.dom().size(); ++i) uf.unite(f.table()[i], g.table()[i]);
    std::vector<std::size_t> class_of_root(cod.size(), cod.size());
    std::vector<std::string> labels;
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < cod.size(); ++x)
      if (uf.find(x) == x) {
        class_of_root[x] = reps.size();
        reps.push_back(x);
        labels.push_back(cod.label(x));
      }
    std::vector<std::size_t> table(cod.size());
    for (std::size_t x = 0; x < cod.size(); ++x) table[x] = class_of_root[uf.find(x)];
    CarrierObject obj = CarrierObject::set(std::move(labels));
    return {obj, CarrierMap::set_map(cod, obj, std::move(table)), std::move(reps)};
  }
  Matrix relations = (f.matrix() - g.matrix()).transpose();  // one relation per row
  RowEchelon e = row_reduce(relations);
  std::vector<bool> is_pivot(cod.size(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> reps;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < cod.size(); ++j)
    if (!is_pivot[j]) {
      reps.push_back(j);
      labels.push_back(cod.label(j));
    }
  Matrix q(reps.size(), cod.size());
  for (std::size_t k = 0; k < reps.size(); ++k) q(k, reps[k]) = 1;
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t k = 0; k < reps.size(); ++k) q(k, e.pivots[r]) = -e.reduced(r, reps[k]);
  CarrierObject obj = CarrierObject::vect(std::move(labels));
  return {obj, CarrierMap::linear(cod, obj, std::move(q)), std::move(reps)};
}

/// Colimit of a chain X_0 -> X_1 -> ... -> X_n, built as a coequalizer of
/// coproducts.
struct ChainColimit {
  CarrierObject object;
  std::vector<CarrierMap> legs;
  Coproduct sum;
  Coequalizer quotient;
};

inline ChainColimit chain_colimit(const std::vector<CarrierObject>& objects, const std::vector<CarrierMap>& links) {
  if (objects.empty() || links.size() + 1 != objects.size())
    throw Error(Errc::InvalidObject, "a chain of n objects has n - 1 links");
  std::vector<std::string> tags;
  for (std::size_t k = 0; k < objects.size(); ++k) tags.push_back(std::to_string(k));
  Coproduct cp = coproduct_of(objects, tags);
  Coequalizer ce{cp.object, identity(cp.object), {}};
  for (std::size_t g = 0; g < cp.object.size(); ++g) ce.representatives.push_back(g);
  if (!links.empty()) {
    std::vector<CarrierObject> arrows(objects.begin(), objects.end() - 1);
    Coproduct ap = coproduct_of(arrows, std::vector<std::string>(tags.begin(), tags.end() - 1));
    std::vector<CarrierMap> left;
    std::vector<CarrierMap> right;
    for (std::size_t k = 0; k < links.size(); ++k) {
      left.push_back(cp.injections[k]);
      right.push_back(compose(cp.injections[k + 1], links[k]));
    }
    ce = coequalizer(copair(ap, left), copair(ap, right));
  }
  ChainColimit out{ce.object, {}, cp, ce};
  for (const auto& inj : cp.injections) out.legs.push_back(compose(ce.q, inj));
  return out;
}

/// The map out of the colimit induced by a cocone; throws unless the cocone
/// commutes with the links.
inline CarrierMap colimit_map(const ChainColimit& c, const std::vector<CarrierMap>& cocone) {
  CarrierMap whole = copair(c.sum, cocone);
  std::vector<Element> images;
  for (auto rep : c.quotient.representatives) images.push_back(whole.image(rep));
  CarrierMap u = CarrierMap::from_images(c.object, whole.cod(), images);
  if (!equal_maps(compose(u, c.quotient.q), whole)) throw Error(Errc::InvalidMap, "colimit_map: not a cocone");
  return u;
}

// ---------------------------------------------------------------------------
// Subobjects and factorization

/// Some k with mono ∘ k = f, or nullopt if f does not land in the image of mono.
/// Sets pick the least preimage.
inline std::optional<CarrierMap> factor_through(const CarrierMap& f, const CarrierMap& mono) {
  if (!(f.cod() == mono.cod())) throw Error(Errc::CodomainMismatch, "factor_through: codomains differ");
  std::vector<Element> images;
  if (f.kind() == Kind::Set) {
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
      auto it = std::find(mono.table().begin(), mono.table().end(), f.table()[i]);
      if (it == mono.table().end()) return std::nullopt;
      images.push_back(Element::point(static_cast<std::size_t>(it - mono.table().begin())));
    }
  } else {
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
      auto x = solve(mono.matrix(), f.matrix().column(i));
      if (!x) return std::nullopt;
      images.push_back(Element::vector(std::move(*x)));
    }
  }
  return CarrierMap::from_images(f.dom(), mono.dom(), images);
}

/// Preimage of a single element under a mono, if it exists.
inline std::optional<Element> preimage(const CarrierMap& mono, const Element& y) {
  if (mono.kind() == Kind::Set) {
    auto it = std::find(mono.table().begin(), mono.table().end(), y.index());
    if (it == mono.table().end()) return std::nullopt;
    return Element::point(static_cast<std::size_t>(it - mono.table().begin()));
  }
  auto x = solve(mono.matrix(), y.coords());
  if (!x) return std::nullopt;
  return Element::vector(std::move(*x));
}

struct Subobject {
  CarrierObject object;
  CarrierMap inclusion;
};

/// The sub-object spanned by (vector spaces) or consisting of (sets) the listed generators.
inline Subobject sub_generated(const CarrierObject& e, const std::vector<std::size_t>& generators) {
  std::vector<std::size_t> sorted(generators);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::string> labels;
  std::vector<Element> images;
  for (auto g : sorted) {
    labels.push_back(e.label(g));
    images.push_back(e.generator(g));
  }
  CarrierObject obj = e.kind() == Kind::Set ? CarrierObject::set(std::move(labels)) : CarrierObject::vect(std::move(labels));
  return {obj, CarrierMap::from_images(obj, e, images)};
}

/// The free vector space on a set, and the induced linear map.
inline CarrierObject linearize(const CarrierObject& s) {
  if (s.kind() == Kind::Vect) return s;
  return CarrierObject::vect(s.labels());
}

inline CarrierMap linearize(const CarrierMap& f) {
  if (f.kind() == Kind::Vect) return f;
  Matrix m(f.cod().size(), f.dom().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) m(f.table()[i], i) = 1;
  return CarrierMap::linear(linearize(f.dom()), linearize(f.cod()), std::move(m));
}

inline Element linearize(const CarrierObject& s, const Element& e) {
  if (e.kind() == Kind::Vect) return e;
  return Element::vector(unit_vector(s.size(), e.index()));
}

// ---------------------------------------------------------------------------
// Formatting and parsing of elements

/// Sets print the label. Vectors print a signed combination, greatest basis
/// element first; a basis element labelled "1" prints as its coefficient.
inline std::string format_element(const CarrierObject& obj, const Element& e) {
  if (e.kind() == Kind::Set) return obj.label(e.index());
  const Vector& v = e.coords();
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] == 0) continue;
    Rational c = v[k];
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const std::string& label = obj.label(k);
    if (label == "1") {
      out << c.str();
    } else if (c == 1) {
      out << label;
    } else {
      out << c.str() << "*" << label;
    }
  }
  if (first) return "0";
  return out.str();
}

/// Sets: a label. Vectors: a signed sum of terms "label", "c*label" or "c"
/// (the latter only when a basis element is labelled "1"), or "0".
inline Element parse_element(const CarrierObject& obj, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (obj.kind() == Kind::Set) {
    auto i = obj.find(text);
    if (!i) throw Error(Errc::ParseError, "unknown element '" + std::string(text) + "'");
    return Element::point(*i);
  }
  Vector v = zero_vector(obj.size());
  if (text == "0" && !obj.find("0")) return Element::vector(v);
  std::vector<std::pair<bool, std::string_view>> terms;
  std::size_t start = 0;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    start = 1;
  }
  // '+'/'-' separate terms except directly after '/', '^' or '*'.
  for (std::size_t i = start; i <= text.size(); ++i) {
    bool at_end = i == text.size();
    if (at_end || ((text[i] == '+' || text[i] == '-') && i > start && text[i - 1] != '/' && text[i - 1] != '^' &&
                   text[i - 1] != '*')) {
      terms.emplace_back(negative, trim(text.substr(start, i - start)));
      if (!at_end) {
        negative = text[i] == '-';
        start = i + 1;
      }
    }
  }
  for (auto [neg, term] : terms) {
    if (term.empty()) throw Error(Errc::ParseError, "empty term in '" + std::string(text) + "'");
    Rational coef = 1;
    std::string_view label = term;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coef = parse_rational(term.substr(0, star));
      label = trim(term.substr(star + 1));
    } else if (!obj.find(term)) {
      // A bare constant multiplies the basis element "1".
      coef = parse_rational(term);
      label = "1";
    }
    auto idx = obj.find(label);
    if (!idx) throw Error(Errc::ParseError, "unknown basis element '" + std::string(label) + "'");
    v[*idx] += neg ? Rational(-coef) : coef;
  }
  return Element::vector(std::move(v));
}

}  // namespace intrew
