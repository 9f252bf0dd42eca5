#pragma once

#include <optional>
#include <vector>

#include "intrew/confluence.hpp"

namespace fixtures {

using namespace intrew;

/// a <-> b via f1, f2; a -> c via f3; b -> d via f4.
inline InternalGraph four_element_graph() {
  CarrierObject e = CarrierObject::set({"a", "b", "c", "d"});
  CarrierObject r = CarrierObject::set({"f1", "f2", "f3", "f4"});
  return InternalGraph(CarrierMap::set_map(r, e, {0, 1, 0, 1}), CarrierMap::set_map(r, e, {1, 0, 2, 3}));
}

/// I = {0 < 1}, E_0 = {c,d}; h(a) = f3, h(b) = f4.
inline LocalStrategy four_element_strategy1() {
  InternalGraph g = four_element_graph();
  Filtration f = filtration_from_stages(DirectedPoset::nat_prefix(2), g.base(), {{2, 3}, {0, 1, 2, 3}});
  return strategy_from_choice(g, std::move(f), {2, 3, std::nullopt, std::nullopt});
}

/// I = {0 < 1 < 2}, E_0 = {c,d}, E_1 = {b,c,d}; h(a) = f1, h(b) = f4.
inline LocalStrategy four_element_strategy2() {
  InternalGraph g = four_element_graph();
  Filtration f = filtration_from_stages(DirectedPoset::nat_prefix(3), g.base(), {{2, 3}, {1, 2, 3}, {0, 1, 2, 3}});
  return strategy_from_choice(g, std::move(f), {0, 3, std::nullopt, std::nullopt});
}

/// x^k -> -x^(k-2) on 1, x, ..., x^degree.
inline AlgebraicRelation x2_plus_1(std::size_t degree) { return polynomial_system({Rational(1), Rational(0)}, degree); }

inline SetRelation diamond() {
  return SetRelation::from_pairs(CarrierObject::set({"a", "b", "c", "d"}), {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

inline SetRelation chain() {
  return SetRelation::from_pairs(CarrierObject::set({"a", "b", "c"}), {{"a", "b"}, {"b", "c"}});
}

inline SetRelation peak() {
  return SetRelation::from_pairs(CarrierObject::set({"a", "b", "c"}), {{"a", "b"}, {"a", "c"}});
}

inline Vector vec(const CarrierObject& basis, const char* text) { return parse_element(basis, text).coords(); }

}  // namespace fixtures
