#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "intrew/termination.hpp"
#include "oracles.hpp"

using namespace intrew;

namespace {

std::string step_of(const LocalStrategy& ls, const char* x) {
  const CarrierObject& e = ls.filtration.total();
  return format_element(e, ls.step_target()(parse_element(e, x)));
}

void expect_all_pass(const Report& rep) {
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " failed at " << c.witness;
  for (const char* name : {"TG1", "TG2", "TG3", "TG4", "naturality", "min-identity"}) EXPECT_NE(rep.find(name), nullptr);
}

}  // namespace

TEST(LocalStrategy, FourElementStrategyOne) {
  LocalStrategy ls = fixtures::four_element_strategy1();
  expect_all_pass(verify_local_strategy(ls));
  EXPECT_EQ(step_of(ls, "a"), "c");
  EXPECT_EQ(step_of(ls, "b"), "d");
}

TEST(LocalStrategy, FourElementStrategyTwo) {
  LocalStrategy ls = fixtures::four_element_strategy2();
  expect_all_pass(verify_local_strategy(ls));
  EXPECT_EQ(step_of(ls, "a"), "b");
  EXPECT_EQ(step_of(ls, "b"), "d");
}

TEST(LocalStrategy, CyclicGraphStillTerminating) {
  InternalGraph g = fixtures::four_element_graph();
  SetRelation rel = SetRelation::from_pairs(g.base(), {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"b", "d"}});
  EXPECT_TRUE(find_cycle(rel).has_value());
  EXPECT_TRUE(verify_local_strategy(fixtures::four_element_strategy1()).passed());
}

TEST(LocalStrategy, Tg3ViolationAtNormalForm) {
  CarrierObject e = CarrierObject::set({"a", "b", "c", "d"});
  CarrierObject r = CarrierObject::set({"f1", "f2", "f3", "f4", "f5"});
  InternalGraph g(CarrierMap::set_map(r, e, {0, 1, 0, 1, 2}), CarrierMap::set_map(r, e, {1, 0, 2, 3, 3}));
  Filtration f = filtration_from_stages(DirectedPoset::nat_prefix(2), e, {{2, 3}, {0, 1, 2, 3}});
  LocalStrategy ls = strategy_from_choice(g, std::move(f), {2, 3, 4, std::nullopt});
  Report rep = verify_local_strategy(ls);
  EXPECT_FALSE(rep.passed());
  ASSERT_NE(rep.find("TG3"), nullptr);
  EXPECT_FALSE(rep.find("TG3")->passed);
  EXPECT_EQ(rep.find("TG3")->witness, "c");
  EXPECT_TRUE(rep.find("TG2")->passed);
}

TEST(LocalStrategy, Tg4ViolationRejectedAtConstruction) {
  InternalGraph g = fixtures::four_element_graph();
  Filtration f = filtration_from_stages(DirectedPoset::nat_prefix(2), g.base(), {{2, 3}, {0, 1, 2, 3}});
  try {
    strategy_from_choice(g, std::move(f), {0, 3, std::nullopt, std::nullopt});
    FAIL() << "expected VerificationFailed";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::VerificationFailed);
    EXPECT_EQ(err.witness(), "a");
  }
}

TEST(LocalStrategy, Tg2ViolationReported) {
  LocalStrategy ls = fixtures::four_element_strategy1();
  // h(a) = f4, an edge leaving b.
  ls.h = h_from_choice(ls.graph, {3, 3, std::nullopt, std::nullopt});
  Report rep = verify_local_strategy(ls);
  EXPECT_FALSE(rep.find("TG2")->passed);
  EXPECT_EQ(rep.find("TG2")->witness, "a");
}

TEST(LocalStrategy, NaturalityViolationReported) {
  LocalStrategy ls = fixtures::four_element_strategy2();
  // A non-natural h^tau on the middle stage: send c to d.
  const Filtration& f = ls.filtration;
  std::vector<std::size_t> table = ls.htau[1].table();
  auto c_in_stage = *preimage(f.inj(1), parse_element(f.total(), "c"));
  auto d_in_below = *preimage(f.below(1).inj, parse_element(f.total(), "d"));
  table[c_in_stage.index()] = d_in_below.index();
  ls.htau[1] = CarrierMap::set_map(f.stage(1), f.below(1).object, table);
  Report rep = verify_local_strategy(ls);
  EXPECT_FALSE(rep.find("naturality")->passed);
  EXPECT_EQ(rep.find("naturality")->witness, "c");
}

TEST(LocalStrategy, ShapeMismatch) {
  LocalStrategy ls = fixtures::four_element_strategy1();
  ls.htau.pop_back();
  Report rep = verify_local_strategy(ls);
  EXPECT_FALSE(rep.passed());
  EXPECT_NE(rep.find("shapes"), nullptr);
}

TEST(SetBuilder, Chain) {
  LocalStrategy ls = strategy_from_set_relation(fixtures::chain());
  expect_all_pass(verify_local_strategy(ls));
  EXPECT_EQ(step_of(ls, "a"), "b");
  EXPECT_EQ(step_of(ls, "b"), "c");
  EXPECT_EQ(step_of(ls, "c"), "c");
}

TEST(SetBuilder, EmptyRelationIsUnit) {
  SetRelation rel{CarrierObject::set({"a", "b"}), {}};
  LocalStrategy ls = strategy_from_set_relation(rel);
  GraphSum re = ls.reflexive();
  EXPECT_TRUE(equal_maps(ls.h, re.inj2));
}

TEST(SetBuilder, TieBreakByTargetOrder) {
  // Both targets are normal forms; c is declared before b.
  SetRelation rel = SetRelation::from_pairs(CarrierObject::set({"a", "c", "b"}), {{"a", "b"}, {"a", "c"}});
  LocalStrategy ls = strategy_from_set_relation(rel);
  EXPECT_EQ(step_of(ls, "a"), "c");
}

TEST(SetBuilder, TieBreakPrefersLowerStage) {
  // a -> b -> c and a -> c: c sits in stage 0.
  SetRelation rel = SetRelation::from_pairs(CarrierObject::set({"a", "b", "c"}), {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  LocalStrategy ls = strategy_from_set_relation(rel);
  EXPECT_EQ(step_of(ls, "a"), "c");
}

TEST(SetBuilder, StepsAreRelationSteps) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 8;
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x) labels.push_back("e" + std::to_string(x));
    SetRelation rel{CarrierObject::set(labels), {}};
    for (int k = 0; k < 12; ++k) {
      std::size_t a = rng() % n, b = rng() % n;
      if (a > b) rel.rules.push_back({"r" + std::to_string(k), a, b});
    }
    LocalStrategy ls = strategy_from_set_relation(rel);
    ASSERT_TRUE(verify_local_strategy(ls).passed());
    CarrierMap st = ls.step_target();
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t y = st.table()[x];
      if (rel.is_normal_form(x)) {
        EXPECT_EQ(y, x);
        continue;
      }
      bool is_step = false;
      for (const auto& r : rel.rules) is_step = is_step || (r.source == x && r.target == y);
      EXPECT_TRUE(is_step);
      EXPECT_LT(ls.filtration.stage_of(Element::point(y)), ls.filtration.stage_of(Element::point(x)));
    }
  }
}

TEST(SetBuilder, RejectsCycle) {
  SetRelation rel = SetRelation::from_pairs(CarrierObject::set({"a", "b"}), {{"a", "b"}, {"b", "a"}});
  EXPECT_THROW(strategy_from_set_relation(rel), Error);
}

TEST(AlgebraicBuilder, PolynomialSteps) {
  LocalStrategy ls = strategy_from_algebraic_relation(fixtures::x2_plus_1(4));
  expect_all_pass(verify_local_strategy(ls));
  EXPECT_EQ(step_of(ls, "x^2"), "-1");
  EXPECT_EQ(step_of(ls, "x^3"), "-x");
  EXPECT_EQ(step_of(ls, "1"), "1");
}

TEST(AlgebraicBuilder, Linearity) {
  LocalStrategy ls = strategy_from_algebraic_relation(fixtures::x2_plus_1(4));
  EXPECT_EQ(step_of(ls, "x^2 + 3*x"), "3*x - 1");
}

TEST(AlgebraicBuilder, TieBreakByTargetHeight) {
  CarrierObject b = CarrierObject::vect({"1", "y", "x"});
  AlgebraicRelation ar = AlgebraicRelation::make(
      b, {{"y1", 1, fixtures::vec(b, "1")}, {"xy", 2, fixtures::vec(b, "y")}, {"x1", 2, fixtures::vec(b, "2*1")}});
  LocalStrategy ls = strategy_from_algebraic_relation(ar);
  EXPECT_TRUE(verify_local_strategy(ls).passed());
  EXPECT_EQ(step_of(ls, "x"), "2");
}

TEST(AlgebraicBuilder, TieBreakByRuleIndex) {
  CarrierObject b = CarrierObject::vect({"1", "y", "x"});
  AlgebraicRelation ar = AlgebraicRelation::make(b, {{"xy", 2, fixtures::vec(b, "y")}, {"x1", 2, fixtures::vec(b, "1")}});
  LocalStrategy ls = strategy_from_algebraic_relation(ar);
  EXPECT_EQ(step_of(ls, "x"), "y");
}

TEST(AlgebraicBuilder, UnitOrRuleFromBasis) {
  AlgebraicRelation ar = fixtures::x2_plus_1(6);
  LocalStrategy ls = strategy_from_algebraic_relation(ar);
  GraphSum re = ls.reflexive();
  for (std::size_t x = 0; x < ar.basis.size(); ++x) {
    Element hx = ls.h.image(x);
    if (ar.is_normal_form(x)) {
      EXPECT_EQ(hx, re.inj2.image(x));
    } else {
      bool is_rule = false;
      for (auto k : ar.rules_from(x)) is_rule = is_rule || hx == re.inj1.image(k);
      EXPECT_TRUE(is_rule);
    }
  }
}

TEST(AlgebraicBuilder, RejectsNonDecreasing) {
  CarrierObject b = CarrierObject::vect({"x", "y"});
  AlgebraicRelation ar = AlgebraicRelation::make(b, {{"up", 0, fixtures::vec(b, "y")}});
  try {
    strategy_from_algebraic_relation(ar);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::NotDecreasing);
    EXPECT_EQ(err.witness(), "up");
  }
}

TEST(AlgebraicBuilder, StepsMatchRemainderDegree) {
  // One step from x^k lowers the degree by exactly two.
  AlgebraicRelation ar = fixtures::x2_plus_1(7);
  LocalStrategy ls = strategy_from_algebraic_relation(ar);
  CarrierMap st = ls.step_target();
  for (std::size_t k = 2; k <= 7; ++k) {
    Vector v = st.image(k).coords();
    Vector expected(8);
    expected[k - 2] = Rational(-1);
    EXPECT_EQ(v, expected);
  }
}

TEST(Transport, IdentityIsSameStrategy) {
  LocalStrategy ls = fixtures::four_element_strategy1();
  LocalStrategy t = transport_strategy(ls, ls.graph, identity(ls.graph.edges()));
  EXPECT_TRUE(equal_maps(t.h, ls.h));
  EXPECT_EQ(t.graph, ls.graph);
}

TEST(Transport, AlongSymmetricClosure) {
  for (LocalStrategy ls : {fixtures::four_element_strategy1(), strategy_from_algebraic_relation(fixtures::x2_plus_1(4))}) {
    GraphSum sc = symmetric_closure(ls.graph);
    LocalStrategy t = transport_strategy(ls, sc.graph, sc.inj1);
    EXPECT_TRUE(verify_local_strategy(t).passed());
  }
}

TEST(Transport, AlongTruncatedClosure) {
  LocalStrategy ls = fixtures::four_element_strategy2();
  TruncatedClosure tc = truncated_closure(ls.graph, 2, true);
  LocalStrategy t = transport_strategy(ls, tc.graph, tc.embedding);
  EXPECT_TRUE(verify_local_strategy(t).passed());
  EXPECT_TRUE(equal_maps(t.step_target(), ls.step_target()));
}

TEST(Transport, RejectsNonMorphism) {
  LocalStrategy ls = fixtures::four_element_strategy1();
  InternalGraph o = opposite(ls.graph);
  EXPECT_THROW(transport_strategy(ls, o, identity(ls.graph.edges())), Error);
}
