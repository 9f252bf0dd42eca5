#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "intrew/confluence.hpp"
#include "oracles.hpp"

using namespace intrew;
using fixtures::vec;

namespace {

SetRelation random_relation(std::mt19937_64& rng, std::size_t max_elements, int attempts) {
  std::size_t n = 1 + rng() % max_elements;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) labels.push_back("e" + std::to_string(x));
  SetRelation rel{CarrierObject::set(labels), {}};
  for (int k = 0; k < attempts; ++k) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a > b) rel.rules.push_back({"r" + std::to_string(k), a, b});
  }
  return rel;
}

AlgebraicRelation random_algebraic(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) labels.push_back("b" + std::to_string(x));
  CarrierObject basis = CarrierObject::vect(labels);
  std::vector<AlgebraicRule> rules;
  for (std::size_t x = 1; x < n; ++x) {
    std::size_t count = rng() % 3;
    for (std::size_t c = 0; c < count; ++c) {
      Vector rhs = zero_vector(n);
      for (std::size_t y = 0; y < x; ++y)
        if (rng() % 2) rhs[y] = Rational(static_cast<long long>(rng() % 5) - 2);
      rules.push_back({"r" + std::to_string(rules.size()), x, rhs});
    }
  }
  return AlgebraicRelation::make(basis, rules);
}

std::size_t nf_dimension_by_rank(const AlgebraicRelation& ar) {
  std::vector<Vector> rows;
  for (const auto& r : ar.rules) rows.push_back(unit_vector(ar.basis.size(), r.lhs) - r.rhs);
  return ar.basis.size() - oracles::rank(rows);
}

}  // namespace

TEST(LcSearch, DiamondConversion) {
  LocalStrategy ls = strategy_from_set_relation(fixtures::diamond());
  ASSERT_EQ(format_element(ls.graph.base(), ls.step_target()(Element::point(0))), "b");
  LcSearch res = search_lc_structure_set(ls);
  ASSERT_TRUE(res.lc);
  // Rules in order: a->b, a->c, b->d, c->d.
  const Path& p = res.lc->conv[1];
  EXPECT_EQ(p.steps, (std::vector<PathStep>{{2, Direction::Forward}, {3, Direction::Backward}}));
  EXPECT_TRUE(res.lc->conv[0].steps.empty());
  EXPECT_TRUE(res.lc->conv[2].steps.empty());
  EXPECT_TRUE(verify_lc_structure(*res.lc).passed());
}

TEST(LcSearch, SingleRuleHasTrivialConversions) {
  SetRelation rel = SetRelation::from_pairs(CarrierObject::set({"a", "b"}), {{"a", "b"}});
  LcSearch res = search_lc_structure_set(strategy_from_set_relation(rel));
  ASSERT_TRUE(res.lc);
  for (const auto& p : res.lc->conv) EXPECT_LE(path_length(p), 1u);
}

TEST(LcSearch, FourElementGraphExhausted) {
  LcSearch res = search_lc_structure_set(fixtures::four_element_strategy1());
  EXPECT_FALSE(res.lc);
  ASSERT_TRUE(res.blocked);
  EXPECT_TRUE(res.witness == "f1" || res.witness == "f2");
  EXPECT_FALSE(search_lc_structure_set(fixtures::four_element_strategy2()).lc);
}

TEST(LcSearch, RejectsVectGraphs) {
  EXPECT_THROW(search_lc_structure_set(strategy_from_algebraic_relation(fixtures::x2_plus_1(3))), Error);
}

TEST(LcSearch, DepthCapBlocks) {
  LocalStrategy ls = strategy_from_set_relation(fixtures::diamond());
  EXPECT_FALSE(search_lc_structure_set(ls, 1).lc);
  EXPECT_TRUE(search_lc_structure_set(ls, 2).lc);
}

TEST(LcStructure, StepAtOrAboveLevelFails) {
  LocalStrategy ls = strategy_from_set_relation(fixtures::diamond());
  LcStructure lc = *search_lc_structure_set(ls).lc;
  // Route a->c through a->b backwards and a->c forwards: same ends, level too high.
  lc.conv[1].steps = {{0, Direction::Backward}, {1, Direction::Forward}};
  Report rep = verify_lc_structure(lc);
  ASSERT_NE(rep.find("lower-steps"), nullptr);
  EXPECT_FALSE(rep.find("lower-steps")->passed);
  EXPECT_EQ(rep.find("lower-steps")->witness, "a->c");
  EXPECT_TRUE(rep.find("LC-eq-1")->passed);
  EXPECT_TRUE(rep.find("LC-eq-2")->passed);
  try {
    newman(lc);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::InvalidLc);
  }
}

TEST(LcStructure, WrongEndpointsFail) {
  LcStructure lc = *search_lc_structure_set(strategy_from_set_relation(fixtures::diamond())).lc;
  lc.conv[1] = unit_path(lc.base.graph, Element::point(1));
  Report rep = verify_lc_structure(lc);
  EXPECT_TRUE(rep.find("LC-eq-1")->passed);
  EXPECT_FALSE(rep.find("LC-eq-2")->passed);
}

TEST(LcStructure, EdgeAtMinimalLevelFails) {
  LcStructure lc = *search_lc_structure_set(strategy_from_set_relation(fixtures::diamond())).lc;
  std::vector<std::size_t> level = lc.level;
  level[2] = 0;
  LcStructure bad = make_lc_structure(lc.base, level, lc.conv);
  EXPECT_FALSE(verify_lc_structure(bad).find("min-empty")->passed);
}

TEST(LcStructure, PolynomialSystem) {
  AlgebraicRelation ar = fixtures::x2_plus_1(5);
  LcSearch res = construct_lc_structure_linear(ar);
  ASSERT_TRUE(res.lc);
  Report rep = verify_lc_structure(*res.lc);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.witness;
  for (const auto& p : res.lc->conv) EXPECT_LE(path_length(p), 1u);
}

TEST(LcStructure, LinearStepAtTooHighLevelFails) {
  AlgebraicRelation ar = fixtures::x2_plus_1(4);
  LcStructure lc = *construct_lc_structure_linear(ar).lc;
  // conv of r2 (x^2 -> -1) padded with a forward-and-back r2 step.
  const InternalGraph& g = lc.base.graph;
  Path step = embed_step(g, g.edges().generator(0), Direction::Forward);
  Path there_and_back = compose_paths(g, invert_path(g, step), step);
  lc.conv[0] = compose_paths(g, lc.conv[0], there_and_back);
  Report rep = verify_lc_structure(lc);
  EXPECT_TRUE(rep.find("LC-eq-2")->passed);
  EXPECT_FALSE(rep.find("lower-steps")->passed);
  EXPECT_EQ(rep.find("lower-steps")->witness, "r2");
}

TEST(LcStructure, LinearBlockedWhenPeakNotJoinable) {
  CarrierObject b = CarrierObject::vect({"y", "z", "x"});
  AlgebraicRelation ar = AlgebraicRelation::make(b, {{"xy", 2, vec(b, "y")}, {"xz", 2, vec(b, "z")}});
  LcSearch res = construct_lc_structure_linear(ar);
  EXPECT_FALSE(res.lc);
  EXPECT_EQ(res.witness, "xz");
}

TEST(Newman, PolynomialSystem) {
  NewmanCertificate cert = newman(*construct_lc_structure_linear(fixtures::x2_plus_1(4)).lc);
  EXPECT_TRUE(cert.split.holds());
  EXPECT_EQ(cert.split.quotient_size, 2u);
  EXPECT_EQ(cert.split.min_size, 2u);
}

TEST(Newman, Diamond) {
  NewmanCertificate cert = newman(*search_lc_structure_set(strategy_from_set_relation(fixtures::diamond())).lc);
  EXPECT_TRUE(cert.split.holds());
  EXPECT_EQ(cert.split.min_size, 1u);
  EXPECT_EQ(oracles::components(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}), 1u);
}

TEST(Newman, SingleRule) {
  SetRelation rel = SetRelation::from_pairs(CarrierObject::set({"a", "b"}), {{"a", "b"}});
  NewmanCertificate cert = newman(*search_lc_structure_set(strategy_from_set_relation(rel)).lc);
  EXPECT_TRUE(cert.split.holds());
  EXPECT_EQ(cert.split.quotient_size, 1u);
}

TEST(Newman, LocalConfluenceImpliesSearchAndCertificate) {
  std::mt19937_64 rng(101);
  int confluent = 0;
  for (int t = 0; t < 300; ++t) {
    SetRelation rel = random_relation(rng, 8, 12);
    Verdicts v = sc_suite(rel);
    LcSearch res = search_lc_structure_set(strategy_from_set_relation(rel));
    EXPECT_EQ(v.value("SC1"), res.lc.has_value());
    if (!res.lc) continue;
    ++confluent;
    for (const auto& c : verify_lc_structure(*res.lc).checks) EXPECT_TRUE(c.passed) << c.name;
    NewmanCertificate cert = newman(*res.lc);
    EXPECT_TRUE(cert.split.holds());
    EXPECT_TRUE(v.value("SC2"));
  }
  EXPECT_GT(confluent, 20);
}

TEST(Newman, LinearCertificateMatchesRank) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 100; ++t) {
    AlgebraicRelation ar = random_algebraic(rng, 1 + rng() % 5);
    LcSearch res = construct_lc_structure_linear(ar);
    Verdicts v = ac_suite(ar);
    EXPECT_EQ(res.lc.has_value(), v.value("AC1"));
    if (!res.lc) continue;
    NewmanCertificate cert = newman(*res.lc);
    EXPECT_EQ(cert.split.min_size, nf_dimension_by_rank(ar));
    EXPECT_EQ(cert.split.min_size, nf_generators(ar).size());
  }
}

TEST(ScSuite, Diamond) {
  Verdicts v = sc_suite(fixtures::diamond());
  EXPECT_TRUE(v.agree());
  EXPECT_TRUE(v.value("SC1"));
  EXPECT_TRUE(v.value("SC4"));
}

TEST(ScSuite, Peak) {
  Verdicts v = sc_suite(fixtures::peak());
  EXPECT_TRUE(v.agree());
  EXPECT_FALSE(v.value("SC1"));
  EXPECT_EQ(v.witness, "b <- a -> c");
}

TEST(ScSuite, RandomAgree) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 200; ++t) {
    SetRelation rel = random_relation(rng, 8, 12);
    Verdicts v = sc_suite(rel);
    EXPECT_TRUE(v.agree());
    bool unique = true;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& r : rel.rules) pairs.emplace_back(r.source, r.target);
    for (std::size_t x = 0; x < rel.elements.size(); ++x)
      unique = unique && oracles::reachable_normal_forms(rel.elements.size(), pairs, x).size() == 1;
    EXPECT_EQ(v.value("SC2"), unique);
  }
}

TEST(ScSuite, RejectsCycle) {
  SetRelation rel = SetRelation::from_pairs(CarrierObject::set({"a", "b"}), {{"a", "b"}, {"b", "a"}});
  EXPECT_THROW(sc_suite(rel), Error);
}

TEST(AcSuite, PolynomialSystem) {
  AlgebraicRelation ar = fixtures::x2_plus_1(4);
  Verdicts v = ac_suite(ar);
  EXPECT_TRUE(v.agree());
  EXPECT_TRUE(v.value("AC1"));
  EXPECT_TRUE(v.value("AC3"));
  EXPECT_EQ(nf_generators(ar), (std::vector<std::size_t>{0, 1}));
}

TEST(AcSuite, NonJoinablePeak) {
  CarrierObject b = CarrierObject::vect({"y", "z", "x"});
  AlgebraicRelation ar = AlgebraicRelation::make(b, {{"xy", 2, vec(b, "y")}, {"xz", 2, vec(b, "z")}});
  Verdicts v = ac_suite(ar);
  EXPECT_TRUE(v.agree());
  EXPECT_FALSE(v.value("AC1"));
  EXPECT_EQ(nf_dimension_by_rank(ar), 1u);
}

TEST(AcSuite, NoRules) {
  AlgebraicRelation ar = AlgebraicRelation::make(CarrierObject::vect({"p", "q"}), {});
  Verdicts v = ac_suite(ar);
  EXPECT_TRUE(v.agree());
  EXPECT_TRUE(v.value("AC3"));
  EXPECT_EQ(nf_subspace(ar).object.size(), 2u);
}

TEST(AcSuite, RandomAgree) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 100; ++t) {
    AlgebraicRelation ar = random_algebraic(rng, 1 + rng() % 4);
    Verdicts v = ac_suite(ar);
    EXPECT_TRUE(v.agree()) << v.witness;
  }
}

TEST(AcSuite, ClosureBound) {
  AlgebraicRelation ar = fixtures::x2_plus_1(6);
  EXPECT_THROW(wf_closure(ar, ac_seeds(ar.basis.size()), 3), Error);
}

TEST(Bridge, DegenerateStep) {
  AlgebraicRelation ar = fixtures::x2_plus_1(3);
  Vector u = vec(ar.basis, "x^3 + x");
  EXPECT_EQ(alg_step(ar, u, 0, Rational(0), u), u);
}

TEST(Bridge, OneStepEachSide) {
  AlgebraicRelation ar = fixtures::x2_plus_1(3);
  Vector u = vec(ar.basis, "x^2 + x");
  Vector v = alg_step(ar, u, 0, Rational(1), vec(ar.basis, "x"));
  bool met = false;
  for (const auto& [su, wu] : wf_successors(ar, u)) met = met || wu == v;
  EXPECT_TRUE(met);
}

TEST(Bridge, RandomTrialsHaveNoCounterexample) {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 5; ++t) {
    AlgebraicRelation ar = random_algebraic(rng, 4);
    BridgeReport rep = bridge_lemma_check(ar, 500, rng);
    EXPECT_TRUE(rep.basis_clause);
    EXPECT_EQ(rep.counterexamples, 0u) << rep.first_counterexample;
    EXPECT_EQ(rep.trials, ar.rules.empty() ? 0u : 500u);
  }
}

TEST(Reachability, Chain) {
  auto reach = reachability(fixtures::chain());
  EXPECT_EQ(reach[0].count(), 3u);
  EXPECT_EQ(reach[2].count(), 1u);
}
