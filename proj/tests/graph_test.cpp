#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "intrew/graph.hpp"
#include "oracles.hpp"

using namespace intrew;

namespace {

InternalGraph set_graph(const CarrierObject& e, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::string> labels;
  std::vector<std::size_t> s, t;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    labels.push_back("r" + std::to_string(k));
    s.push_back(edges[k].first);
    t.push_back(edges[k].second);
  }
  CarrierObject r = CarrierObject::set(labels);
  return InternalGraph(CarrierMap::set_map(r, e, s), CarrierMap::set_map(r, e, t));
}

Path random_path(std::mt19937_64& rng, const InternalGraph& g, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> pick_x(0, g.base().size() - 1);
  Path p = unit_path(g, Element::point(pick_x(rng)));
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::size_t n = len(rng);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<PathStep> options;
    Element at = target(g, p);
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      for (Direction d : {Direction::Forward, Direction::Backward})
        if (step_source(g, PathStep{e, d}) == at) options.push_back({e, d});
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    p.steps.push_back(options[pick(rng)]);
  }
  return p;
}

}  // namespace

TEST(Graph, IdentityGraph) {
  CarrierObject e = CarrierObject::set({"a"});
  InternalGraph g = identity_graph(e);
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(g.src().table()[0], 0u);
  EXPECT_EQ(g.tgt().table()[0], 0u);
  InternalGraph v = identity_graph(CarrierObject::vect({"u", "v"}));
  EXPECT_TRUE(equal_maps(v.src(), v.tgt()));
  EXPECT_TRUE(is_isomorphism(quotient_by_graph(v).q));
}

TEST(Graph, ProductOfComposablePair) {
  CarrierObject e = CarrierObject::set({"a", "b", "c"});
  InternalGraph r = set_graph(e, {{0, 1}});
  InternalGraph s = set_graph(e, {{1, 2}});
  GraphProduct p = graph_product(r, s);
  ASSERT_EQ(p.graph.edges().size(), 1u);
  EXPECT_EQ(p.graph.src().table()[0], 0u);
  EXPECT_EQ(p.graph.tgt().table()[0], 2u);
}

TEST(Graph, ProductWithIdentityIsR) {
  CarrierObject e = CarrierObject::set({"a", "b", "c"});
  InternalGraph r = set_graph(e, {{0, 1}, {1, 2}, {0, 2}});
  GraphProduct p = graph_product(r, identity_graph(e));
  EXPECT_TRUE(is_isomorphism(p.pi1));
  EXPECT_TRUE(equal_maps(p.graph.src(), compose(r.src(), p.pi1)));
  EXPECT_TRUE(equal_maps(p.graph.tgt(), compose(r.tgt(), p.pi1)));
}

TEST(Graph, ProductRejectsDifferentBases) {
  InternalGraph r = identity_graph(CarrierObject::set({"a"}));
  InternalGraph s = identity_graph(CarrierObject::set({"b"}));
  EXPECT_THROW(graph_product(r, s), Error);
}

TEST(Graph, VectProductDimensionByRankNullity) {
  AlgebraicRelation ar = fixtures::x2_plus_1(2);
  InternalGraph r = ar.graph();
  GraphProduct p = graph_product(r, r);
  Matrix st = Matrix::hstack(r.tgt().matrix(), Rational(-1) * r.src().matrix());
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < st.rows(); ++i) rows.push_back(st.row(i));
  EXPECT_EQ(p.graph.edges().size(), st.cols() - oracles::rank(rows));
}

TEST(Graph, SumSizes) {
  CarrierObject e = CarrierObject::set({"a", "b"});
  InternalGraph r = set_graph(e, {{0, 1}});
  InternalGraph s = set_graph(e, {{1, 0}, {1, 1}});
  EXPECT_EQ(graph_sum(r, s).graph.edges().size(), 3u);
  GraphSum re = graph_sum(r, empty_graph(e));
  EXPECT_TRUE(is_isomorphism(re.inj1));
}

TEST(Graph, ReflexiveClosureUnit) {
  InternalGraph r = fixtures::four_element_graph();
  GraphSum re = reflexive_closure(r);
  EXPECT_TRUE(equal_maps(compose(re.graph.src(), re.inj2), identity(r.base())));
  EXPECT_TRUE(equal_maps(compose(re.graph.tgt(), re.inj2), identity(r.base())));
}

TEST(Graph, Opposite) {
  CarrierObject e = CarrierObject::set({"a", "b"});
  InternalGraph r = set_graph(e, {{0, 1}});
  InternalGraph o = opposite(r);
  EXPECT_EQ(o.src().table()[0], 1u);
  EXPECT_EQ(o.tgt().table()[0], 0u);
  EXPECT_EQ(opposite(o), r);
  EXPECT_EQ(o.edges(), r.edges());
}

TEST(Graph, PathUnitAndComposition) {
  CarrierObject e = CarrierObject::set({"a", "b", "c"});
  InternalGraph r = set_graph(e, {{0, 1}, {1, 2}});
  Path ab = embed_step(r, Element::point(0), Direction::Forward);
  Path bc = embed_step(r, Element::point(1), Direction::Forward);
  EXPECT_TRUE(paths_equal(compose_paths(r, unit_path(r, Element::point(0)), ab), ab));
  Path ac = compose_paths(r, ab, bc);
  EXPECT_EQ(path_length(ac), 2u);
  EXPECT_EQ(source(ac), Element::point(0));
  EXPECT_EQ(target(r, ac), Element::point(2));
  EXPECT_THROW(compose_paths(r, bc, ab), Error);
}

TEST(Graph, EmbedStep) {
  CarrierObject e = CarrierObject::set({"a", "b"});
  InternalGraph r = set_graph(e, {{0, 1}});
  Path f = embed_step(r, Element::point(0), Direction::Forward);
  EXPECT_EQ(source(f), Element::point(0));
  EXPECT_EQ(target(r, f), Element::point(1));
  Path b = embed_step(r, Element::point(0), Direction::Backward);
  EXPECT_EQ(source(b), Element::point(1));
}

TEST(Graph, EmbedLinearRule) {
  AlgebraicRelation ar = fixtures::x2_plus_1(2);
  InternalGraph g = ar.graph();
  Path p = embed_step(g, g.edges().generator(0), Direction::Forward);
  EXPECT_EQ(format_element(g.base(), source(p)), "x^2");
  EXPECT_EQ(format_element(g.base(), target(g, p)), "-1");
}

TEST(Graph, InvertIsInvolutiveAndEndpointsFold) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  CarrierObject e = CarrierObject::set({"a", "b", "c", "d"});
  for (int t = 0; t < 100; ++t) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (int k = 0; k < 4; ++k) edges.emplace_back(pick(rng), pick(rng));
    InternalGraph g = set_graph(e, edges);
    Path p = random_path(rng, g, 4);
    ASSERT_TRUE(is_valid_path(g, p));
    EXPECT_TRUE(paths_equal(invert_path(g, invert_path(g, p)), p));
    EXPECT_EQ(source(invert_path(g, p)), target(g, p));
    Path q = random_path(rng, g, 4);
    if (!(target(g, p) == source(q))) continue;
    Path pq = compose_paths(g, p, q);
    EXPECT_TRUE(is_valid_path(g, pq));
    Path r = unit_path(g, target(g, pq));
    EXPECT_TRUE(paths_equal(compose_paths(g, compose_paths(g, p, q), r), compose_paths(g, p, compose_paths(g, q, r))));
  }
}

TEST(Graph, LinearPathsAddAndScale) {
  AlgebraicRelation ar = fixtures::x2_plus_1(3);
  InternalGraph g = ar.graph();
  Path p2 = embed_step(g, g.edges().generator(0), Direction::Forward);  // x^2 -> -1
  Path p3 = embed_step(g, g.edges().generator(1), Direction::Forward);  // x^3 -> -x
  Path sum = add_paths(g, scale_path(2, p2), p3);
  EXPECT_TRUE(is_valid_path(g, sum));
  EXPECT_EQ(format_element(g.base(), source(sum)), "x^3 + 2*x^2");
  EXPECT_EQ(format_element(g.base(), target(g, sum)), "-x - 2");
  Path longer = compose_paths(g, p3, unit_path(g, target(g, p3)));
  Path mixed = add_paths(g, compose_paths(g, p2, unit_path(g, target(g, p2))), longer);
  EXPECT_TRUE(is_valid_path(g, mixed));
}

TEST(Graph, UniversalCheckReflexive) {
  CarrierObject e = CarrierObject::set({"a", "b", "c"});
  InternalGraph r = set_graph(e, {{0, 1}, {1, 2}});
  // S = R + loops, a reflexive relation graph under R.
  InternalGraph s = set_graph(e, {{0, 1}, {1, 2}, {0, 0}, {1, 1}, {2, 2}});
  CarrierMap f = CarrierMap::set_map(r.edges(), s.edges(), {0, 1});
  auto res = closure_universal_check(r, s, relation_structure(s), f, Closure::Refl);
  EXPECT_TRUE(res.holds());
}

TEST(Graph, UniversalCheckTransitiveFoldsComposition) {
  CarrierObject e = CarrierObject::set({"a", "b", "c"});
  InternalGraph r = set_graph(e, {{0, 1}, {1, 2}});
  InternalGraph s = set_graph(e, {{0, 1}, {1, 2}, {0, 2}});
  CarrierMap f = CarrierMap::set_map(r.edges(), s.edges(), {0, 1});
  auto res = closure_universal_check(r, s, relation_structure(s), f, Closure::Trans);
  EXPECT_TRUE(res.construction_valid);
  EXPECT_EQ(res.solutions, 1u);
  EXPECT_TRUE(res.holds());
}

TEST(Graph, UniversalCheckNeedsStructure) {
  CarrierObject e = CarrierObject::set({"a", "b"});
  InternalGraph r = set_graph(e, {{0, 1}});
  InternalGraph s = set_graph(e, {{0, 1}});
  CarrierMap f = CarrierMap::set_map(r.edges(), s.edges(), {0});
  EXPECT_THROW(closure_universal_check(r, s, relation_structure(s), f, Closure::Refl), Error);
}

TEST(Graph, UniversalCheckParallelLoops) {
  // Parallel loops at a; the chosen unit pins the extension.
  CarrierObject e = CarrierObject::set({"a"});
  InternalGraph r = empty_graph(e);
  InternalGraph s = set_graph(e, {{0, 0}, {0, 0}});
  GraphStructure st;
  st.unit = std::vector<std::size_t>{1};
  CarrierMap f = initial_map(s.edges());
  auto res = closure_universal_check(r, s, st, f, Closure::Refl);
  EXPECT_TRUE(res.holds());
}

TEST(Graph, UniversalCheckBound) {
  CarrierObject e = CarrierObject::set({"a"});
  InternalGraph s = set_graph(e, {{0, 0}, {0, 0}, {0, 0}});
  UniversalCheckOptions opts;
  opts.max_target_edges = 2;
  EXPECT_THROW(closure_universal_check(empty_graph(e), s, relation_structure(s), initial_map(s.edges()), Closure::Refl, opts),
               Error);
}

TEST(Graph, QuotientFourElementSingleClass) {
  InternalGraph g = fixtures::four_element_graph();
  EXPECT_EQ(quotient_by_graph(g).object.size(), 1u);
  EXPECT_EQ(quotient_by_graph(empty_graph(g.base())).object.size(), 4u);
  AlgebraicRelation ar = fixtures::x2_plus_1(2);
  EXPECT_EQ(quotient_by_graph(ar.graph()).object.size(), 2u);
}

TEST(Graph, QuotientInvariantUnderClosures) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<std::size_t> size(1, 8);
    std::size_t n = size(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    CarrierObject e = CarrierObject::set(labels);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (int k = 0; k < 4; ++k) edges.emplace_back(pick(rng), pick(rng));
    InternalGraph r = set_graph(e, edges);
    Coequalizer q = quotient_by_graph(r);
    Coequalizer qs = quotient_by_graph(symmetric_closure(r).graph);
    Coequalizer qt = quotient_by_graph(truncated_closure(r, 3, true).graph);
    EXPECT_EQ(q.q, qs.q);
    EXPECT_EQ(q.q, qt.q);
    EXPECT_EQ(q.object.size(), oracles::components(n, edges));
  }
}
