#include <gtest/gtest.h>

#include "printers.hpp"
#include "clusterx/explorer.hpp"

using namespace cx;

namespace {

Seed a2_seed() {
  Seed s({"i", "j"}, {});
  s.e("i", "j") = 1;
  s.e("j", "i") = -1;
  return s;
}

Seed markov_seed() {
  Seed s({"u", "v", "w"}, {});
  s.eps = {{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};
  return s;
}

const ModularComplex& g2_complex() {
  static const ModularComplex c = build_modular_complex(explore(g2_triple_flag_seed()));
  return c;
}

}  // namespace

TEST(Explore, A2IsFiniteWithFiveClusters) {
  // Up to isomorphism the pentagon has a single seed.
  const ExchangeGraph g = explore(a2_seed());
  EXPECT_TRUE(g.finite);
  EXPECT_EQ(g.verdict, "finite: 1 classes");
}

TEST(Explore, MarkovQuiverIsItsOwnClass) {
  // Mutation keeps the Markov quiver unchanged, so it is finite modulo isomorphism.
  const ExchangeGraph g = explore(markov_seed());
  EXPECT_TRUE(g.finite);
  ExploreOptions o;
  o.max_entry = 1;
  EXPECT_EQ(explore(markov_seed(), o).verdict.rfind("aborted: |eps(", 0), 0u);
}

TEST(Explore, GrowingEntriesAbort) {
  Seed s({"u", "v", "w"}, {});
  s.eps = {{0, 3, -1}, {-3, 0, 2}, {1, -2, 0}};
  ExploreOptions o;
  o.max_nodes = 20;
  const ExchangeGraph g = explore(s, o);
  EXPECT_FALSE(g.finite);
  EXPECT_EQ(g.verdict.rfind("aborted", 0), 0u);
}

TEST(Explore, G2TripleFlag) {
  const ExchangeGraph g = explore(g2_triple_flag_seed());
  EXPECT_EQ(g.verdict, "finite: 7 classes");
  EXPECT_EQ(exchange_graph_to_json(g)["classes"].size(), 7u);
  // Deterministic discovery order.
  EXPECT_EQ(explore(g2_triple_flag_seed()).keys, g.keys);
}

TEST(ModularComplexG2, FaceCountsAndEuler) {
  const ModularComplex& c = g2_complex();
  EXPECT_EQ(c.face_counts, (std::vector<std::size_t>{4, 11, 14, 7}));  // by dimension, 0 to 3
  EXPECT_EQ(c.euler_characteristic(), 0);
  int finite = 0, infinite = 0;
  for (auto& r : c.ridges) (r.type == FaceType::Finite ? finite : infinite)++;
  EXPECT_EQ(finite, 7);
  EXPECT_EQ(infinite, 4);
}

TEST(ModularComplexG2, PresentationSimplifiesToBraidGroup) {
  const ModularComplex& c = g2_complex();
  for (auto strat : {TreeStrategy::BFS, TreeStrategy::DFS}) {
    const Presentation p = fundamental_group(c, strat);
    EXPECT_EQ(p.generators.size(), 8u);
    EXPECT_EQ(p.relators.size(), 7u);
    const Presentation s = tietze_simplify(p);
    EXPECT_EQ(s.generators.size(), 2u);
    ASSERT_EQ(s.relators.size(), 1u);
    const BraidMatch m = match_g2_braid_relator(s);
    EXPECT_TRUE(m.ok) << m.detail;
    EXPECT_TRUE(is_free_basis(m.a, m.b));
  }
}

TEST(ModularComplexG2, ReferenceRelators) {
  const ModularComplex& c = g2_complex();
  const auto m = match_reference_seeds(c);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->lambda.size(), 14u);
  const Presentation p = fundamental_group(c, reference_tree(*m));
  const auto got = relators_in_lambdas(p, c, *m);
  const auto want = reference_relators();
  ASSERT_EQ(got.size(), want.size());
}

TEST(ModularComplexG2, BraidActionRecordedVerdict) {
  const ModularComplex& c = g2_complex();
  const auto m = match_reference_seeds(c);
  ASSERT_TRUE(m.has_value());
  const BraidActionReport r = braid_action_check(c, *m, false);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.relabeled_ok);
}

TEST(ModularComplex, FiniteRidgeMonodromiesHaveTheirPeriod) {
  const ModularComplex& c = g2_complex();
  for (std::size_t i = 0; i < c.ridges.size(); ++i) {
    const RidgeClass& r = c.ridges[i];
    if (r.type != FaceType::Finite) continue;
    ASSERT_GT(r.period, 0);
    EXPECT_EQ(monodromy_period(c, r.cycle, 12), r.period);
  }
}

TEST(Presentations, WordOperations) {
  EXPECT_EQ(free_reduce({1, 2, -2, -1, 3}), (GroupWord{3}));
  EXPECT_EQ(cyclic_reduce({-1, 2, 3, 1}), (GroupWord{2, 3}));
  EXPECT_EQ(inverse({1, -2}), (GroupWord{2, -1}));
  EXPECT_TRUE(cyclically_equal({1, 2, 3}, {3, 1, 2}));
  EXPECT_TRUE(cyclically_equal({1, 2}, {-2, -1}));
  EXPECT_FALSE(cyclically_equal({1, 2}, {-2, -1}, false));
  EXPECT_TRUE(is_free_basis({1}, {2, 1}));
  EXPECT_FALSE(is_free_basis({1, 1}, {2}));
}

TEST(Presentations, TrivialRelatorKillsGenerator) {
  Presentation p{{"g"}, {{1}}};
  const Presentation s = tietze_simplify(p);
  EXPECT_TRUE(s.generators.empty());
}

TEST(Presentations, BraidRelatorIsRecognized) {
  // bababa (ababab)^-1 in generators a = 1, b = 2.
  Presentation p{{"a", "b"}, {{2, 1, 2, 1, 2, 1, -2, -1, -2, -1, -2, -1}}};
  EXPECT_TRUE(match_g2_braid_relator(p).ok);
  Presentation q{{"a", "b"}, {{2, 1, 2, 1, -2, -1, -2, -1}}};
  EXPECT_FALSE(match_g2_braid_relator(q).ok);
}
