#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"
#include "clusterx/cluster_map.hpp"
#include "clusterx/root_words.hpp"
#include "clusterx/verify.hpp"

using namespace cx;

namespace {

RationalFunction P(const std::string& s) { return RationalFunction::parse(s); }

Seed pgl2_seed() { return word_seed(root_datum_preset("A1"), parse_word(root_datum_preset("A1"), "-a a")); }

}  // namespace

TEST(ClusterMap, PGL2MutationFormula) {
  const ClusterMap f = mutation_map(pgl2_seed(), "a1");
  EXPECT_EQ(f.pullback.at("a0"), P("a0/(1+1/a1)"));
  EXPECT_EQ(f.pullback.at("a1"), P("1/a1"));
  EXPECT_EQ(f.pullback.at("a2"), P("a2/(1+1/a1)"));
}

TEST(ClusterMap, UncoupledCoordinateUnchangedAndSquaredFactor) {
  Seed s({"i", "k", "u"}, {"u"});
  s.e("i", "k") = 2;
  s.e("k", "i") = -2;
  const ClusterMap f = mutation_map(s, "k");
  EXPECT_EQ(f.pullback.at("u"), RationalFunction::var("u"));
  EXPECT_EQ(f.pullback.at("i"), P("i*(1+k)^2"));
  EXPECT_EQ(f.pullback.at("k"), P("1/k"));
}

TEST(ClusterMap, ComposeWithIdentityAndInvolution) {
  const Seed s = pgl2_seed();
  const ClusterMap f = mutation_map(s, "a1");
  EXPECT_TRUE(maps_equal(compose(identity_map(s), f), f));
  EXPECT_TRUE(maps_equal(compose(f, identity_map(f.target)), f));
  EXPECT_TRUE(maps_equal(compose(f, mutation_map(f.target, "a1")), identity_map(s)));
  EXPECT_THROW(compose(f, f), SeedError);
}

TEST(ClusterMap, RankTwoPeriods) {
  Seed a2({"i", "j"}, {});
  a2.e("i", "j") = -1;
  a2.e("j", "i") = 1;
  const auto five = mutation_sequence_map(a2, alternating("i", "j", 5));
  EXPECT_FALSE(maps_equal(five, identity_map(a2)));
  const auto sigma = equals_up_to_permutation(five, identity_map(a2));
  ASSERT_TRUE(sigma.has_value());
  EXPECT_EQ(sigma->at("i"), "j");

  Seed b2({"i", "j"}, {});
  b2.e("i", "j") = -2;
  b2.e("j", "i") = 1;
  b2.d = {2, 1};
  EXPECT_TRUE(maps_equal(mutation_sequence_map(b2, alternating("i", "j", 6)), identity_map(b2)));

  Seed g2({"i", "j"}, {});
  g2.e("i", "j") = -3;
  g2.e("j", "i") = 1;
  g2.d = {3, 1};
  // Recorded mode: seven steps are not the identity in any sense, eight are exactly.
  const auto seven = mutation_sequence_map(g2, alternating("i", "j", 7));
  EXPECT_FALSE(maps_equal(seven, identity_map(g2)));
  EXPECT_FALSE(equals_up_to_permutation(seven, identity_map(g2)).has_value());
  EXPECT_TRUE(maps_equal(mutation_sequence_map(g2, alternating("i", "j", 8)), identity_map(g2)));
}

TEST(ClusterMap, PoissonChecks) {
  const Seed s = pgl2_seed();
  EXPECT_TRUE(check_poisson(identity_map(s)).ok);
  EXPECT_TRUE(check_poisson(mutation_map(s, "a1")).ok);
  ClusterMap bad = mutation_map(s, "a1");
  bad.pullback["a0"] = RationalFunction::var("a0");
  const auto r = check_poisson(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.a.empty());
}

TEST(ClusterMap, EvaluateAt) {
  const ClusterMap f = mutation_map(pgl2_seed(), "a1");
  const auto img = evaluate_at(f, {{"a0", Scalar(1)}, {"a1", Scalar(1)}, {"a2", Scalar(1)}});
  EXPECT_EQ(img.at("a0"), Scalar(1, 2));
  EXPECT_EQ(img.at("a1"), Scalar(1));
  EXPECT_EQ(img.at("a2"), Scalar(1, 2));
  const auto same = evaluate_at(identity_map(pgl2_seed()), {{"a0", Scalar(3)}, {"a1", Scalar(5)}, {"a2", Scalar(7)}});
  EXPECT_EQ(same.at("a1"), Scalar(5));
  EXPECT_THROW(evaluate_at(f, {{"a0", Scalar(1)}, {"a1", Scalar(-1)}, {"a2", Scalar(1)}}), ArithmeticError);
}

TEST(ClusterMap, JsonDump) {
  const auto j = map_to_json(mutation_map(pgl2_seed(), "a1"));
  EXPECT_TRUE(j.dump().find("a1") != std::string::npos);
}

// Values from tests/oracles/derive.py: the program v0 v1 v2 v1 v0 on a rank-4 seed with d = (1, 2, 1, 2).
TEST(ClusterMapOracle, MutationSequenceMatchesIndependentImplementation) {
  Seed s({"v0", "v1", "v2", "v3"}, {"v3"});
  s.d = {1, 2, 1, 2};
  s.eps = {{0, 1, 1, 1}, {-2, 0, 2, 2}, {-1, -1, 0, 1}, {-2, -2, -2, 0}};
  ASSERT_TRUE(validate(s).empty());
  const std::vector<std::string> program{"v0", "v1", "v2", "v1", "v0"};
  const Seed fin = mutate_seed(s, program);
  const ScalarMatrix want{{0, 1, -3, 1}, {-2, 0, 4, 2}, {3, -2, 0, -6}, {-2, -2, 12, 0}};
  EXPECT_EQ(fin.eps, want);
  const auto img = evaluate_at(mutation_sequence_map(s, program),
                               {{"v0", Scalar(2)}, {"v1", Scalar(3)}, {"v2", Scalar(1, 2)}, {"v3", Scalar(5)}});
  EXPECT_EQ(img.at("v0"), Scalar("15625/728"));
  EXPECT_EQ(img.at("v1"), Scalar("89140203/1562500"));
  EXPECT_EQ(img.at("v2"), Scalar("4239872/485903246553"));
  EXPECT_EQ(img.at("v3"), Scalar("251962033849344/11920928955078125"));
}

// ---------------------------------------------------------------- properties

TEST(ClusterMapProperty, EveryMutationMapIsPoissonAndPositive) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 40; ++n) {
    const Seed s = random_seed(rng, 2 + n % 4, n % 2);
    for (auto& k : s.mutable_labels()) {
      const ClusterMap f = mutation_map(s, k);
      EXPECT_TRUE(check_poisson(f).ok) << matrix_str(s.eps) << " at " << k;
      EXPECT_TRUE(is_subtraction_free(f));
    }
  }
}

TEST(ClusterMapProperty, CompositesStaySubtractionFree) {
  // Rank 3 and three steps: with multipliers up to 3 the exponents grow fast enough that longer
  // programs on rank 4 exhaust memory.
  std::mt19937_64 rng(6);
  for (int n = 0; n < 15; ++n) {
    const Seed s = random_seed(rng, 3, 1);
    const auto m = s.mutable_labels();
    std::vector<std::string> program;
    for (int t = 0; t < 3; ++t) program.push_back(m[rng() % m.size()]);
    EXPECT_TRUE(is_subtraction_free(mutation_sequence_map(s, program)));
  }
}

TEST(ClusterMapProperty, RankTwoRelationsInAmbientSeeds) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 3; ++t) {
    const Seed c0 = ambient_rank2_seed(rng, 0);
    EXPECT_TRUE(maps_equal(mutation_sequence_map(c0, {"i", "j", "j", "i"}), identity_map(c0)));
    EXPECT_TRUE(maps_equal(mutation_sequence_map(c0, {"i", "j"}), mutation_sequence_map(c0, {"j", "i"})));
    const Seed c1 = ambient_rank2_seed(rng, 1);
    EXPECT_TRUE(equals_up_to_permutation(mutation_sequence_map(c1, alternating("i", "j", 5)), identity_map(c1)));
    const Seed c2 = ambient_rank2_seed(rng, 2);
    EXPECT_TRUE(maps_equal(mutation_sequence_map(c2, alternating("i", "j", 6)), identity_map(c2)));
    const Seed c3 = ambient_rank2_seed(rng, 3);
    EXPECT_TRUE(maps_equal(mutation_sequence_map(c3, alternating("i", "j", 8)), identity_map(c3)));
  }
}
