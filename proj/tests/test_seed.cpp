#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "printers.hpp"
#include "clusterx/explorer.hpp"
#include "clusterx/root_words.hpp"
#include "clusterx/seed.hpp"
#include "clusterx/verify.hpp"

using namespace cx;

namespace {

// The three-vertex PGL2 seed J(-a a): frozen ends, d = 1.
Seed pgl2_seed() { return word_seed(root_datum_preset("A1"), parse_word(root_datum_preset("A1"), "-a a")); }

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Seed, PGL2SeedIsValid) {
  const Seed s = pgl2_seed();
  EXPECT_TRUE(validate(s).empty());
  EXPECT_EQ(s.vertices, (std::vector<std::string>{"a0", "a1", "a2"}));
  EXPECT_EQ(s.frozen_labels(), (std::vector<std::string>{"a0", "a2"}));
}

TEST(Seed, ZeroMultiplierIsReported) {
  Seed s = pgl2_seed();
  s.d[0] = 0;
  EXPECT_TRUE(contains(validate(s), "d must be positive"));
}

TEST(Seed, HalfIntegerOffFrozenBlockIsReported) {
  Seed s = pgl2_seed();
  s.e("a0", "a1") = Scalar(1, 2);
  s.e("a1", "a0") = Scalar(-1, 2);
  EXPECT_TRUE(contains(validate(s), "integrality off frozen block"));
}

TEST(Seed, MutationAtMiddleVertexNegatesMatrix) {
  const Seed s = pgl2_seed();
  const Seed m = mutate_seed(s, "a1");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m.eps[i][j], -s.eps[i][j]);
  EXPECT_EQ(mutate_seed(m, "a1"), s);
}

TEST(Seed, RankTwoSignFlip) {
  Seed s({"1", "2"}, {});
  s.e("1", "2") = 1;
  s.e("2", "1") = -1;
  EXPECT_EQ(mutate_seed(s, "1").e("1", "2"), Scalar(-1));
}

TEST(Seed, MutationRule) {
  // eps_ik >= 0 adds eps_ik max(0, eps_kj); eps_ik < 0 adds eps_ik max(0, -eps_kj).
  Seed s({"i", "k", "j"}, {});
  s.e("i", "k") = 2;
  s.e("k", "i") = -2;
  s.e("k", "j") = 1;
  s.e("j", "k") = -1;
  const Seed m = mutate_seed(s, "k");
  EXPECT_EQ(m.e("i", "j"), Scalar(2));
  EXPECT_EQ(m.e("j", "i"), Scalar(-2));
  EXPECT_EQ(m.e("i", "k"), Scalar(-2));
}

TEST(Seed, MutationAtFrozenVertexThrows) { EXPECT_THROW(mutate_seed(pgl2_seed(), "a0"), SeedError); }

TEST(Seed, Symmetries) {
  const Seed s = pgl2_seed();
  EXPECT_EQ(apply_symmetry(s, {{"a0", "a0"}, {"a1", "a1"}, {"a2", "a2"}}), s);
  Seed r({"i", "j"}, {});
  r.e("i", "j") = 1;
  r.e("j", "i") = -1;
  const Seed t = apply_symmetry(r, {{"i", "j"}, {"j", "i"}});
  EXPECT_EQ(t.e("i", "j"), Scalar(-1));
  EXPECT_THROW(apply_symmetry(r, {{"i", "j"}, {"j", "j"}}), SeedError);
}

TEST(Seed, SwapOfSymmetricVerticesGivesSameCanonicalForm) {
  // u and w have equal d and equal rows.
  Seed s({"k", "u", "w"}, {});
  s.e("k", "u") = 1;
  s.e("u", "k") = -1;
  s.e("k", "w") = 1;
  s.e("w", "k") = -1;
  const Seed t = apply_symmetry(s, {{"k", "k"}, {"u", "w"}, {"w", "u"}});
  EXPECT_EQ(canonical_form(s).key, canonical_form(t).key);
}

TEST(Seed, IsomorphismSearch) {
  const Seed s = pgl2_seed();
  const auto id = find_isomorphism(s, s);
  ASSERT_TRUE(id.has_value());
  // Brute force over all 3! bijections: the mutated seed is not isomorphic to the original.
  EXPECT_FALSE(find_isomorphism(s, mutate_seed(s, "a1")).has_value());
  std::vector<std::string> perm = s.vertices;
  int iso = 0;
  const Seed m = mutate_seed(s, "a1");
  do {
    VertexBijection b;
    for (std::size_t i = 0; i < 3; ++i) b[s.vertices[i]] = perm[i];
    if (apply_symmetry(s, b) == m) ++iso;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(iso, 0);
}

TEST(Seed, G2SeedNeighboursAtMultiplierOneVertices) {
  const Seed s = g2_triple_flag_seed();
  std::vector<std::string> light;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.d[i] == 1) light.push_back(s.vertices[i]);
  ASSERT_EQ(light.size(), 2u);
  const Seed m1 = mutate_seed(s, light[0]), m2 = mutate_seed(s, light[1]);
  EXPECT_EQ(find_isomorphism(m1, m2).has_value(), canonical_form(m1).key == canonical_form(m2).key);
}

TEST(Seed, SevenClassesHaveDistinctCanonicalForms) {
  const ExchangeGraph g = explore(g2_triple_flag_seed());
  ASSERT_TRUE(g.finite);
  std::set<std::string> keys;
  for (auto& n : g.nodes) keys.insert(canonical_form(n).key);
  EXPECT_EQ(keys.size(), 7u);
}

TEST(Seed, PoissonTensor) {
  Seed s({"i", "j"}, {});
  s.e("i", "j") = 1;
  s.e("j", "i") = -2;
  s.d = {2, 1};
  const ScalarMatrix t = poisson_tensor(s);
  EXPECT_EQ(t[0][1], Scalar(1));
  EXPECT_EQ(t[1][0], Scalar(-4));  // eps_ji d_i
  Seed u({"i", "j"}, {});
  u.e("i", "j") = 3;
  u.e("j", "i") = -3;
  EXPECT_EQ(poisson_tensor(u), u.eps);
}

TEST(Seed, JsonRoundTripAndDot) {
  Seed s({"a", "b", "c"}, {"b", "c"});
  s.e("b", "c") = Scalar(1, 2);
  s.e("c", "b") = Scalar(-1, 2);
  s.e("a", "b") = 1;
  s.e("b", "a") = -1;
  EXPECT_EQ(seed_from_json(seed_to_json(s)), s);
  EXPECT_EQ(seed_from_json(nlohmann::json::parse(seed_to_json(s).dump())), s);
  const std::string dot = seed_to_dot(s);
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
  EXPECT_NE(dot.find("\"a\" -> \"b\""), std::string::npos);
}

// ---------------------------------------------------------------- properties

TEST(SeedProperty, RandomSeedsInvolutionSkewAndIntegrality) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 100; ++n) {
    const std::size_t size = 2 + n % 5;
    const Seed s = random_seed(rng, size, n % size);
    ASSERT_TRUE(validate(s).empty()) << matrix_str(s.eps);
    for (auto& k : s.mutable_labels()) {
      const Seed m = mutate_seed(s, k);
      EXPECT_TRUE(validate(m).empty());  // skew-symmetrizability and integrality survive
      EXPECT_EQ(mutate_seed(m, k), s);
    }
  }
}

TEST(SeedProperty, SymmetryPreservesValidity) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 50; ++n) {
    const Seed s = random_seed(rng, 5, 2);
    std::vector<std::string> perm = s.vertices;
    std::shuffle(perm.begin(), perm.end(), rng);
    VertexBijection b;
    for (std::size_t i = 0; i < perm.size(); ++i) b[s.vertices[i]] = perm[i];
    EXPECT_TRUE(validate(apply_symmetry(s, b)).empty());
  }
}

TEST(SeedProperty, DisconnectedVerticesCommute) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 30; ++n) {
    Seed s = random_seed(rng, 5, 1);
    s.e("v0", "v1") = 0;
    s.e("v1", "v0") = 0;
    using P = std::vector<std::string>;
    EXPECT_EQ(mutate_seed(s, P{"v0", "v1"}), mutate_seed(s, P{"v1", "v0"}));
  }
}

TEST(SeedProperty, IsomorphismIsSymmetric) {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 40; ++n) {
    const Seed s = random_seed(rng, 5, 2);
    std::vector<std::string> perm = s.vertices;
    std::shuffle(perm.begin(), perm.end(), rng);
    VertexBijection b;
    for (std::size_t i = 0; i < perm.size(); ++i) b[s.vertices[i]] = perm[i];
    const Seed t = apply_symmetry(s, b);
    const auto f = find_isomorphism(s, t);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(apply_symmetry(s, *f), t);
    const auto g = find_isomorphism(t, s);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(apply_symmetry(t, invert(*f)), s);
    EXPECT_EQ(canonical_form(s).key, canonical_form(t).key);
  }
}
