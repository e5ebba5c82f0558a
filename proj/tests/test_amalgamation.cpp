#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"
#include "clusterx/amalgamation.hpp"
#include "clusterx/root_words.hpp"
#include "clusterx/verify.hpp"

using namespace cx;

namespace {

RationalFunction V(const std::string& s) { return RationalFunction::var(s); }

// Two rank-2 seeds glued along one frozen vertex each.
GluingData two_factor() {
  Seed a({"x", "p"}, {"p"}), b({"y", "q"}, {"q"});
  a.e("x", "p") = 1;
  a.e("p", "x") = -1;
  b.e("y", "q") = -1;
  b.e("q", "y") = 1;
  return GluingData({a, b}, {"x", "y", "g"}, {{{"x", "x"}, {"p", "g"}}, {{"y", "y"}, {"q", "g"}}});
}

}  // namespace

TEST(Amalgamation, TwoFactorTable) {
  const Seed k = amalgamate(two_factor());
  EXPECT_TRUE(validate(k).empty());
  EXPECT_EQ(k.e("x", "g"), Scalar(1));
  EXPECT_EQ(k.e("y", "g"), Scalar(-1));
  EXPECT_EQ(k.e("x", "y"), Scalar(0));  // off-factor entries vanish
  EXPECT_EQ(k.frozen_labels(), (std::vector<std::string>{"g"}));
}

TEST(Amalgamation, GluedEntriesAdd) {
  Seed a({"u", "w"}, {"u", "w"}), b({"u", "w"}, {"u", "w"});
  a.e("u", "w") = Scalar(1, 2);
  a.e("w", "u") = Scalar(-1, 2);
  b.e("u", "w") = Scalar(1, 2);
  b.e("w", "u") = Scalar(-1, 2);
  const GluingData g({a, b}, {"u", "w"}, {{{"u", "u"}, {"w", "w"}}, {{"u", "u"}, {"w", "w"}}});
  const Seed k = amalgamate(g);
  EXPECT_EQ(k.e("u", "w"), Scalar(1));
  const Seed thawed = defrost(k, {"u", "w"});
  EXPECT_TRUE(thawed.frozen_labels().empty());
}

TEST(Amalgamation, DisjointGluingIsBlockDiagonal) {
  Seed a({"x", "p"}, {}), b({"y", "q"}, {});
  a.e("x", "p") = 1;
  a.e("p", "x") = -1;
  b.e("y", "q") = 2;
  b.e("q", "y") = -2;
  const GluingData g({a, b}, {"x", "p", "y", "q"}, {{{"x", "x"}, {"p", "p"}}, {{"y", "y"}, {"q", "q"}}});
  const Seed k = amalgamate(g);
  EXPECT_EQ(k.e("x", "p"), Scalar(1));
  EXPECT_EQ(k.e("y", "q"), Scalar(2));
  EXPECT_EQ(k.e("x", "y"), Scalar(0));
  EXPECT_EQ(k.e("p", "q"), Scalar(0));
}

TEST(Amalgamation, PGL2SeedFromElementarySeeds) {
  const RootDatum A1 = root_datum_preset("A1");
  std::vector<std::string> interior;
  const GluingData g = concatenation_gluing(A1, parse_word(A1, "-a"), parse_word(A1, "a"), &interior);
  EXPECT_EQ(interior, (std::vector<std::string>{"a1"}));
  const Seed s = defrost(amalgamate(g), interior);
  EXPECT_EQ(s, word_seed_direct(A1, parse_word(A1, "-a a")));
  EXPECT_EQ(s.frozen_labels(), (std::vector<std::string>{"a0", "a2"}));
  EXPECT_EQ(defrost(s, {}), s);
}

TEST(Amalgamation, InvalidGluingsAndDefrostingThrow) {
  Seed a({"x", "p"}, {"p"}), b({"y", "q"}, {"q"});
  EXPECT_THROW(GluingData({a, b}, {"g", "p", "q"}, {{{"x", "g"}, {"p", "p"}}, {{"y", "g"}, {"q", "q"}}}), SeedError);
  b.d = {1, 2};
  EXPECT_THROW(GluingData({a, b}, {"x", "y", "g"}, {{{"x", "x"}, {"p", "g"}}, {{"y", "y"}, {"q", "g"}}}), SeedError);
  Seed h({"u", "w", "z"}, {"w", "z"});
  h.e("w", "z") = Scalar(1, 2);
  h.e("z", "w") = Scalar(-1, 2);
  EXPECT_THROW(defrost(h, {"w"}), SeedError);
  EXPECT_THROW(defrost(h, {"u"}), SeedError);
}

TEST(Amalgamation, MapMultipliesPreimages) {
  const ClusterMap m = amalgamation_map(two_factor());
  EXPECT_EQ(m.pullback.at("g"), V(product_label(0, "p")) * V(product_label(1, "q")));
  EXPECT_EQ(m.pullback.at("x"), V(product_label(0, "x")));
  EXPECT_TRUE(check_poisson(m).ok);
}

TEST(Amalgamation, SingleFactorReducesToMutation) {
  Seed a({"x", "y", "p"}, {"p"});
  a.e("x", "y") = 1;
  a.e("y", "x") = -1;
  a.e("y", "p") = 2;
  a.e("p", "y") = -2;
  const GluingData g({a}, {"x", "y", "p"}, {{{"x", "x"}, {"y", "y"}, {"p", "p"}}});
  EXPECT_TRUE(check_amalgamation_mutation_commutes(g, "x").ok);
  EXPECT_TRUE(check_amalgamation_mutation_commutes(g, "y").ok);
}

TEST(Amalgamation, JsonRoundTrip) {
  const GluingData g = two_factor();
  const GluingData h = gluing_from_json(gluing_to_json(g));
  EXPECT_EQ(amalgamate(h), amalgamate(g));
}

TEST(Amalgamation, ConcatenationTable) {
  // Coordinates below the junction come from the first factor, at it the product, above it the second.
  const RootDatum A1 = root_datum_preset("A1");
  const GluingData g = concatenation_gluing(A1, parse_word(A1, "a a"), parse_word(A1, "a"));
  const ClusterMap m = amalgamation_map(g);
  EXPECT_EQ(m.pullback.at("a0"), V(product_label(0, "a0")));
  EXPECT_EQ(m.pullback.at("a1"), V(product_label(0, "a1")));
  EXPECT_EQ(m.pullback.at("a2"), V(product_label(0, "a2")) * V(product_label(1, "a0")));
  EXPECT_EQ(m.pullback.at("a3"), V(product_label(1, "a1")));
}

// ---------------------------------------------------------------- properties

namespace {

Seed thaw_interior(const Seed& s) {
  std::vector<std::string> v;
  for (const std::string k : {"a1", "a2"})
    if (s.is_frozen(k)) v.push_back(k);
  return defrost(s, v);
}

}  // namespace

TEST(AmalgamationProperty, Associativity) {
  // Three copies of J(a) in A1: gluing (12)3 and 1(23) and all at once give the same seed.
  const RootDatum A1 = root_datum_preset("A1");
  const Word a = parse_word(A1, "a");
  const Seed left = amalgamate(concatenation_gluing(A1, parse_word(A1, "a a"), a));
  const Seed right = amalgamate(concatenation_gluing(A1, a, parse_word(A1, "a a")));
  // Frozen sets depend on which vertices were interior to a factor; the exchange matrices do not.
  EXPECT_EQ(left.eps, right.eps);
  EXPECT_EQ(thaw_interior(left), thaw_interior(right));
  const Seed e = elementary_seed(A1, a[0]);
  const GluingData all({e, e, e}, {"a0", "a1", "a2", "a3"},
                       {{{"a0", "a0"}, {"a1", "a1"}}, {{"a0", "a1"}, {"a1", "a2"}}, {{"a0", "a2"}, {"a1", "a3"}}});
  EXPECT_EQ(amalgamate(all).eps, left.eps);
  EXPECT_EQ(thaw_interior(amalgamate(all)), thaw_interior(left));
}

TEST(AmalgamationProperty, DefrostedWordConcatenations) {
  for (const std::string type : {"A2", "B2", "G2"}) {
    const RootDatum rd = root_datum_preset(type);
    for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
             {"a b", "-a"}, {"-b", "a b"}, {"a -b a", "b -a"}, {"b", "b"}}) {
      const Word A = parse_word(rd, x), B = parse_word(rd, y);
      Word AB = A;
      AB.insert(AB.end(), B.begin(), B.end());
      std::vector<std::string> interior;
      const Seed s = defrost(amalgamate(concatenation_gluing(rd, A, B, &interior)), interior);
      EXPECT_EQ(s, word_seed(rd, AB)) << type << " " << x << " | " << y;
      EXPECT_TRUE(check_poisson(amalgamation_map(concatenation_gluing(rd, A, B))).ok);
    }
  }
}

TEST(AmalgamationProperty, RandomGluingsCommuteWithMutation) {
  const IdentityReport r = verify_word_moves({.rng_seed = 99, .random_gluings = 20});
  EXPECT_TRUE(r.get("amalgamation commutes with mutation on random gluings").ok)
      << r.get("amalgamation commutes with mutation on random gluings").detail;
}
