#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"
#include "clusterx/root_words.hpp"
#include "clusterx/verify.hpp"

using namespace cx;

TEST(RootDatum, PresetsAreValid) {
  for (const std::string t : {"A1", "A2", "A3", "A4", "B2", "C2", "B3", "D4", "G2"}) {
    const RootDatum rd = root_datum_preset(t);
    EXPECT_TRUE(validate(rd).empty()) << t;
    for (std::size_t a = 0; a < rd.rank(); ++a)
      for (std::size_t b = 0; b < rd.rank(); ++b) EXPECT_EQ(rd.hat(a, b), rd.hat(b, a)) << t;
  }
  EXPECT_THROW(root_datum_preset("E9"), std::exception);
}

TEST(Words, ParseAndPrint) {
  const RootDatum rd = root_datum_preset("A2");
  const Word w = parse_word(rd, "a -b -a");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1].root, 1);
  EXPECT_EQ(w[1].sign, -1);
  EXPECT_EQ(word_str(rd, w), "a -b -a");
  EXPECT_THROW(parse_word(rd, "a z"), std::exception);
}

TEST(ElementarySeed, RankOne) {
  const RootDatum A1 = root_datum_preset("A1");
  const Seed s = elementary_seed(A1, {0, 1});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.frozen_labels().size(), 2u);
  // Orientation reproducing the worked rank-3 values: chain entry +1 for a positive letter.
  EXPECT_EQ(s.e("a0", "a1"), Scalar(1));
  const Seed t = elementary_seed(A1, {0, -1});
  EXPECT_EQ(t.e("a0", "a1"), Scalar(-1));
}

TEST(ElementarySeed, SingleLetterDirectFormula) {
  const RootDatum rd = generic_rank3_datum();
  const Seed s = word_seed_direct(rd, parse_word(rd, "a"));
  EXPECT_EQ(s, elementary_seed(rd, {0, 1}));
  for (int b = 1; b < 3; ++b) {
    const std::string B = vertex_label(rd.roots[b], 0);
    EXPECT_EQ(s.e("a0", B), Scalar(rd.cartan[0][b], 2));
    EXPECT_EQ(s.e("a1", B), Scalar(-rd.cartan[0][b], 2));
  }
}

TEST(WordSeed, PGL2Brackets) {
  // Middle coordinate brackets with weight one against both ends, ends commute.
  const RootDatum A1 = root_datum_preset("A1");
  const ScalarMatrix t = poisson_tensor(word_seed(A1, parse_word(A1, "-a a")));
  EXPECT_EQ(abs(t[0][1]), Scalar(1));
  EXPECT_EQ(t[1][2], Scalar(1));
  EXPECT_EQ(t[0][2], Scalar(0));
}

TEST(WordSeed, WorkedRankThreeExample) {
  const IdentityReport r = verify_word_seed_example();
  for (const std::string name : {"J = {a0..a3, b0..b2, c0}", "J0 = {a0, a3, b0, b2, c0}",
                                 "listed nonvanishing eps-hat values",
                                 "direct and amalgamated constructions agree on the example"})
    EXPECT_TRUE(r.get(name).ok) << name << ": " << r.get(name).detail;
  // One entry beyond the list: (a1, b1) = -C-hat_ab.
  const RootDatum rd = generic_rank3_datum();
  const Seed s = word_seed_direct(rd, parse_word(rd, "a -b -a -a b"));
  EXPECT_EQ(s.hat(s.at("a1"), s.at("b1")), Scalar(-rd.hat(0, 1)));
}

TEST(WordSeed, SparsityBound) {
  const RootDatum rd = generic_rank3_datum();
  const Seed s = word_seed_direct(rd, parse_word(rd, "a -b -a -a b c -c a"));
  for (std::size_t i = 0; i < s.size(); ++i) {
    int nb = 0;
    for (std::size_t j = 0; j < s.size(); ++j) nb += s.eps[i][j] != 0;
    EXPECT_LE(nb, 2 * 3);
  }
}

TEST(WordSeed, SingleLettersAgree) {
  for (const std::string t : {"A2", "B2", "G2"}) {
    const RootDatum rd = root_datum_preset(t);
    for (const std::string w : {"a", "-a", "b", "-b"}) EXPECT_TRUE(check_equivalence(rd, parse_word(rd, w)).ok);
  }
}

// Values from tests/oracles/derive.py: |W| and the length of the longest element.
TEST(WeylGroupOracle, SizesAndLongestLengths) {
  const std::vector<std::tuple<std::string, std::size_t, int>> want{
      {"A1", 2, 1}, {"A2", 6, 3}, {"A3", 24, 6}, {"B2", 8, 4}, {"G2", 12, 6}, {"B3", 48, 9}, {"D4", 192, 12}};
  for (auto& [t, size, len] : want) {
    const WeylGroup W(root_datum_preset(t));
    EXPECT_EQ(W.size(), size) << t;
    EXPECT_EQ(W.length(W.longest()), len) << t;
  }
}

TEST(Hecke, Relations) {
  const RootDatum rd = root_datum_preset("A2");
  const WeylGroup W(rd);
  auto h = [&](const std::string& s) { return hecke_image(W, parse_word(rd, s)); };
  EXPECT_EQ(h("a a"), h("a"));
  EXPECT_EQ(h("-a -a"), h("-a"));
  EXPECT_EQ(h("a -b"), h("-b a"));
  EXPECT_EQ(h("a b a"), h("b a b"));
  EXPECT_EQ(h(""), (HeckeImage{W.identity(), W.identity()}));
  EXPECT_TRUE(reduced_representative(W, h("")).empty());
}

TEST(Hecke, G2LongestPair) {
  const RootDatum rd = root_datum_preset("G2");
  const WeylGroup W(rd);
  const Word w = reduced_representative(W, {W.longest(), W.longest()});
  EXPECT_EQ(w.size(), 12u);
}

// ---------------------------------------------------------------- properties

namespace {

Word random_word(std::mt19937_64& rng, const RootDatum& rd, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back({static_cast<int>(rng() % rd.rank()), rng() % 2 ? 1 : -1});
  return w;
}

}  // namespace

TEST(HeckeProperty, ReducedRepresentativeSplits) {
  std::mt19937_64 rng(21);
  for (const std::string t : {"A3", "B2", "G2"}) {
    const RootDatum rd = root_datum_preset(t);
    const WeylGroup W(rd);
    for (int n = 0; n < 40; ++n) {
      const Word w = random_word(rng, rd, 1 + n % 7);
      const HeckeImage h = hecke_image(W, w);
      const Word s = reduced_representative(W, h);
      EXPECT_EQ(hecke_image(W, s), h);
      EXPECT_EQ(static_cast<int>(s.size()), W.length(h.plus) + W.length(h.minus));
      EXPECT_EQ(reduced_representative(W, hecke_image(W, s)), s);
    }
  }
}

TEST(HeckeProperty, InvariantUnderMovesInsideWords) {
  std::mt19937_64 rng(22);
  const RootDatum rd = root_datum_preset("A3");
  const WeylGroup W(rd);
  for (int n = 0; n < 30; ++n) {
    const Word pre = random_word(rng, rd, n % 3), post = random_word(rng, rd, n % 4);
    auto wrap = [&](const std::string& mid) {
      Word w = pre;
      const Word m = parse_word(rd, mid);
      w.insert(w.end(), m.begin(), m.end());
      w.insert(w.end(), post.begin(), post.end());
      return hecke_image(W, w);
    };
    EXPECT_EQ(wrap("a b a"), wrap("b a b"));
    EXPECT_EQ(wrap("-b -c -b"), wrap("-c -b -c"));
    EXPECT_EQ(wrap("a c"), wrap("c a"));
    EXPECT_EQ(wrap("a -b"), wrap("-b a"));
    EXPECT_EQ(wrap("c c"), wrap("c"));
  }
}

TEST(WordSeedProperty, IntegralOffFrozenBlock) {
  std::mt19937_64 rng(23);
  for (const std::string t : {"B3", "D4", "G2"}) {
    const RootDatum rd = root_datum_preset(t);
    for (int n = 0; n < 15; ++n) EXPECT_TRUE(validate(word_seed(rd, random_word(rng, rd, 1 + n % 6))).empty());
  }
}

TEST(WordSeedProperty, ConstructionsAgreeOnRandomLongerWords) {
  std::mt19937_64 rng(24);
  for (const std::string t : {"A3", "B3", "D4"}) {
    const RootDatum rd = root_datum_preset(t);
    for (int n = 0; n < 10; ++n) {
      const Word w = random_word(rng, rd, 5 + n % 3);
      EXPECT_TRUE(check_equivalence(rd, w).ok) << t << " " << word_str(rd, w);
    }
  }
}
