#include <gtest/gtest.h>

#include "printers.hpp"
#include "clusterx/group_eval.hpp"
#include "clusterx/verify.hpp"

using namespace cx;

namespace {

RationalFunction P(const std::string& s) { return RationalFunction::parse(s); }

Matrix mat(const std::vector<std::vector<std::string>>& rows) {
  Matrix m;
  for (auto& r : rows) {
    m.emplace_back();
    for (auto& e : r) m.back().push_back(P(e));
  }
  return m;
}

Matrix scaled(Matrix m, const RationalFunction& c) {
  for (auto& r : m)
    for (auto& e : r) e *= c;
  return m;
}

}  // namespace

TEST(Generators, Basics) {
  EXPECT_EQ(gen_H(2, 1, P("x")), mat({{"x", "0"}, {"0", "1"}}));
  EXPECT_EQ(gen_H(3, 2, RationalFunction(1)), identity_matrix(3));
  EXPECT_EQ(gen_E(3, 1) * gen_F(3, 2), gen_F(3, 2) * gen_E(3, 1));
  EXPECT_EQ(gen_F(3, 2), transpose(gen_E(3, 2)));
  EXPECT_NE(gen_E(3, 1) * gen_F(3, 1), gen_F(3, 1) * gen_E(3, 1));
}

TEST(Ev, PGL2Words) {
  const RootDatum A1 = root_datum_preset("A1");
  EXPECT_TRUE(projective_equal(ev(A1, parse_word(A1, "a")), mat({{"a0*a1", "a0"}, {"0", "1"}})));
  EXPECT_TRUE(projective_equal(ev(A1, parse_word(A1, "-a")), mat({{"a0*a1", "0"}, {"a1", "1"}})));
  // The product H(t0) F H(t1) E H(t2) and its transposition dual.
  EXPECT_TRUE(projective_equal(ev(A1, parse_word(A1, "-a a")), mat({{"a0*a1*a2", "a0*a1"}, {"a1*a2", "1+a1"}})));
  EXPECT_TRUE(projective_equal(ev(A1, parse_word(A1, "a -a")), mat({{"a0*a2*(1+a1)", "a0"}, {"a2", "1"}})));
}

// Values from tests/oracles/derive.py: H1(2) H2(7) E1 H1(3) F2 H2(1/2) E1 H1(5).
TEST(EvOracle, SL3WordAtRationalPoint) {
  const RootDatum A2 = root_datum_preset("A2");
  const Assignment pt{{"a0", P("2")}, {"a1", P("3")}, {"a2", P("5")}, {"b0", P("7")}, {"b1", P("1/2")}};
  const Matrix m = ev(A2, parse_word(A2, "a -b a"), pt);
  EXPECT_EQ(m, mat({{"105", "28", "0"}, {"0", "7/2", "0"}, {"0", "1/2", "1"}}));
  EXPECT_EQ(substitute(ev(A2, parse_word(A2, "a -b a")), pt), m);
}

TEST(Ev, ProjectiveEquality) {
  const RootDatum A2 = root_datum_preset("A2");
  const Matrix a = ev(A2, parse_word(A2, "a -b"));
  EXPECT_TRUE(projective_equal(a, scaled(a, RationalFunction(7))));
  EXPECT_FALSE(projective_equal(a, transpose(a)));
}

TEST(Ev, IdempotentIdentity) {
  // E H(x) E = H(1+x) E H(1/(1+1/x)) up to scalar.
  const Matrix lhs = gen_E(2, 1) * gen_H(2, 1, P("x")) * gen_E(2, 1);
  const Matrix rhs = gen_H(2, 1, P("1+x")) * gen_E(2, 1) * gen_H(2, 1, P("1/(1+1/x)"));
  EXPECT_TRUE(projective_equal(lhs, rhs));
}

TEST(Ev, HPlacementWithinIntervalIsImmaterial) {
  // H^j commutes with E^i and F^i for i != j, so H may sit anywhere between two walls of its root.
  for (std::size_t n : {3u, 4u})
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j) {
        if (i == j) continue;
        const Matrix h = gen_H(n, j, P("t"));
        EXPECT_EQ(h * gen_E(n, i), gen_E(n, i) * h);
        EXPECT_EQ(h * gen_F(n, i), gen_F(n, i) * h);
      }
  EXPECT_NE(gen_H(3, 1, P("t")) * gen_E(3, 1), gen_E(3, 1) * gen_H(3, 1, P("t")));
}

TEST(Moves, AllKindsSatisfyEvaluationIdentity) {
  const std::vector<std::tuple<std::string, std::string, MoveKind, std::size_t>> cases{
      {"A2", "-a b", MoveKind::BarCommute, 0}, {"A3", "a c", MoveKind::Commute, 0},
      {"A2", "a b a", MoveKind::Braid, 0},     {"A2", "-a -b -a", MoveKind::Braid, 0},
      {"A2", "a a", MoveKind::Idempotent, 0},  {"A2", "-a -a", MoveKind::Idempotent, 0},
      {"A1", "-a a", MoveKind::BarSwap, 0},    {"A2", "b -a a b", MoveKind::BarSwap, 1}};
  for (auto& [t, w, kind, pos] : cases) {
    const RootDatum rd = root_datum_preset(t);
    Word out;
    const ClusterMap f = move_map(rd, parse_word(rd, w), {kind, pos}, &out);
    EXPECT_TRUE(verify_relation(rd, parse_word(rd, w), out, f).ok) << t << " " << w;
  }
}

TEST(Moves, IllegalMovesThrow) {
  const RootDatum A2 = root_datum_preset("A2");
  Word out;
  EXPECT_THROW(move_map(A2, parse_word(A2, "a b"), {MoveKind::Commute, 0}, &out), std::exception);
  EXPECT_THROW(move_map(A2, parse_word(A2, "a b"), {MoveKind::Braid, 0}, &out), std::exception);
}

TEST(Brackets, RMatrixNormalizationReproducesSeedBrackets) {
  const RootDatum A1 = root_datum_preset("A1");
  for (const std::string w : {"-a a", "a -a"}) {
    ScalarMatrix B = r_matrix_coordinate_bracket(A1, parse_word(A1, w));
    for (auto& r : B)
      for (auto& x : r) x *= poisson_normalization();
    EXPECT_EQ(B, poisson_tensor(word_seed(A1, parse_word(A1, w)))) << w;
  }
}

TEST(Brackets, EvIsPoissonOnSmallWords) {
  const RootDatum A1 = root_datum_preset("A1"), A2 = root_datum_preset("A2");
  EXPECT_TRUE(verify_ev_poisson(A1, parse_word(A1, "-a a")).ok);
  EXPECT_TRUE(verify_ev_poisson(A1, parse_word(A1, "-a")).ok);
  EXPECT_TRUE(verify_ev_poisson(A2, parse_word(A2, "a")).ok);
  EXPECT_TRUE(check_ev_bracket(A2, parse_word(A2, "a"), elementary_bivector_seed(A2, 0), Scalar(1)).ok);
}

TEST(Brackets, CartanOnlyWordHasZeroBrackets) {
  // A word with no letters is a torus element; the bracket among its diagonal ratios vanishes.
  const RootDatum A2 = root_datum_preset("A2");
  const Matrix g = ev(A2, Word{});
  EXPECT_TRUE(r_matrix_bracket(g, 0, 0, {1, 1}, {2, 2}).is_zero());
}

TEST(EvProperty, ConcatenationIsMultiplicative) {
  const IdentityReport r = verify_word_moves({.random_gluings = 1});
  EXPECT_TRUE(r.get("concatenation: ev(AB)(m(x, y)) = ev(A)(x) ev(B)(y)").ok);
}
