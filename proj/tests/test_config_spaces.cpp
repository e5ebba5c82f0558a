#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"
#include "clusterx/config_spaces.hpp"

using namespace cx;

namespace {

RationalFunction P(const std::string& s) { return RationalFunction::parse(s); }

}  // namespace

TEST(CrossRatio, Values) {
  EXPECT_EQ(cross_ratio(p1_point(P("0")), p1_point(P("1")), p1_point(P("2")), p1_point(P("3"))), P("1/3"));
  // (x1 - x2)(x3 - x4) / ((x1 - x4)(x2 - x3)) with x4 at infinity reduces to (x1 - x2) / (x2 - x3).
  EXPECT_EQ(cross_ratio(p1_point(P("x")), p1_point(P("y")), p1_point(P("z")), p1_infinity()), P("(x-y)/(y-z)"));
}

TEST(CrossRatio, Symmetries) {
  const auto t = symbolic_points(4);
  const RationalFunction r = cross_ratio(t[0], t[1], t[2], t[3]);
  EXPECT_EQ(cross_ratio(t[1], t[0], t[3], t[2]), r);
  EXPECT_EQ(cross_ratio(t[2], t[3], t[0], t[1]), r);
  EXPECT_EQ(cross_ratio(t[3], t[0], t[1], t[2]), RationalFunction(1) / r);
}

TEST(CrossRatio, MoebiusInvariance) {
  std::mt19937_64 rng(41);
  const auto t = symbolic_points(4);
  for (int n = 0; n < 10; ++n) {
    long a = 1 + rng() % 5, b = rng() % 5, c = rng() % 3, d = 1 + rng() % 5;
    if (a * d - b * c == 0) continue;
    std::vector<P1Point> m;
    for (auto& p : t)
      m.push_back({RationalFunction(a) * p[0] + RationalFunction(b) * p[1], RationalFunction(c) * p[0] + RationalFunction(d) * p[1]});
    EXPECT_EQ(cross_ratio(m[0], m[1], m[2], m[3]), cross_ratio(t[0], t[1], t[2], t[3]));
  }
}

TEST(Det4, VandermondeOnTheCurve) {
  const RationalFunction a = P("a"), b = P("b"), c = P("c"), d = P("d");
  EXPECT_EQ(det4(normal_curve_point(a), normal_curve_point(b), normal_curve_point(c), normal_curve_point(d)),
            (b - a) * (c - a) * (d - a) * (c - b) * (d - b) * (d - c));
  EXPECT_TRUE(det4(normal_curve_point(a), normal_curve_point(a), normal_curve_point(c), normal_curve_point(d)).is_zero());
}

TEST(Triangulations, CatalanCountsAndValidity) {
  const std::vector<std::size_t> catalan{1, 2, 5, 14, 42};
  for (int n = 3; n <= 7; ++n) {
    const auto all = all_triangulations(n);
    EXPECT_EQ(all.size(), catalan[n - 3]);
    for (auto& t : all) EXPECT_TRUE(validate(t).empty());
  }
  EXPECT_FALSE(validate(Triangulation{5, {{0, 2}, {1, 3}}}).empty());
  EXPECT_EQ(diagonal_label({0, 2}), "E1_3");
}

TEST(Triangulations, SnakeSeedIsTypeA) {
  const Triangulation t = snake_triangulation(6);
  EXPECT_TRUE(validate(t).empty());
  const Seed s = triangulation_seed(t);
  ASSERT_EQ(s.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_LE(abs(s.eps[i][j]), Scalar(1));
}

TEST(Flips, SquarePentagonHexagon) {
  const Triangulation sq{4, {{0, 2}}};
  Diagonal rep;
  const Triangulation f = flip(sq, {0, 2}, &rep);
  EXPECT_EQ(rep, (Diagonal{1, 3}));
  EXPECT_EQ(flip(f, rep).diagonals, sq.diagonals);
  for (int n : {4, 5, 6}) {
    const auto pts = symbolic_points(n);
    for (auto& t : all_triangulations(n))
      for (auto& e : t.diagonals) EXPECT_TRUE(flip_is_mutation(t, e, pts).ok) << n << " " << diagonal_label(e);
  }
}

TEST(Flips, QuadrilateralAroundDiagonal) {
  const Triangulation t{4, {{0, 2}}};
  const auto q = quadrilateral(t, {0, 2});
  EXPECT_EQ(q[1], 0);
  EXPECT_EQ(q[3], 2);
}

namespace {

std::array<RationalFunction, 6> sample_params() {
  return {P("x1"), P("y1"), P("x2"), P("y2"), P("x3"), P("y3")};
}

}  // namespace

TEST(Flags, CoordinatesRotateWithTheTriple) {
  const FlagTriple f = phi(sample_params());
  const auto X = flag_coords(f);
  const auto Y = flag_coords(FlagTriple{f.B, f.C, f.A});
  EXPECT_EQ(Y[0], X[1]);
  EXPECT_EQ(Y[1], X[2]);
  EXPECT_EQ(Y[2], X[0]);
}

TEST(Flags, PsiInvertsPhi) {
  std::array<RationalFunction, 6> p;
  const long v[6] = {0, 1, 2, 3, 5, 7};
  for (int i = 0; i < 6; ++i) p[i] = RationalFunction(v[i]);
  const auto pts = psi(phi(p));
  for (int i = 0; i < 6; ++i) EXPECT_TRUE(projectively_equal(pts[i], normal_curve_point(p[i]))) << i;
}

TEST(Flags, DegenerateIntersectionThrows) {
  const Vec4 p = normal_curve_point(P("0")), q = normal_curve_point(P("1")), r = normal_curve_point(P("2"));
  // The line p q lies inside the plane p q r.
  EXPECT_THROW(line_plane_intersection(p, q, p, q, r), ConfigError);
}

TEST(Flags, CoincidentPointsThrow) {
  std::array<RationalFunction, 6> p;
  for (auto& x : p) x = RationalFunction(1);
  EXPECT_THROW(flag_coords(phi(p)), ConfigError);
}

TEST(ConfigurationSpaces, Suite) {
  const IdentityReport r = verify_configuration_spaces();
  for (auto& c : r.checks) {
    if (c.name == "printed X_1 display")
      EXPECT_FALSE(c.ok);
    else
      EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
  }
}
