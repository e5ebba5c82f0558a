#pragma once
// Configurations of points on P^1 with cross-ratio coordinates attached to triangulations of a
// polygon, triples of flags in P^3 with their three coordinates, and the maps between
// six points on P^1 and triples of flags through the twisted cubic.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterx/folding.hpp"
#include "clusterx/ratfun.hpp"
#include "clusterx/seed.hpp"

namespace cx {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- points on P^1

// Homogeneous coordinates (u : w); the affine point x = u / w.
using P1Point = std::array<RationalFunction, 2>;
P1Point p1_point(const RationalFunction& t);
P1Point p1_infinity();
// (t1 : 1), ..., (tn : 1) with symbolic t_i.
std::vector<P1Point> symbolic_points(int n, const std::string& prefix = "t");

// r+(x1,x2,x3,x4) = (x1-x2)(x3-x4) / ((x1-x4)(x2-x3)), through 2x2 determinants.
RationalFunction cross_ratio(const P1Point& x1, const P1Point& x2, const P1Point& x3, const P1Point& x4);

// ---------------------------------------------------------------- triangulations

using Diagonal = std::pair<int, int>;  // polygon vertices i < j, 0-based, counterclockwise

struct Triangulation {
  int n_gon = 0;
  std::vector<Diagonal> diagonals;  // sorted
};

std::vector<std::string> validate(const Triangulation& t);
std::vector<Triangulation> all_triangulations(int n_gon);
// Zig-zag: (1, N-1), (1, N-2), (2, N-2), (2, N-3), ...
Triangulation snake_triangulation(int n_gon);
// "E<i>_<j>" with 1-based vertices.
std::string diagonal_label(const Diagonal& d);
// The two triangles on E give the quadrilateral (a, b, c, d) read counterclockwise with E = bd.
std::array<int, 4> quadrilateral(const Triangulation& t, const Diagonal& e);
// Seed on the diagonals: eps(E, F) = +1 when F follows E counterclockwise in a common triangle.
Seed triangulation_seed(const Triangulation& t);
Triangulation flip(const Triangulation& t, const Diagonal& e, Diagonal* replacement = nullptr);
std::map<std::string, RationalFunction> triangulation_coords(const Triangulation& t, const std::vector<P1Point>& pts);

struct FlipCheck {
  bool ok = true;
  std::string detail;
};
// Coordinates after the flip equal the mutation at E of the coordinates before it, and the
// flipped seed is the mutated seed with E renamed.
FlipCheck flip_is_mutation(const Triangulation& t, const Diagonal& e, const std::vector<P1Point>& pts);

// ---------------------------------------------------------------- flags in P^3

using Vec4 = std::array<RationalFunction, 4>;
struct Flag {
  Vec4 v1, v2, v3;  // point v1, line v1 v2, plane v1 v2 v3
};
struct FlagTriple {
  Flag A, B, C;
};

RationalFunction det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);
Vec4 normal_curve_point(const RationalFunction& t);  // (1, t, t^2, t^3)
bool projectively_equal(const Vec4& p, const Vec4& q);

// X1 = D(a1,a2,a3,b1) D(a1,b1,b2,c1) D(a1,c1,c2,a2) / (D(a1,a2,a3,c1) D(a1,b1,b2,a2) D(a1,c1,c2,b1)),
// X2 and X3 by cyclic shifts of (A, B, C). Throws ConfigError when a determinant vanishes.
std::array<RationalFunction, 3> flag_coords(const FlagTriple& f);
// The display as printed: leading minus sign and D(a1,b2,b3,c1) as the second factor.
RationalFunction printed_x1(const FlagTriple& f);

// params = (x1, y1, x2, y2, x3, y3): A = (x1, y1, y3), B = (x2, y2, y1), C = (x3, y3, y2) on the curve.
FlagTriple phi(const std::array<RationalFunction, 6>& params);
// Point of the line p q lying in the plane r s u; throws ConfigError when not transverse.
Vec4 line_plane_intersection(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s, const Vec4& u);
// (A0, A1 n B2, B0, B1 n C2, C0, C1 n A2).
std::array<Vec4, 6> psi(const FlagTriple& f);

// Checks named:
//   "square flip", "pentagon flip cycle", "snake seeds are A_n", "hexagon flips (symbolic)",
//   "octagon flips (rational points)", "X_i o Phi", "Phi lands on the hexagon triangulation",
//   "Psi o Phi = id", "X_1 rescaling invariance", "volume form cancels",
//   "cross-ratio via curve determinants", "printed X_1 display" (diagnostic, expected to fail)
IdentityReport verify_configuration_spaces();

}  // namespace cx
