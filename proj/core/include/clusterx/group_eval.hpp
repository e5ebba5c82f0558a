#pragma once
// Evaluation of word seeds into SL(n) (compared projectively, i.e. in PGL(n)), the
// generator identities behind the braid moves, and the r-matrix Poisson bracket.

#include <string>
#include <vector>

#include "clusterx/cluster_map.hpp"
#include "clusterx/root_words.hpp"

namespace cx {

using Matrix = std::vector<std::vector<RationalFunction>>;

Matrix identity_matrix(std::size_t n);
// Indices are 1-based as in the Chevalley generators of sl(n).
Matrix gen_E(std::size_t n, std::size_t i);
Matrix gen_F(std::size_t n, std::size_t i);
Matrix gen_H(std::size_t n, std::size_t j, const RationalFunction& t);  // t in the first j slots
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix substitute(const Matrix& a, const Assignment& s);
std::string matrix_str(const Matrix& a);

// ev_D at the given coordinates (keyed by J(D) labels). Type A only.
Matrix ev(const RootDatum& rd, const Word& w, const Assignment& coords);
// ev_D at the coordinate variables of J(D) themselves.
Matrix ev(const RootDatum& rd, const Word& w);

// A = lambda * B for a rational-function scalar lambda.
bool projective_equal(const Matrix& a, const Matrix& b);

struct RelationReport {
  bool ok = true;
  std::string detail;
};
// ev_rhs(map) = ev_lhs projectively; map.pullback is keyed by J(rhs) labels.
RelationReport verify_relation(const RootDatum& rd, const Word& lhs, const Word& rhs, const ClusterMap& map);

// Local moves on words, each with its coordinate map J(w) -> J(w').
enum class MoveKind {
  BarCommute,   // -a b -> b -a, a != b
  Commute,      // a b -> b a with C_ab = 0 (same sign)
  Braid,        // a b a -> b a b with C_ab = C_ba = -1 (same sign)
  Idempotent,   // a a -> a (same sign), a mutation followed by a projection
  BarSwap,      // -a a -> a -a
};
struct Move {
  MoveKind kind;
  std::size_t pos;
};
// Applies the move at pos; returns the map J(w) -> J(out). Throws if not applicable.
ClusterMap move_map(const RootDatum& rd, const Word& w, const Move& m, Word* out);

// Bracket of the coordinate functions u and v of the group pulled back along ev, for the
// bivector P(g) = r - Ad_g r, i.e. right-invariant r minus left-invariant r, with
// r = sum over positive roots of e_a wedge e_-a.
// Functions are entries g_ij divided by the pivot entry (p, q).
struct EntryRatio {
  std::size_t i, j;
};
RationalFunction r_matrix_bracket(const Matrix& g, std::size_t p, std::size_t q, EntryRatio u, EntryRatio v);

// Compares the log-canonical bracket of seed s, pushed through ev, with kappa * P on all
// pairs of entry ratios. Type A only.
RelationReport check_ev_bracket(const RootDatum& rd, const Word& w, const Seed& s, const Scalar& kappa);
// Normalization relating the seed bracket to P: {,}_seed = kappa * P.
Scalar poisson_normalization();
RelationReport verify_ev_poisson(const RootDatum& rd, const Word& w);
// The bracket of P on the coordinates of J(w) as a matrix B with {x_i, x_j} = B_ij x_i x_j;
// requires |J(w)| = n^2 - 1 so that ev is birational onto its image.
ScalarMatrix r_matrix_coordinate_bracket(const RootDatum& rd, const Word& w);
// Seed whose Poisson tensor is the elementary-seed bivector written in terms of Cartan data
// (the J(a) expression obtained from P by the vector-field computation).
Seed elementary_bivector_seed(const RootDatum& rd, int root);

}  // namespace cx
