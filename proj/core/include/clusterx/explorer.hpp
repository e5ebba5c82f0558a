#pragma once
// Exchange graphs modulo seed isomorphism, the modular complex glued from them, face types by
// monodromy, fundamental-group presentations with Tietze simplification, and the G2 case.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clusterx/cluster_map.hpp"
#include "clusterx/seed.hpp"

namespace cx {

// ---------------------------------------------------------------- exchange graph

struct ExchangeEdge {
  std::size_t from = 0;
  std::string vertex;  // mutated vertex of nodes[from]
  std::size_t to = 0;
  VertexBijection phi;  // labels of mu_vertex(nodes[from]) -> labels of nodes[to]
};

struct ExploreOptions {
  std::size_t max_nodes = 1000;
  long max_entry = 12;  // abort when some |eps_ij| exceeds this
};

struct ExchangeGraph {
  std::vector<Seed> nodes;  // representatives in discovery order, labels as reached from the start
  std::vector<std::string> keys;  // canonical keys
  std::vector<std::vector<ExchangeEdge>> edges;  // per node, one per mutable vertex in vertex order
  bool finite = false;
  std::string verdict;  // "finite: N classes" or "aborted: ..."

  const ExchangeEdge& edge(std::size_t node, const std::string& k) const;
};

ExchangeGraph explore(const Seed& start, const ExploreOptions& opt = {});
nlohmann::json exchange_graph_to_json(const ExchangeGraph& g);

// Restriction of a seed to a subset of its vertices (in the given order).
Seed restrict_seed(const Seed& s, const std::vector<std::string>& labels);
// J(a b a b a b) for G2 restricted to a1, a2, b1, b2.
Seed g2_triple_flag_seed();

// ---------------------------------------------------------------- modular complex

// Facet of simplex u opposite k glued to the facet of v opposite phi(k); phi maps labels of u
// to labels of v. A dual edge is crossed forwards from u and backwards from v.
struct DualEdge {
  std::size_t u = 0;
  std::string k;
  std::size_t v = 0;
  std::string k2;
  VertexBijection phi;
  std::string name;  // "n<u>:<k>"
};

struct Crossing {
  std::size_t edge = 0;
  int dir = 1;
};

enum class FaceType { Finite, Infinite };

struct RidgeClass {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> members;  // (simplex, sorted labels)
  std::vector<Crossing> cycle;  // rotation from the least member; empty on the boundary
  bool boundary = false;
  FaceType type = FaceType::Finite;
  int period = 0;  // least power of the monodromy that is the identity; 0 when none found
};

struct ModularComplex {
  std::vector<Seed> simplices;
  std::vector<DualEdge> dual_edges;
  std::vector<std::size_t> face_counts;  // face classes by dimension
  std::vector<RidgeClass> ridges;  // codimension-2 face classes
  std::vector<std::vector<std::pair<std::size_t, std::string>>> vertex_classes;
  std::vector<FaceType> vertex_types;
  std::vector<std::string> notes;  // e.g. gluings differing by a seed automorphism

  long euler_characteristic() const;
  // Crossing the facet of simplex u opposite k.
  Crossing crossing_at(std::size_t u, const std::string& k) const;
  std::size_t crossing_target(const Crossing& c) const;
  const VertexBijection& crossing_map(const Crossing& c, VertexBijection& scratch) const;
  // Cluster transformation X_u -> X_target of a crossing (mutation then relabeling).
  ClusterMap crossing_cluster_map(const Crossing& c) const;
  ClusterMap monodromy(const std::vector<Crossing>& path) const;
};

struct ComplexOptions {
  int monodromy_bound = 12;
};

// Requires a finite exchange graph.
ModularComplex build_modular_complex(const ExchangeGraph& g, const ComplexOptions& opt = {});
// Least p <= bound with monodromy^p the identity on coordinates, or 0.
int monodromy_period(const ModularComplex& c, const std::vector<Crossing>& cycle, int bound);
FaceType classify_ridge(const ModularComplex& c, std::size_t ridge, int bound);
nlohmann::json complex_to_json(const ModularComplex& c);
std::string dual_graph_dot(const ModularComplex& c);

// ---------------------------------------------------------------- presentations

// Letters: +(g+1) for generator g, -(g+1) for its inverse.
using GroupWord = std::vector<int>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<GroupWord> relators;

  std::string word_str(const GroupWord& w) const;
  std::string str() const;
};
nlohmann::json presentation_to_json(const Presentation& p);

GroupWord free_reduce(const GroupWord& w);
GroupWord cyclic_reduce(const GroupWord& w);
GroupWord inverse(const GroupWord& w);
// Equal as cyclic words, optionally also after inverting one of them.
bool cyclically_equal(const GroupWord& a, const GroupWord& b, bool allow_inverse = true);

enum class TreeStrategy { BFS, DFS };
// Spanning tree of the dual graph, as dual-edge indices.
std::vector<std::size_t> spanning_tree(const ModularComplex& c, TreeStrategy s);
// Generators: dual edges off the tree. Relators: cycles of finite ridges with tree edges dropped,
// raised to their monodromy period.
Presentation fundamental_group(const ModularComplex& c, const std::vector<std::size_t>& tree);
Presentation fundamental_group(const ModularComplex& c, TreeStrategy s = TreeStrategy::BFS);

// Eliminates a generator occurring exactly once in a relator of length <= max_length, repeatedly.
Presentation tietze_simplify(Presentation p, std::size_t max_length = 64);

// Words in generators 1, 2 of a free group of rank 2.
struct BraidMatch {
  bool ok = false;
  GroupWord a, b;  // images of the braid generators
  std::string detail;
};
// For a 2-generator, 1-relator presentation: finds a basis (a, b) in which the relator is
// cyclically bababa (ababab)^-1 up to inversion.
BraidMatch match_g2_braid_relator(const Presentation& p);
// Nielsen reduction of a pair to single letters (a certificate that the pair is a basis of F2).
bool is_free_basis(const GroupWord& u, const GroupWord& v);

// ---------------------------------------------------------------- the G2 case

// Correspondence with the seven numbered seeds (vertices a, b on top with multiplier 3,
// c, d at the bottom) and the fourteen mutations lambda_1..lambda_14 of the reference tables.
struct ReferenceMatching {
  std::vector<std::size_t> node;  // reference seed k (0-based) -> simplex
  std::vector<std::map<char, std::string>> label;  // reference seed k: letter -> vertex label
  std::vector<Crossing> lambda;  // lambda_i (0-based) as a crossing of a dual edge
};
std::optional<ReferenceMatching> match_reference_seeds(const ModularComplex& c);
// The reference spanning tree (lambda 1, 2, 6, 8, 9, 13) and relators, in lambda generators.
std::vector<std::size_t> reference_tree(const ReferenceMatching& m);
std::vector<std::vector<std::pair<int, int>>> reference_relators();  // (lambda index 1..14, +-1)
// Presentation relators rewritten over lambda names; throws if some generator is unmatched.
std::vector<std::vector<std::pair<int, int>>> relators_in_lambdas(const Presentation& p, const ModularComplex& c,
                                                                  const ReferenceMatching& m);

struct BraidActionReport {
  bool ok = false;          // the 18-mutation composites agree up to a vertex permutation
  bool relabeled_ok = false;  // same with each generator followed by its isomorphism back to seed 1
  bool loops_ok = false;    // (ab)^3 = (ba)^3 for the monodromies of the simplified pi_1 generators
  std::string detail;
};
// a = mu_b mu_c mu_b and b = mu_c mu_b mu_c at reference seed 1, in persistent labels. The loop
// reading pushes coordinates symbolically around (ab)^3 and (ba)^3 and takes about a minute.
BraidActionReport braid_action_check(const ModularComplex& c, const ReferenceMatching& m, bool with_loops = true);

}  // namespace cx
