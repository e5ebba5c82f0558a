#pragma once
// Foldings of Cartan data and of seeds, lifting mutation sequences through them, and the
// B2 / G2 mutation-sequence identities obtained from the A3 / D4 foldings.

#include <map>
#include <string>
#include <vector>

#include "clusterx/cluster_map.hpp"
#include "clusterx/root_words.hpp"

namespace cx {

class FoldingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CartanFolding {
  RootDatum source;  // simply laced
  RootDatum target;
  std::map<std::string, std::string> pi;  // source root -> target root

  // Preimage of a target root, in source root order.
  std::vector<std::string> fiber(const std::string& target_root) const;
};

// "A3-B2": g-D-e with g,e -> a and D -> b.  "D4-G2": D central, g,e,r -> a and D -> b.
CartanFolding cartan_folding_preset(const std::string& name);
// Zero coupling inside fibers, and C_ab = sum over b' above b of C'_a'b' for every a' above a.
std::vector<std::string> validate(const CartanFolding& f);

struct SeedFolding {
  Seed source;  // J'
  Seed target;  // J
  VertexBijection pi;  // every source label -> target label (surjective, not injective)

  // Preimage of a target vertex, in source vertex order.
  std::vector<std::string> fiber(const std::string& k) const;
};

// Condition 0: frozen iff the image is frozen. Condition 1: eps' vanishes inside fibers.
// Condition 2: eps_ij = sum over j' above j of eps'_i'j' for every i' above i, with all summands
// of one sign.
std::vector<std::string> validate_folding(const SeedFolding& f);

// Each letter replaced by its fiber in source root order, keeping the sign.
Word fold_word(const CartanFolding& f, const Word& w);
// J(fold_word(w)) -> J(w), (a', i) -> (pi(a'), i).
SeedFolding word_folding(const CartanFolding& f, const Word& w);
// pi* : X_J -> X_J', x_i' = x_pi(i').
ClusterMap folding_embedding(const SeedFolding& f);

// Replaces every step k by the mutations at its fiber (source vertex order). Every intermediate
// folding is validated; a failure raises FoldingError naming the step.
std::vector<std::string> lift_mutation_sequence(const SeedFolding& f, const std::vector<std::string>& seq,
                                                SeedFolding* final_folding = nullptr);

struct FoldCheck {
  std::string name;
  bool ok = true;
  std::string detail;
  bool diagnostic = false;  // reported, but not part of a verdict
};

// pi*' o mu_seq = lift(seq) o pi*, exactly.
FoldCheck check_intertwining(const SeedFolding& f, const std::vector<std::string>& seq);

struct IdentityReport {
  std::vector<FoldCheck> checks;
  const FoldCheck& get(const std::string& name) const;
  bool all_ok() const;
  // Ignores diagnostic checks.
  bool required_ok() const;
  void mark_diagnostic(const std::vector<std::string>& names);
};

// Printed B2 formulas as functions of x, y. q_corrected is the value forced by the matrix identity.
std::map<std::string, RationalFunction> b2_printed_formulas(bool q_corrected = false);
// Printed G2 formulas in x, y, z, w together with R1..R4.
std::map<std::string, RationalFunction> g2_printed_formulas();
std::vector<Polynomial> g2_printed_R();

// Mutation programs in application order (first entry applied first).
std::vector<std::string> b2_sequence_LB();
std::vector<std::string> b2_sequence_LA();
std::vector<std::string> b2_sequence_LB_hat();
std::vector<std::string> g2_sequence();
std::vector<std::string> opopo_left();
std::vector<std::string> opopo_right();

// Check names:
//   "formulas: literal roles", "formulas: exchanged roles", "formulas: exchanged roles, corrected q'",
//   "final seed is J(baba)", "lift of L_B is L-hat_B", "pi* intertwines L_B",
//   "L_A = L-hat_B", "braid-move chain = L_A", "SL4 evaluation identity"
IdentityReport verify_b2_identity();
// Check names:
//   "formulas: literal roles", "formulas: inverted coordinates", "R polynomials",
//   "final seed is J(bababa)", "lift of G2 sequence is the 18-step side", "pi* intertwines G2 sequence",
//   "opopo"
IdentityReport verify_g2_identity();

}  // namespace cx
