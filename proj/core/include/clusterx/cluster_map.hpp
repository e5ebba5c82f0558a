#pragma once
// Cluster transformations as exact maps between seed tori.
// A map stores pullbacks: each target coordinate as a rational function of the
// source coordinates, whose variables are named by the source vertex labels.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterx/ratfun.hpp"
#include "clusterx/seed.hpp"

namespace cx {

struct ClusterMap {
  Seed source;
  Seed target;
  std::map<std::string, RationalFunction> pullback;  // by target label
};

ClusterMap identity_map(const Seed& s);
ClusterMap mutation_map(const Seed& s, const std::string& k);
ClusterMap symmetry_map(const Seed& s, const VertexBijection& sigma);
// g after f; requires f.target == g.source.
ClusterMap compose(const ClusterMap& f, const ClusterMap& g);
// The composite of mutations applied left to right, computed step by step.
ClusterMap mutation_sequence_map(const Seed& s, const std::vector<std::string>& program);
// Same, starting from given coordinate functions instead of the source variables
// (e.g. frozen coordinates specialized to 1). Returns the final coordinates by label.
std::map<std::string, RationalFunction> run_mutations(const Seed& s, std::map<std::string, RationalFunction> coords,
                                                      const std::vector<std::string>& program,
                                                      Seed* final_seed = nullptr);

// Exact equality: same target seed, same pullbacks.
bool maps_equal(const ClusterMap& f, const ClusterMap& g);
// sigma with f.pullback(sigma(v)) = g.pullback(v) and sigma carrying g.target to f.target.
std::optional<VertexBijection> equals_up_to_permutation(const ClusterMap& f, const ClusterMap& g);

struct PoissonReport {
  bool ok = true;
  std::string a, b;  // first failing target pair
  std::string detail;
};
PoissonReport check_poisson(const ClusterMap& f);
// Bracket {f_a, f_b} for the log-canonical structure of seed s, on arbitrary functions.
RationalFunction log_canonical_bracket(const Seed& s, const RationalFunction& fa, const RationalFunction& fb);

std::map<std::string, Scalar> evaluate_at(const ClusterMap& f, const std::map<std::string, Scalar>& point);
bool is_subtraction_free(const ClusterMap& f);

nlohmann::json map_to_json(const ClusterMap& f);

}  // namespace cx
