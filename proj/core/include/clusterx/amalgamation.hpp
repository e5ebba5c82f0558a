#pragma once
// Gluing data, amalgamated seeds, defrosting and the amalgamation map of tori.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clusterx/cluster_map.hpp"
#include "clusterx/seed.hpp"

namespace cx {

// Factor seeds with injections p_s : I(s) -> K. The constructor validates.
class GluingData {
 public:
  GluingData(std::vector<Seed> factors, std::vector<std::string> target, std::vector<VertexBijection> injections);

  const std::vector<Seed>& factors() const { return factors_; }
  const std::vector<std::string>& target() const { return target_; }
  const std::vector<VertexBijection>& injections() const { return injections_; }
  // Factor index and factor label of every preimage of a target vertex.
  std::vector<std::pair<std::size_t, std::string>> preimages(const std::string& k) const;

  // Same gluing with factor s replaced by its mutation at factor vertex v.
  GluingData with_factor_mutated(std::size_t s, const std::string& v) const;

 private:
  std::vector<Seed> factors_;
  std::vector<std::string> target_;
  std::vector<VertexBijection> injections_;
};

Seed amalgamate(const GluingData& g);
// Unfreeze the vertices of L. Throws SeedError listing offending entries.
Seed defrost(const Seed& s, const std::vector<std::string>& L);

// Product of the factors as one seed with block-diagonal eps; labels "f<k>_<label>".
std::string product_label(std::size_t factor, const std::string& label);
Seed product_seed(const GluingData& g);
// m : product torus -> amalgamated torus, m*z_k = product of the preimage coordinates.
ClusterMap amalgamation_map(const GluingData& g);

struct CommuteReport {
  bool ok = true;
  std::string detail;
};
// Amalgamate-then-mutate at k versus mutate-the-factor-then-amalgamate, on seeds and on tori.
CommuteReport check_amalgamation_mutation_commutes(const GluingData& g, const std::string& k);

nlohmann::json gluing_to_json(const GluingData& g);
GluingData gluing_from_json(const nlohmann::json& j);

}  // namespace cx
