#pragma once
// Seeds (I, I0, eps, d), mutations, symmetries, isomorphism and canonical forms.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "clusterx/ratfun.hpp"

namespace cx {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

class SeedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Seed {
  std::vector<std::string> vertices;
  std::vector<bool> frozen;  // parallel to vertices
  ScalarMatrix eps;          // eps[i][j] for vertices i, j
  std::vector<long> d;

  Seed() = default;
  // Zero exchange matrix, multipliers 1.
  Seed(std::vector<std::string> labels, const std::vector<std::string>& frozen_labels);

  std::size_t size() const { return vertices.size(); }
  // -1 when absent.
  int index(const std::string& label) const;
  int at(const std::string& label) const;  // throws when absent
  bool is_frozen(const std::string& label) const { return frozen[at(label)]; }
  const Scalar& e(const std::string& i, const std::string& j) const { return eps[at(i)][at(j)]; }
  Scalar& e(const std::string& i, const std::string& j) { return eps[at(i)][at(j)]; }
  // eps_ij * d_j
  Scalar hat(std::size_t i, std::size_t j) const { return eps[i][j] * d[j]; }
  std::vector<std::string> frozen_labels() const;
  std::vector<std::string> mutable_labels() const;

  // Labeled equality: same vertex set, frozen set, eps and d (vertex order ignored).
  friend bool operator==(const Seed& a, const Seed& b);
  friend bool operator!=(const Seed& a, const Seed& b) { return !(a == b); }
};

// Old label -> new label.
using VertexBijection = std::map<std::string, std::string>;

std::vector<std::string> validate(const Seed& s);
Seed mutate_seed(const Seed& s, const std::string& k);
Seed mutate_seed(const Seed& s, const std::vector<std::string>& program);
Seed apply_symmetry(const Seed& s, const VertexBijection& sigma);
VertexBijection invert(const VertexBijection& sigma);
bool is_bijection_on(const VertexBijection& sigma, const std::vector<std::string>& labels);

std::optional<VertexBijection> find_isomorphism(const Seed& s1, const Seed& s2);
// Every isomorphism s1 -> s2 (used for automorphism groups of small seeds).
std::vector<VertexBijection> all_isomorphisms(const Seed& s1, const Seed& s2);

struct CanonicalForm {
  Seed seed;             // labels "v0", "v1", ...
  VertexBijection map;   // original label -> canonical label
  std::string key;       // serialized canonical seed
};
CanonicalForm canonical_form(const Seed& s);

ScalarMatrix poisson_tensor(const Seed& s);

nlohmann::json seed_to_json(const Seed& s);
Seed seed_from_json(const nlohmann::json& j);
std::string seed_to_dot(const Seed& s, const std::string& name = "seed");
std::string matrix_str(const ScalarMatrix& m);

}  // namespace cx
