#include "clusterx/amalgamation.hpp"

#include <algorithm>
#include <set>

namespace cx {

namespace {

std::string where(std::size_t s, const std::string& v) { return "factor " + std::to_string(s) + " vertex '" + v + "'"; }

}  // namespace

GluingData::GluingData(std::vector<Seed> factors, std::vector<std::string> target,
                       std::vector<VertexBijection> injections)
    : factors_(std::move(factors)), target_(std::move(target)), injections_(std::move(injections)) {
  if (injections_.size() != factors_.size()) throw SeedError("gluing: one injection per factor is required");
  std::set<std::string> K(target_.begin(), target_.end());
  if (K.size() != target_.size()) throw SeedError("gluing: duplicate target vertex");
  // First preimage seen for each target vertex.
  std::map<std::string, std::pair<std::size_t, std::string>> first;
  for (std::size_t s = 0; s < factors_.size(); ++s) {
    const Seed& f = factors_[s];
    const auto& p = injections_[s];
    if (p.size() != f.size())
      throw SeedError("gluing: injection of factor " + std::to_string(s) + " must cover every factor vertex");
    std::set<std::string> img;
    for (auto& v : f.vertices) {
      auto it = p.find(v);
      if (it == p.end()) throw SeedError("gluing: " + where(s, v) + " has no image");
      if (!K.count(it->second)) throw SeedError("gluing: " + where(s, v) + " maps outside the target set");
      if (!img.insert(it->second).second) throw SeedError("gluing: injection of factor " + std::to_string(s) +
                                                          " is not injective at '" + it->second + "'");
      auto [pos, fresh] = first.emplace(it->second, std::make_pair(s, v));
      if (fresh) continue;
      const auto& [s0, v0] = pos->second;
      const Seed& f0 = factors_[s0];
      if (!f0.is_frozen(v0) || !f.is_frozen(v))
        throw SeedError("gluing: " + where(s0, v0) + " and " + where(s, v) + " are glued to '" + it->second +
                        "' but only frozen vertices can be glued");
      if (f0.d[f0.at(v0)] != f.d[f.at(v)])
        throw SeedError("gluing: " + where(s0, v0) + " and " + where(s, v) + " are glued to '" + it->second +
                        "' with different multipliers");
    }
  }
  for (auto& k : target_)
    if (!first.count(k)) throw SeedError("gluing: target vertex '" + k + "' is not covered");
}

std::vector<std::pair<std::size_t, std::string>> GluingData::preimages(const std::string& k) const {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (std::size_t s = 0; s < factors_.size(); ++s)
    for (auto& [v, img] : injections_[s])
      if (img == k) out.emplace_back(s, v);
  return out;
}

GluingData GluingData::with_factor_mutated(std::size_t s, const std::string& v) const {
  auto fs = factors_;
  fs[s] = mutate_seed(fs[s], v);
  return GluingData(std::move(fs), target_, injections_);
}

Seed amalgamate(const GluingData& g) {
  Seed out(g.target(), {});
  std::vector<bool> frozen(out.size(), false);
  for (std::size_t s = 0; s < g.factors().size(); ++s) {
    const Seed& f = g.factors()[s];
    const auto& p = g.injections()[s];
    std::vector<int> pos(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) pos[i] = out.at(p.at(f.vertices[i]));
    for (std::size_t i = 0; i < f.size(); ++i) {
      out.d[pos[i]] = f.d[i];
      if (f.frozen[i]) frozen[pos[i]] = true;
      for (std::size_t j = 0; j < f.size(); ++j) out.eps[pos[i]][pos[j]] += f.eps[i][j];
    }
  }
  out.frozen = frozen;
  return out;
}

Seed defrost(const Seed& s, const std::vector<std::string>& L) {
  Seed t = s;
  std::set<int> idx;
  for (auto& v : L) {
    int i = s.at(v);
    if (!s.frozen[i]) throw SeedError("defrost: vertex '" + v + "' is not frozen");
    idx.insert(i);
  }
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!idx.count(static_cast<int>(i)) && !idx.count(static_cast<int>(j))) continue;
      if (s.eps[i][j].get_den() != 1)
        bad.push_back("eps(" + s.vertices[i] + "," + s.vertices[j] + ") = " + s.eps[i][j].get_str());
    }
  if (!bad.empty()) {
    std::string msg = "defrost: non-integral entries";
    for (auto& b : bad) msg += "; " + b;
    throw SeedError(msg);
  }
  for (int i : idx) t.frozen[i] = false;
  return t;
}

std::string product_label(std::size_t factor, const std::string& label) {
  return "f" + std::to_string(factor) + "_" + label;
}

Seed product_seed(const GluingData& g) {
  std::vector<std::string> labels, frozen;
  for (std::size_t s = 0; s < g.factors().size(); ++s)
    for (auto& v : g.factors()[s].vertices) {
      labels.push_back(product_label(s, v));
      if (g.factors()[s].is_frozen(v)) frozen.push_back(labels.back());
    }
  Seed out(labels, frozen);
  std::size_t off = 0;
  for (auto& f : g.factors()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      out.d[off + i] = f.d[i];
      for (std::size_t j = 0; j < f.size(); ++j) out.eps[off + i][off + j] = f.eps[i][j];
    }
    off += f.size();
  }
  return out;
}

ClusterMap amalgamation_map(const GluingData& g) {
  ClusterMap m{product_seed(g), amalgamate(g), {}};
  for (auto& k : g.target()) m.pullback.emplace(k, RationalFunction(1));
  for (std::size_t s = 0; s < g.factors().size(); ++s)
    for (auto& [v, k] : g.injections()[s]) {
      auto& z = m.pullback.at(k);
      z = z * RationalFunction::var(product_label(s, v));
    }
  return m;
}

CommuteReport check_amalgamation_mutation_commutes(const GluingData& g, const std::string& k) {
  const Seed amal = amalgamate(g);
  if (amal.is_frozen(k)) throw SeedError("amalgamation square: '" + k + "' is frozen in the amalgamated seed");
  auto pre = g.preimages(k);
  if (pre.size() != 1) throw SeedError("amalgamation square: '" + k + "' has several preimages");
  const auto [s, v] = pre.front();
  const GluingData g2 = g.with_factor_mutated(s, v);

  CommuteReport r;
  const Seed via_factor = amalgamate(g2);
  const Seed via_amal = mutate_seed(amal, k);
  if (via_factor != via_amal) {
    r.ok = false;
    r.detail = "seed square fails at '" + k + "':\n" + matrix_str(via_amal.eps) + "vs\n" + matrix_str(via_factor.eps);
    return r;
  }
  // m then mu_k versus mu_v on the product then m.
  ClusterMap top = compose(amalgamation_map(g), mutation_map(amal, k));
  ClusterMap m2 = amalgamation_map(g2);
  ClusterMap bottom = compose(mutation_map(product_seed(g), product_label(s, v)), m2);
  for (auto& [t, f] : top.pullback) {
    if (f != bottom.pullback.at(t)) {
      r.ok = false;
      r.detail = "torus square fails at coordinate '" + t + "': " + f.str() + " vs " + bottom.pullback.at(t).str();
      return r;
    }
  }
  return r;
}

nlohmann::json gluing_to_json(const GluingData& g) {
  nlohmann::json j;
  j["version"] = 1;
  j["target"] = g.target();
  j["factors"] = nlohmann::json::array();
  for (std::size_t s = 0; s < g.factors().size(); ++s)
    j["factors"].push_back({{"seed", seed_to_json(g.factors()[s])}, {"injection", g.injections()[s]}});
  return j;
}

GluingData gluing_from_json(const nlohmann::json& j) {
  std::vector<Seed> fs;
  std::vector<VertexBijection> inj;
  for (auto& f : j.at("factors")) {
    fs.push_back(seed_from_json(f.at("seed")));
    inj.push_back(f.at("injection").get<VertexBijection>());
  }
  return GluingData(std::move(fs), j.at("target").get<std::vector<std::string>>(), std::move(inj));
}

}  // namespace cx
