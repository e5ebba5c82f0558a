#include "clusterx/cluster_map.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace cx {

ClusterMap identity_map(const Seed& s) {
  ClusterMap f{s, s, {}};
  for (auto& v : s.vertices) f.pullback.emplace(v, RationalFunction::var(v));
  return f;
}

namespace {

long integral_exponent(const Scalar& e, const std::string& i, const std::string& k) {
  if (e.get_den() != 1)
    throw SeedError("mutation map needs integral eps(" + i + "," + k + "), got " + e.get_str());
  return e.get_num().get_si();
}

// x_i * (1 + x_k)^e for e >= 0, x_i * (1 + 1/x_k)^e for e < 0.
RationalFunction mutation_factor(const RationalFunction& xk, long e) {
  const Polynomial& n = xk.num();
  const Polynomial& d = xk.den();
  if (e >= 0) return RationalFunction::from_coprime(n + d, d).pow(static_cast<int>(e));
  return RationalFunction::from_coprime(n + d, n).pow(static_cast<int>(e));
}

}  // namespace

std::map<std::string, RationalFunction> run_mutations(const Seed& s, std::map<std::string, RationalFunction> coords,
                                                      const std::vector<std::string>& program, Seed* final_seed) {
  Seed cur = s;
  for (const auto& k : program) {
    const int kk = cur.at(k);
    if (cur.frozen[kk]) throw SeedError("mutation at frozen vertex '" + k + "'");
    const RationalFunction xk = coords.at(k);
    std::map<long, RationalFunction> factors;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (static_cast<int>(i) == kk) continue;
      long e = integral_exponent(cur.eps[i][kk], cur.vertices[i], k);
      if (e == 0) continue;
      auto it = factors.find(e);
      if (it == factors.end()) it = factors.emplace(e, mutation_factor(xk, e)).first;
      auto& xi = coords.at(cur.vertices[i]);
      xi = xi * it->second;
    }
    coords.at(k) = xk.inverse();
    cur = mutate_seed(cur, k);
  }
  if (final_seed) *final_seed = cur;
  return coords;
}

ClusterMap mutation_sequence_map(const Seed& s, const std::vector<std::string>& program) {
  ClusterMap f = identity_map(s);
  f.pullback = run_mutations(s, std::move(f.pullback), program, &f.target);
  return f;
}

ClusterMap mutation_map(const Seed& s, const std::string& k) { return mutation_sequence_map(s, {k}); }

ClusterMap symmetry_map(const Seed& s, const VertexBijection& sigma) {
  ClusterMap f{s, apply_symmetry(s, sigma), {}};
  for (auto& v : s.vertices) f.pullback.emplace(sigma.at(v), RationalFunction::var(v));
  return f;
}

ClusterMap compose(const ClusterMap& f, const ClusterMap& g) {
  if (!(f.target == g.source)) throw SeedError("compose: target of the first map differs from source of the second");
  ClusterMap h{f.source, g.target, {}};
  for (auto& [v, expr] : g.pullback) h.pullback.emplace(v, substitute(expr, f.pullback));
  return h;
}

bool maps_equal(const ClusterMap& f, const ClusterMap& g) {
  return f.source == g.source && f.target == g.target && f.pullback == g.pullback;
}

std::optional<VertexBijection> equals_up_to_permutation(const ClusterMap& f, const ClusterMap& g) {
  const Seed& ft = f.target;
  const Seed& gt = g.target;
  if (ft.size() != gt.size()) return std::nullopt;
  // Candidate images for each g-target vertex: equal pullback, frozen flag and multiplier.
  std::unordered_map<std::string, std::vector<int>> by_value;
  for (std::size_t u = 0; u < ft.size(); ++u) by_value[f.pullback.at(ft.vertices[u]).str()].push_back(static_cast<int>(u));
  std::vector<std::vector<int>> cand(gt.size());
  for (std::size_t v = 0; v < gt.size(); ++v) {
    auto it = by_value.find(g.pullback.at(gt.vertices[v]).str());
    if (it == by_value.end()) return std::nullopt;
    for (int u : it->second)
      if (ft.frozen[u] == gt.frozen[v] && ft.d[u] == gt.d[v]) cand[v].push_back(u);
    if (cand[v].empty()) return std::nullopt;
  }
  std::vector<int> assign(gt.size(), -1);
  std::vector<bool> used(ft.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t v) -> bool {
    if (v == gt.size()) return true;
    for (int u : cand[v]) {
      if (used[u]) continue;
      bool ok = ft.eps[u][u] == gt.eps[v][v];
      for (std::size_t w = 0; ok && w < v; ++w)
        ok = ft.eps[u][assign[w]] == gt.eps[v][w] && ft.eps[assign[w]][u] == gt.eps[w][v];
      if (!ok) continue;
      assign[v] = u;
      used[u] = true;
      if (go(v + 1)) return true;
      used[u] = false;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  VertexBijection sigma;
  for (std::size_t v = 0; v < gt.size(); ++v) sigma[gt.vertices[v]] = ft.vertices[assign[v]];
  return sigma;
}

RationalFunction log_canonical_bracket(const Seed& s, const RationalFunction& fa, const RationalFunction& fb) {
  const std::size_t n = s.size();
  std::vector<RationalFunction> la(n), lb(n);
  for (std::size_t i = 0; i < n; ++i) {
    la[i] = partial_log_derivative(fa, s.vertices[i]);
    lb[i] = partial_log_derivative(fb, s.vertices[i]);
  }
  RationalFunction sum;
  for (std::size_t i = 0; i < n; ++i) {
    if (la[i].is_zero()) continue;
    RationalFunction inner;
    for (std::size_t j = 0; j < n; ++j) {
      Scalar h = s.hat(i, j);
      if (h == 0 || lb[j].is_zero()) continue;
      inner += RationalFunction(h) * lb[j];
    }
    if (!inner.is_zero()) sum += la[i] * inner;
  }
  return sum;
}

PoissonReport check_poisson(const ClusterMap& f) {
  const Seed& src = f.source;
  const Seed& tgt = f.target;
  const std::size_t n = src.size();
  // Logarithmic differentials of each target coordinate.
  std::map<std::string, std::vector<RationalFunction>> dlog;
  for (auto& v : tgt.vertices) {
    const RationalFunction& fv = f.pullback.at(v);
    auto& row = dlog[v];
    row.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      RationalFunction g = partial_log_derivative(fv, src.vertices[i]);
      row[i] = g.is_zero() ? g : g / fv;
    }
  }
  for (std::size_t b = 0; b < tgt.size(); ++b) {
    const auto& lb = dlog[tgt.vertices[b]];
    std::vector<RationalFunction> m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar h = src.hat(i, j);
        if (h != 0 && !lb[j].is_zero()) m[i] += RationalFunction(h) * lb[j];
      }
    for (std::size_t a = 0; a < tgt.size(); ++a) {
      const auto& la = dlog[tgt.vertices[a]];
      RationalFunction sum;
      for (std::size_t i = 0; i < n; ++i)
        if (!la[i].is_zero() && !m[i].is_zero()) sum += la[i] * m[i];
      RationalFunction want(tgt.hat(a, b));
      if (sum != want) {
        PoissonReport r;
        r.ok = false;
        r.a = tgt.vertices[a];
        r.b = tgt.vertices[b];
        r.detail = "{" + r.a + "," + r.b + "}/(x_a x_b) = " + sum.str() + ", expected " + want.str();
        return r;
      }
    }
  }
  return {};
}

std::map<std::string, Scalar> evaluate_at(const ClusterMap& f, const std::map<std::string, Scalar>& point) {
  std::map<std::string, Scalar> out;
  for (auto& [v, expr] : f.pullback) {
    try {
      out[v] = evaluate(expr, point);
    } catch (const ArithmeticError& e) {
      throw ArithmeticError("coordinate " + v + ": " + e.what());
    }
  }
  return out;
}

bool is_subtraction_free(const ClusterMap& f) {
  return std::all_of(f.pullback.begin(), f.pullback.end(), [](auto& kv) { return kv.second.subtraction_free(); });
}

nlohmann::json map_to_json(const ClusterMap& f) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [v, expr] : f.pullback) j[v] = expr.str();
  return j;
}

}  // namespace cx
