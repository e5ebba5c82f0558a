#include "clusterx/explorer.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "clusterx/root_words.hpp"

namespace cx {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

// ---------------------------------------------------------------- exchange graph

const ExchangeEdge& ExchangeGraph::edge(std::size_t node, const std::string& k) const {
  for (auto& e : edges.at(node))
    if (e.vertex == k) return e;
  throw SeedError("node " + std::to_string(node) + " has no edge at " + k);
}

ExchangeGraph explore(const Seed& start, const ExploreOptions& opt) {
  auto bad = validate(start);
  if (!bad.empty()) throw SeedError("explore: invalid seed: " + bad.front());
  ExchangeGraph g;
  std::map<std::string, std::size_t> index;
  std::vector<VertexBijection> from_canonical;
  auto add = [&](const Seed& s, const CanonicalForm& cf) {
    index.emplace(cf.key, g.nodes.size());
    g.nodes.push_back(s);
    g.keys.push_back(cf.key);
    from_canonical.push_back(invert(cf.map));
  };
  add(start, canonical_form(start));
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    g.edges.emplace_back();
    for (auto& k : g.nodes[u].mutable_labels()) {
      Seed m = mutate_seed(g.nodes[u], k);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
          if (abs(m.eps[i][j]) > opt.max_entry) {
            g.verdict = "aborted: |eps(" + m.vertices[i] + "," + m.vertices[j] + ")| = " +
                        scalar_str(abs(m.eps[i][j])) + " exceeds " + std::to_string(opt.max_entry) +
                        " after mutating class " + std::to_string(u) + " at " + k + " (" +
                        std::to_string(g.nodes.size()) + " classes so far)";
            return g;
          }
      CanonicalForm cf = canonical_form(m);
      auto it = index.find(cf.key);
      std::size_t v;
      if (it == index.end()) {
        if (g.nodes.size() >= opt.max_nodes) {
          g.verdict = "aborted: more than " + std::to_string(opt.max_nodes) + " classes";
          return g;
        }
        v = g.nodes.size();
        add(m, cf);
      } else {
        v = it->second;
      }
      ExchangeEdge e{u, k, v, {}};
      for (auto& [label, canon] : cf.map) e.phi[label] = from_canonical[v].at(canon);
      g.edges[u].push_back(std::move(e));
    }
  }
  g.finite = true;
  g.verdict = "finite: " + std::to_string(g.nodes.size()) + " classes";
  return g;
}

nlohmann::json exchange_graph_to_json(const ExchangeGraph& g) {
  nlohmann::json j;
  j["verdict"] = g.verdict;
  j["finite"] = g.finite;
  auto nodes = nlohmann::json::array();
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    nlohmann::json n;
    n["seed"] = seed_to_json(g.nodes[u]);
    auto es = nlohmann::json::array();
    if (u < g.edges.size())
      for (auto& e : g.edges[u]) es.push_back({{"vertex", e.vertex}, {"to", e.to}, {"relabel", e.phi}});
    n["mutations"] = es;
    nodes.push_back(n);
  }
  j["classes"] = nodes;
  return j;
}

Seed restrict_seed(const Seed& s, const std::vector<std::string>& labels) {
  Seed r;
  r.vertices = labels;
  for (auto& v : labels) {
    r.frozen.push_back(s.is_frozen(v));
    r.d.push_back(s.d[s.at(v)]);
  }
  r.eps.assign(labels.size(), std::vector<Scalar>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) r.eps[i][j] = s.e(labels[i], labels[j]);
  return r;
}

Seed g2_triple_flag_seed() {
  RootDatum g2 = root_datum_preset("G2");
  return restrict_seed(word_seed(g2, parse_word(g2, "a b a b a b")), {"a1", "a2", "b1", "b2"});
}

// ---------------------------------------------------------------- modular complex

long ModularComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < face_counts.size(); ++d) chi += (d % 2 ? -1L : 1L) * static_cast<long>(face_counts[d]);
  return chi;
}

Crossing ModularComplex::crossing_at(std::size_t u, const std::string& k) const {
  for (std::size_t i = 0; i < dual_edges.size(); ++i) {
    const DualEdge& d = dual_edges[i];
    if (d.u == u && d.k == k) return {i, 1};
  }
  for (std::size_t i = 0; i < dual_edges.size(); ++i) {
    const DualEdge& d = dual_edges[i];
    if (d.v == u && d.k2 == k) return {i, -1};
  }
  throw SeedError("facet of simplex " + std::to_string(u) + " opposite " + k + " is not glued");
}

std::size_t ModularComplex::crossing_target(const Crossing& c) const {
  const DualEdge& d = dual_edges.at(c.edge);
  return c.dir > 0 ? d.v : d.u;
}

const VertexBijection& ModularComplex::crossing_map(const Crossing& c, VertexBijection& scratch) const {
  const DualEdge& d = dual_edges.at(c.edge);
  if (c.dir > 0) return d.phi;
  scratch = invert(d.phi);
  return scratch;
}

ClusterMap ModularComplex::crossing_cluster_map(const Crossing& c) const {
  const DualEdge& d = dual_edges.at(c.edge);
  const std::size_t from = c.dir > 0 ? d.u : d.v;
  const std::string& k = c.dir > 0 ? d.k : d.k2;
  VertexBijection scratch;
  ClusterMap m = mutation_map(simplices[from], k);
  ClusterMap sym = symmetry_map(m.target, crossing_map(c, scratch));
  if (!(sym.target == simplices[crossing_target(c)]))
    throw SeedError("gluing map of " + d.name + " is not a seed isomorphism");
  return compose(m, sym);
}

ClusterMap ModularComplex::monodromy(const std::vector<Crossing>& path) const {
  if (path.empty()) throw SeedError("monodromy of an empty path");
  const DualEdge& d0 = dual_edges.at(path.front().edge);
  ClusterMap f = identity_map(simplices[path.front().dir > 0 ? d0.u : d0.v]);
  for (auto& c : path) f = compose(f, crossing_cluster_map(c));
  return f;
}

namespace {

// Evaluation modulo a 61-bit prime: a cheap filter before exact symbolic confirmation.
const mpz_class& modulus() {
  static const mpz_class p("2305843009213693951");
  return p;
}

bool eval_mod(const Polynomial& f, const std::map<VarId, mpz_class>& pt, mpz_class& out) {
  out = 0;
  const auto& vs = f.vars();
  for (std::size_t t = 0; t < f.num_terms(); ++t) {
    mpz_class term = f.coef(t);
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const unsigned e = f.exp(t, v);
      if (!e) continue;
      mpz_class pw;
      mpz_powm_ui(pw.get_mpz_t(), pt.at(vs[v]).get_mpz_t(), e, modulus().get_mpz_t());
      term = term * pw % modulus();
    }
    out = (out + term) % modulus();
  }
  if (out < 0) out += modulus();
  return true;
}

bool apply_mod(const ClusterMap& m, const std::map<std::string, mpz_class>& in, std::map<std::string, mpz_class>& out) {
  std::map<VarId, mpz_class> pt;
  for (auto& [k, v] : in) pt[var_id(k)] = v;
  out.clear();
  for (auto& [v, f] : m.pullback) {
    mpz_class n, d, inv;
    eval_mod(f.num(), pt, n);
    eval_mod(f.den(), pt, d);
    if (d == 0) return false;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), modulus().get_mpz_t());
    out[v] = n * inv % modulus();
  }
  return true;
}

bool is_identity(const ClusterMap& m) {
  for (auto& [v, f] : m.pullback)
    if (f != RationalFunction::var(v)) return false;
  return true;
}

}  // namespace

int monodromy_period(const ModularComplex& c, const std::vector<Crossing>& cycle, int bound) {
  const ClusterMap m = c.monodromy(cycle);
  std::map<std::string, mpz_class> start, cur, next;
  long seedv = 1000003;
  for (auto& v : m.source.vertices) {
    start[v] = mpz_class(seedv);
    seedv = seedv * 7919 + 17;
  }
  cur = start;
  for (int p = 1; p <= bound; ++p) {
    if (!apply_mod(m, cur, next)) return 0;
    cur = next;
    if (cur != start) continue;
    ClusterMap power = m;
    for (int i = 1; i < p; ++i) power = compose(power, m);
    if (is_identity(power)) return p;
  }
  return 0;
}

FaceType classify_ridge(const ModularComplex& c, std::size_t ridge, int bound) {
  const RidgeClass& r = c.ridges.at(ridge);
  if (r.boundary) return FaceType::Finite;
  return monodromy_period(c, r.cycle, bound) > 0 ? FaceType::Finite : FaceType::Infinite;
}

ModularComplex build_modular_complex(const ExchangeGraph& g, const ComplexOptions& opt) {
  if (!g.finite) throw SeedError("modular complex needs a finite exchange graph (" + g.verdict + ")");
  ModularComplex mc;
  mc.simplices = g.nodes;
  const std::size_t N = mc.simplices.size();

  // Dual edges: one per pair of glued facets, from the first side met.
  std::map<std::pair<std::size_t, std::string>, std::pair<std::size_t, int>> facet;
  for (std::size_t u = 0; u < N; ++u)
    for (auto& e : g.edges[u]) {
      auto it = facet.find({u, e.vertex});
      if (it != facet.end()) {
        const DualEdge& d = mc.dual_edges[it->second.first];
        if (it->second.second < 0 && invert(d.phi) != e.phi)
          mc.notes.push_back("facet " + std::to_string(u) + ":" + e.vertex + " is glued along " + d.name +
                             "; its own isomorphism differs by a seed automorphism");
        continue;
      }
      DualEdge d{u, e.vertex, e.to, e.phi.at(e.vertex), e.phi,
                 "n" + std::to_string(u) + ":" + e.vertex};
      const std::size_t id = mc.dual_edges.size();
      facet[{u, d.k}] = {id, 1};
      if (!(d.v == u && d.k2 == d.k)) facet[{d.v, d.k2}] = {id, -1};
      mc.dual_edges.push_back(std::move(d));
    }

  // Face classes: every nonempty vertex subset of every simplex, glued across facets.
  const std::size_t n = N ? mc.simplices[0].size() : 0;
  if (n > 16) throw SeedError("modular complex supports seeds with at most 16 vertices");
  const std::size_t full = (std::size_t{1} << n) - 1;
  auto fid = [&](std::size_t u, std::size_t mask) { return u * (full + 1) + mask; };
  UnionFind uf(N * (full + 1));
  auto image_mask = [&](std::size_t u, std::size_t v, const VertexBijection& phi, std::size_t mask) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) out |= std::size_t{1} << mc.simplices[v].at(phi.at(mc.simplices[u].vertices[i]));
    return out;
  };
  for (auto& d : mc.dual_edges) {
    const std::size_t facet_mask = full & ~(std::size_t{1} << mc.simplices[d.u].at(d.k));
    for (std::size_t s = facet_mask; s; s = (s - 1) & facet_mask) uf.unite(fid(d.u, s), fid(d.v, image_mask(d.u, d.v, d.phi, s)));
  }
  mc.face_counts.assign(n, 0);
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> classes;  // root -> (u, mask)
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t s = 1; s <= full; ++s) classes[uf.find(fid(u, s))].push_back({u, s});
  auto labels_of = [&](std::size_t u, std::size_t mask) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) out.push_back(mc.simplices[u].vertices[i]);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::map<std::size_t, std::size_t> vertex_class_of_root;
  for (auto& [root, members] : classes) {
    const std::size_t dim = static_cast<std::size_t>(__builtin_popcountll(members.front().second)) - 1;
    ++mc.face_counts[dim];
    if (dim == 0) {
      vertex_class_of_root[root] = mc.vertex_classes.size();
      mc.vertex_classes.emplace_back();
      for (auto& [u, s] : members) mc.vertex_classes.back().push_back({u, labels_of(u, s).front()});
    }
  }

  // Ridges: rotate through facets from the least member.
  if (n >= 2) {
    for (auto& [root, members] : classes) {
      const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(members.front().second));
      if (size != n - 2) continue;
      RidgeClass r;
      for (auto& [u, s] : members) r.members.push_back({u, labels_of(u, s)});
      std::sort(r.members.begin(), r.members.end());
      const std::size_t u0 = r.members.front().first;
      std::size_t mask0 = 0;
      for (auto& l : r.members.front().second) mask0 |= std::size_t{1} << mc.simplices[u0].at(l);
      std::vector<std::size_t> comp;
      for (std::size_t i = 0; i < n; ++i)
        if (!(mask0 >> i & 1)) comp.push_back(i);
      // State: (simplex, ridge mask, exit position).
      std::size_t u = u0, mask = mask0, exit = comp[0];
      const std::size_t exit0 = exit;
      for (std::size_t steps = 0;; ++steps) {
        const Seed& su = mc.simplices[u];
        const std::string k = su.vertices[exit];
        if (su.frozen[exit]) {
          r.boundary = true;
          r.cycle.clear();
          break;
        }
        std::size_t other = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (!(mask >> i & 1) && i != exit) other = i;
        auto fc = facet.at({u, k});
        Crossing c{fc.first, fc.second};
        r.cycle.push_back(c);
        VertexBijection scratch;
        const VertexBijection& phi = mc.crossing_map(c, scratch);
        const std::size_t v = mc.crossing_target(c);
        mask = image_mask(u, v, phi, mask);
        exit = static_cast<std::size_t>(mc.simplices[v].at(phi.at(su.vertices[other])));
        u = v;
        if (u == u0 && mask == mask0 && exit == exit0) break;
        if (steps > 4 * N * n * n) throw SeedError("ridge rotation did not close");
      }
      r.period = r.boundary ? 0 : monodromy_period(mc, r.cycle, opt.monodromy_bound);
      r.type = (r.boundary || r.period > 0) ? FaceType::Finite : FaceType::Infinite;
      mc.ridges.push_back(std::move(r));
    }
  }

  // A vertex lying on an infinite ridge is infinite.
  mc.vertex_types.assign(mc.vertex_classes.size(), FaceType::Finite);
  for (auto& r : mc.ridges) {
    if (r.type != FaceType::Infinite) continue;
    for (auto& [u, labels] : r.members)
      for (auto& l : labels) {
        const std::size_t root = uf.find(fid(u, std::size_t{1} << mc.simplices[u].at(l)));
        mc.vertex_types[vertex_class_of_root.at(root)] = FaceType::Infinite;
      }
  }
  return mc;
}

nlohmann::json complex_to_json(const ModularComplex& c) {
  nlohmann::json j;
  j["simplices"] = c.simplices.size();
  j["face_counts"] = c.face_counts;
  j["euler_characteristic"] = c.euler_characteristic();
  auto duals = nlohmann::json::array();
  for (auto& d : c.dual_edges)
    duals.push_back({{"name", d.name}, {"from", d.u}, {"omit", d.k}, {"to", d.v}, {"omit_to", d.k2}, {"map", d.phi}});
  j["dual_edges"] = duals;
  auto ridges = nlohmann::json::array();
  for (auto& r : c.ridges) {
    nlohmann::json rj;
    auto mem = nlohmann::json::array();
    for (auto& [u, ls] : r.members) mem.push_back({{"simplex", u}, {"labels", ls}});
    rj["members"] = mem;
    auto cyc = nlohmann::json::array();
    for (auto& x : r.cycle) cyc.push_back(c.dual_edges[x.edge].name + (x.dir > 0 ? "" : "^-1"));
    rj["cycle"] = cyc;
    rj["type"] = r.type == FaceType::Finite ? "finite" : "infinite";
    rj["period"] = r.period;
    rj["boundary"] = r.boundary;
    ridges.push_back(rj);
  }
  j["ridges"] = ridges;
  auto verts = nlohmann::json::array();
  for (std::size_t i = 0; i < c.vertex_classes.size(); ++i) {
    auto mem = nlohmann::json::array();
    for (auto& [u, l] : c.vertex_classes[i]) mem.push_back(std::to_string(u) + ":" + l);
    verts.push_back({{"members", mem}, {"type", c.vertex_types[i] == FaceType::Finite ? "finite" : "infinite"}});
  }
  j["vertices"] = verts;
  j["notes"] = c.notes;
  return j;
}

std::string dual_graph_dot(const ModularComplex& c) {
  std::ostringstream os;
  os << "graph dual {\n";
  for (std::size_t u = 0; u < c.simplices.size(); ++u) os << "  n" << u << ";\n";
  for (auto& d : c.dual_edges) os << "  n" << d.u << " -- n" << d.v << " [label=\"" << d.k << "/" << d.k2 << "\"];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- presentations

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GroupWord cyclic_reduce(const GroupWord& w) {
  GroupWord r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  return GroupWord(r.begin() + static_cast<long>(i), r.begin() + static_cast<long>(j));
}

GroupWord inverse(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

namespace {

GroupWord least_rotation(const GroupWord& w) {
  GroupWord best = w;
  GroupWord r = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

GroupWord cyclic_key(const GroupWord& w, bool allow_inverse) {
  GroupWord c = cyclic_reduce(w);
  GroupWord a = least_rotation(c);
  if (!allow_inverse) return a;
  GroupWord b = least_rotation(inverse(c));
  return std::min(a, b);
}

}  // namespace

bool cyclically_equal(const GroupWord& a, const GroupWord& b, bool allow_inverse) {
  return cyclic_key(a, allow_inverse) == cyclic_key(b, allow_inverse);
}

std::string Presentation::word_str(const GroupWord& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int g = std::abs(w[i]) - 1;
    out += (i ? " " : "") + generators.at(static_cast<std::size_t>(g)) + (w[i] < 0 ? "^-1" : "");
  }
  return out;
}

std::string Presentation::str() const {
  std::string out = "< " + join(generators, ", ") + " |";
  for (std::size_t i = 0; i < relators.size(); ++i) out += (i ? ", " : " ") + word_str(relators[i]);
  return out + " >";
}

nlohmann::json presentation_to_json(const Presentation& p) {
  nlohmann::json j;
  j["generators"] = p.generators;
  auto rs = nlohmann::json::array();
  for (auto& r : p.relators) rs.push_back(p.word_str(r));
  j["relators"] = rs;
  return j;
}

std::vector<std::size_t> spanning_tree(const ModularComplex& c, TreeStrategy s) {
  const std::size_t N = c.simplices.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(N);  // (edge, neighbour)
  for (std::size_t i = 0; i < c.dual_edges.size(); ++i) {
    const DualEdge& d = c.dual_edges[i];
    adj[d.u].push_back({i, d.v});
    if (d.v != d.u) adj[d.v].push_back({i, d.u});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<bool> seen(N, false);
  std::vector<std::size_t> tree;
  if (N == 0) return tree;
  if (s == TreeStrategy::BFS) {
    std::deque<std::size_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop_front();
      for (auto& [e, y] : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          tree.push_back(e);
          q.push_back(y);
        }
    }
  } else {
    std::function<void(std::size_t)> dfs = [&](std::size_t x) {
      seen[x] = true;
      for (auto& [e, y] : adj[x])
        if (!seen[y]) {
          tree.push_back(e);
          dfs(y);
        }
    };
    dfs(0);
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

Presentation fundamental_group(const ModularComplex& c, const std::vector<std::size_t>& tree) {
  Presentation p;
  std::set<std::size_t> in_tree(tree.begin(), tree.end());
  std::map<std::size_t, int> gen;
  for (std::size_t i = 0; i < c.dual_edges.size(); ++i)
    if (!in_tree.count(i)) {
      gen[i] = static_cast<int>(p.generators.size()) + 1;
      p.generators.push_back(c.dual_edges[i].name);
    }
  for (auto& r : c.ridges) {
    if (r.boundary || r.type != FaceType::Finite) continue;
    GroupWord w;
    for (auto& x : r.cycle)
      if (!in_tree.count(x.edge)) w.push_back(x.dir * gen.at(x.edge));
    GroupWord full;
    for (int i = 0; i < r.period; ++i) full.insert(full.end(), w.begin(), w.end());
    full = cyclic_reduce(full);
    if (!full.empty()) p.relators.push_back(full);
  }
  return p;
}

Presentation fundamental_group(const ModularComplex& c, TreeStrategy s) {
  return fundamental_group(c, spanning_tree(c, s));
}

namespace {

GroupWord substitute_word(const GroupWord& w, int g, const GroupWord& value) {
  GroupWord out;
  const GroupWord inv = inverse(value);
  for (int l : w) {
    if (l == g)
      out.insert(out.end(), value.begin(), value.end());
    else if (l == -g)
      out.insert(out.end(), inv.begin(), inv.end());
    else
      out.push_back(l);
  }
  return free_reduce(out);
}

}  // namespace

Presentation tietze_simplify(Presentation p, std::size_t max_length) {
  for (;;) {
    std::vector<GroupWord> rels;
    std::set<GroupWord> keys;
    for (auto& r : p.relators) {
      GroupWord c = cyclic_reduce(r);
      if (c.empty() || !keys.insert(cyclic_key(c, true)).second) continue;
      rels.push_back(c);
    }
    p.relators = rels;
    // Shortest relator with a generator occurring exactly once; ties by position.
    std::size_t best_r = p.relators.size();
    int best_g = 0;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      const GroupWord& r = p.relators[i];
      if (r.size() > max_length) continue;
      if (best_r < p.relators.size() && r.size() >= p.relators[best_r].size()) continue;
      std::map<int, int> occ;
      for (int l : r) ++occ[std::abs(l)];
      for (int l : r)
        if (occ[std::abs(l)] == 1) {
          best_r = i;
          best_g = std::abs(l);
          break;
        }
    }
    if (best_r == p.relators.size()) return p;
    // Rotate so that the generator comes first: g^e w = 1, hence g = w^-e.
    GroupWord r = p.relators[best_r];
    auto pos = std::find_if(r.begin(), r.end(), [&](int l) { return std::abs(l) == best_g; });
    std::rotate(r.begin(), pos, r.end());
    const int e = r.front() > 0 ? 1 : -1;
    GroupWord rest(r.begin() + 1, r.end());
    GroupWord value = e > 0 ? inverse(rest) : rest;
    std::vector<GroupWord> next;
    for (std::size_t i = 0; i < p.relators.size(); ++i)
      if (i != best_r) next.push_back(substitute_word(p.relators[i], best_g, value));
    // Drop the generator and renumber the ones after it.
    for (auto& w : next)
      for (int& l : w)
        if (std::abs(l) > best_g) l += l > 0 ? -1 : 1;
    p.generators.erase(p.generators.begin() + (best_g - 1));
    p.relators = next;
  }
}

namespace {

using Aut = std::array<GroupWord, 2>;

GroupWord apply_aut(const Aut& a, const GroupWord& w) {
  GroupWord out;
  for (int l : w) {
    const GroupWord& img = a[static_cast<std::size_t>(std::abs(l) - 1)];
    if (l > 0)
      out.insert(out.end(), img.begin(), img.end());
    else {
      GroupWord inv = inverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

// Whitehead automorphisms of F2 with their inverses.
std::vector<std::pair<Aut, Aut>> whitehead_moves() {
  std::vector<std::pair<Aut, Aut>> out;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      Aut same{GroupWord{s1}, GroupWord{2 * s2}};
      out.push_back({same, same});
      Aut swap{GroupWord{2 * s2}, GroupWord{s1}};
      out.push_back({swap, Aut{GroupWord{2 * s1}, GroupWord{s2}}});
    }
  for (int x : {1, 2}) {
    const int y = 3 - x;
    for (int s : {1, -1}) {
      const int ys = s * y;
      auto make = [&](GroupWord img) {
        Aut a{GroupWord{1}, GroupWord{2}};
        a[static_cast<std::size_t>(x - 1)] = std::move(img);
        return a;
      };
      out.push_back({make({x, ys}), make({x, -ys})});
      out.push_back({make({-ys, x}), make({ys, x})});
      out.push_back({make({-ys, x, ys}), make({ys, x, -ys})});
    }
  }
  return out;
}

}  // namespace

bool is_free_basis(const GroupWord& u0, const GroupWord& v0) {
  GroupWord u = free_reduce(u0), v = free_reduce(v0);
  for (int guard = 0; guard < 10000; ++guard) {
    if (u.empty() || v.empty()) return false;
    if (u.size() == 1 && v.size() == 1) return std::abs(u[0]) != std::abs(v[0]);
    const std::size_t total = u.size() + v.size();
    bool moved = false;
    for (int which = 0; which < 2 && !moved; ++which) {
      GroupWord& a = which ? v : u;
      const GroupWord& b = which ? u : v;
      const GroupWord bi = inverse(b);
      for (const GroupWord* m : {&b, &bi}) {
        GroupWord right = a, left = *m;
        right.insert(right.end(), m->begin(), m->end());
        left.insert(left.end(), a.begin(), a.end());
        for (GroupWord cand : {free_reduce(right), free_reduce(left)})
          if (cand.size() + b.size() < total) {
            a = cand;
            moved = true;
            break;
          }
        if (moved) break;
      }
    }
    if (!moved) return false;
  }
  return false;
}

BraidMatch match_g2_braid_relator(const Presentation& p) {
  BraidMatch m;
  if (p.generators.size() != 2 || p.relators.size() != 1) {
    m.detail = "expected 2 generators and 1 relator, got " + std::to_string(p.generators.size()) + " and " +
               std::to_string(p.relators.size());
    return m;
  }
  const GroupWord target{2, 1, 2, 1, 2, 1, -2, -1, -2, -1, -2, -1};  // bababa (ababab)^-1
  const GroupWord R = cyclic_reduce(p.relators[0]);
  const GroupWord goal = cyclic_key(target, true);
  // Search from R through Whitehead moves that never lengthen beyond |R|; peak reduction makes
  // this complete when R lies in the orbit of the target.
  const auto moves = whitehead_moves();
  struct State {
    GroupWord word;
    Aut inv;  // psi^-1 with psi(R) ~ word
  };
  std::map<GroupWord, std::size_t> seen;
  std::vector<State> states{{R, Aut{GroupWord{1}, GroupWord{2}}}};
  seen[cyclic_key(R, true)] = 0;
  const std::size_t limit = std::max(R.size(), target.size());
  for (std::size_t i = 0; i < states.size() && states.size() < 500000; ++i) {
    if (cyclic_key(states[i].word, true) == goal) {
      // R ~ psi^-1(target): the braid generators are psi^-1(a), psi^-1(b).
      m.a = states[i].inv[0];
      m.b = states[i].inv[1];
      GroupWord img = apply_aut(states[i].inv, target);
      m.ok = cyclically_equal(img, R, true) && is_free_basis(m.a, m.b);
      m.detail = "a = " + p.word_str(m.a) + ", b = " + p.word_str(m.b) +
                 (m.ok ? "" : " (certificate failed)");
      return m;
    }
    for (auto& [f, finv] : moves) {
      GroupWord w = cyclic_reduce(apply_aut(f, states[i].word));
      if (w.size() > limit) continue;
      GroupWord key = cyclic_key(w, true);
      if (seen.count(key)) continue;
      seen[key] = states.size();
      Aut inv{apply_aut(states[i].inv, finv[0]), apply_aut(states[i].inv, finv[1])};
      states.push_back({w, inv});
    }
  }
  m.detail = "relator " + p.word_str(R) + " is not in the automorphism orbit of bababa (ababab)^-1 (" +
             std::to_string(states.size()) + " words searched)";
  return m;
}

// ---------------------------------------------------------------- the G2 case

namespace {

struct ReferenceLambda {
  int p, q;  // 1-based seed numbers
  const char* from;
  const char* to;
};

const ReferenceLambda kLambdas[14] = {
    {1, 2, "bcd", "bcd"}, {1, 4, "acd", "bdc"}, {1, 7, "abd", "abd"}, {1, 2, "abc", "bad"}, {2, 3, "acd", "acd"},
    {2, 3, "abc", "bad"}, {3, 5, "bcd", "bdc"}, {3, 6, "abc", "abd"}, {4, 5, "acd", "acd"}, {4, 4, "abd", "abc"},
    {5, 5, "abd", "abc"}, {6, 6, "bcd", "acd"}, {6, 7, "abc", "abc"}, {7, 7, "bcd", "acd"},
};

char omitted(const char* face) {
  for (char c : std::string("abcd"))
    if (std::string(face).find(c) == std::string::npos) return c;
  return '?';
}

}  // namespace

std::optional<ReferenceMatching> match_reference_seeds(const ModularComplex& c) {
  const std::size_t N = c.simplices.size();
  if (N != 7) return std::nullopt;
  for (std::size_t n1 = 0; n1 < N; ++n1) {
    const Seed& s = c.simplices[n1];
    if (s.size() != 4) return std::nullopt;
    std::vector<std::string> top, bottom;
    for (std::size_t i = 0; i < 4; ++i) (s.d[i] == 3 ? top : bottom).push_back(s.vertices[i]);
    if (top.size() != 2 || bottom.size() != 2) continue;
    for (int t = 0; t < 2; ++t)
      for (int b = 0; b < 2; ++b) {
        ReferenceMatching m;
        std::vector<bool> known(7, false);
        m.node.assign(7, 0);
        m.label.assign(7, {});
        m.node[0] = n1;
        m.label[0] = {{'a', top[t]}, {'b', top[1 - t]}, {'c', bottom[b]}, {'d', bottom[1 - b]}};
        known[0] = true;
        bool progress = true, bad = false;
        while (progress && !bad) {
          progress = false;
          for (auto& L : kLambdas) {
            const int p = L.p - 1, q = L.q - 1;
            if (known[p] == known[q]) continue;
            const bool fwd = known[p];
            const int src = fwd ? p : q, dst = fwd ? q : p;
            const char* sf = fwd ? L.from : L.to;
            const char* df = fwd ? L.to : L.from;
            Crossing x = c.crossing_at(m.node[src], m.label[src].at(omitted(sf)));
            VertexBijection scratch;
            const VertexBijection& phi = c.crossing_map(x, scratch);
            m.node[dst] = c.crossing_target(x);
            for (int i = 0; i < 3; ++i) m.label[dst][df[i]] = phi.at(m.label[src].at(sf[i]));
            m.label[dst][omitted(df)] = phi.at(m.label[src].at(omitted(sf)));
            known[dst] = true;
            progress = true;
          }
        }
        if (std::find(known.begin(), known.end(), false) != known.end()) continue;
        // Verify every table, the multipliers and the bijections.
        std::set<std::size_t> nodes(m.node.begin(), m.node.end()), used;
        bool ok = nodes.size() == 7;
        for (int k = 0; ok && k < 7; ++k) {
          const Seed& sk = c.simplices[m.node[k]];
          for (char letter : std::string("abcd")) ok = ok && sk.d[sk.at(m.label[k].at(letter))] == (letter < 'c' ? 3 : 1);
        }
        for (int i = 0; ok && i < 14; ++i) {
          const auto& L = kLambdas[i];
          const int p = L.p - 1, q = L.q - 1;
          Crossing x = c.crossing_at(m.node[p], m.label[p].at(omitted(L.from)));
          VertexBijection scratch;
          const VertexBijection& phi = c.crossing_map(x, scratch);
          ok = c.crossing_target(x) == m.node[q] && used.insert(x.edge).second;
          for (int j = 0; ok && j < 3; ++j) ok = phi.at(m.label[p].at(L.from[j])) == m.label[q].at(L.to[j]);
          m.lambda.push_back(x);
        }
        if (ok && used.size() == c.dual_edges.size()) return m;
      }
  }
  return std::nullopt;
}

std::vector<std::size_t> reference_tree(const ReferenceMatching& m) {
  std::vector<std::size_t> out;
  for (int i : {1, 2, 6, 8, 9, 13}) out.push_back(m.lambda.at(static_cast<std::size_t>(i - 1)).edge);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::pair<int, int>>> reference_relators() {
  return {
      {{4, -1}, {10, 1}, {3, 1}, {14, -1}, {3, -1}},
      {{5, 1}, {12, -1}, {7, 1}, {11, 1}, {7, -1}},
      {{5, 1}, {7, 1}},
      {{4, 1}, {3, -1}},
      {{5, -1}, {4, -1}},
      {{11, -1}, {10, 1}},
      {{12, -1}, {14, 1}},
  };
}

std::vector<std::vector<std::pair<int, int>>> relators_in_lambdas(const Presentation& p, const ModularComplex& c,
                                                                  const ReferenceMatching& m) {
  std::map<std::string, std::pair<int, int>> by_name;  // dual-edge name -> (lambda, sign of forward crossing)
  for (std::size_t i = 0; i < m.lambda.size(); ++i)
    by_name[c.dual_edges[m.lambda[i].edge].name] = {static_cast<int>(i) + 1, m.lambda[i].dir};
  std::vector<std::vector<std::pair<int, int>>> out;
  for (auto& r : p.relators) {
    std::vector<std::pair<int, int>> w;
    for (int l : r) {
      auto [lam, sign] = by_name.at(p.generators.at(static_cast<std::size_t>(std::abs(l) - 1)));
      w.push_back({lam, (l > 0 ? 1 : -1) * sign});
    }
    out.push_back(w);
  }
  return out;
}

namespace {

using Point = std::map<std::string, Scalar>;

Point mutate_point(const Seed& s, const Point& x, const std::string& k) {
  Point y = x;
  const Scalar xk = x.at(k);
  const int kk = s.at(k);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (static_cast<int>(i) == kk || s.eps[i][kk] == 0) continue;
    const long e = s.eps[i][kk].get_num().get_si();
    const Scalar f = e > 0 ? Scalar(1 + xk) : Scalar(1 + 1 / xk);
    Scalar& yi = y[s.vertices[i]];
    for (long t = 0; t < std::labs(e); ++t) yi = e > 0 ? Scalar(yi * f) : Scalar(yi / f);
  }
  y[k] = 1 / xk;
  return y;
}

Point sample_point(const Seed& s) {
  Point x;
  long v = 2;
  for (auto& l : s.vertices) x[l] = Scalar(v++, 7);
  return x;
}

}  // namespace

BraidActionReport braid_action_check(const ModularComplex& c, const ReferenceMatching& m, bool with_loops) {
  BraidActionReport rep;
  const Seed& s = c.simplices.at(m.node.at(0));
  const std::string b = m.label[0].at('b'), cc = m.label[0].at('c');
  const std::vector<std::string> A{b, cc, b}, B{cc, b, cc};
  auto repeat = [](std::initializer_list<const std::vector<std::string>*> parts, int times) {
    std::vector<std::string> out;
    for (int t = 0; t < times; ++t)
      for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
  };
  std::ostringstream os;

  // Persistent labels: (ab)^3 and (ba)^3 as 18-step mutation programs.
  const ClusterMap lhs = mutation_sequence_map(s, repeat({&A, &B}, 3));
  const ClusterMap rhs = mutation_sequence_map(s, repeat({&B, &A}, 3));
  rep.ok = equals_up_to_permutation(lhs, rhs).has_value();
  os << "a = mu_" << b << " mu_" << cc << " mu_" << b << ", b = mu_" << cc << " mu_" << b << " mu_" << cc
     << "; 18-mutation composites " << (rep.ok ? "agree" : "differ") << " up to permutation";
  if (!rep.ok)
    for (auto& v : s.vertices)
      if (lhs.pullback.at(v) != rhs.pullback.at(v)) {
        os << " (" << v << ": " << lhs.pullback.at(v).str() << " vs " << rhs.pullback.at(v).str() << ")";
        break;
      }

  // Each generator followed by its isomorphism back to seed 1. These maps grow quickly, so they
  // are compared at an exact rational point, which suffices to show they differ.
  auto ia = find_isomorphism(mutate_seed(s, A), s), ib = find_isomorphism(mutate_seed(s, B), s);
  if (ia && ib) {
    auto run = [&](const std::string& word) {
      Point x = sample_point(s);
      for (char ch : word) {
        const auto& seq = ch == 'a' ? A : B;
        const auto& iso = ch == 'a' ? *ia : *ib;
        Seed cur = s;
        for (auto& k : seq) {
          x = mutate_point(cur, x, k);
          cur = mutate_seed(cur, k);
        }
        Point y;
        for (auto& [v, val] : x) y[iso.at(v)] = val;
        x = y;
      }
      return x;
    };
    rep.relabeled_ok = run("ababab") == run("bababa");
    os << "; with relabeling back to seed 1: " << (rep.relabeled_ok ? "equal at a sample point" : "differ at a sample point");
  } else {
    os << "; a or b does not return to a seed isomorphic to seed 1";
  }

  // The braid generators found in pi_1, as loops of crossings based at simplex 0.
  const auto tree = spanning_tree(c, TreeStrategy::BFS);
  const Presentation p = tietze_simplify(fundamental_group(c, tree));
  const BraidMatch bm = match_g2_braid_relator(p);
  if (!with_loops) {
    os << "; pi_1 loop reading skipped";
  } else if (bm.ok) {
    const std::size_t N = c.simplices.size();
    std::vector<std::vector<Crossing>> path(N);
    std::vector<bool> seen(N, false);
    seen[0] = true;
    std::deque<std::size_t> q{0};
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop_front();
      for (std::size_t e : tree) {
        const DualEdge& d = c.dual_edges[e];
        for (int dir : {1, -1}) {
          const std::size_t from = dir > 0 ? d.u : d.v, to = dir > 0 ? d.v : d.u;
          if (from != x || seen[to]) continue;
          seen[to] = true;
          path[to] = path[x];
          path[to].push_back({e, dir});
          q.push_back(to);
        }
      }
    }
    auto reversed = [](std::vector<Crossing> v) {
      std::reverse(v.begin(), v.end());
      for (auto& x : v) x.dir = -x.dir;
      return v;
    };
    std::map<std::string, std::size_t> by_name;
    for (std::size_t i = 0; i < c.dual_edges.size(); ++i) by_name[c.dual_edges[i].name] = i;
    auto loop = [&](const GroupWord& w) {
      std::vector<Crossing> out;
      for (int l : w) {
        const std::size_t e = by_name.at(p.generators.at(static_cast<std::size_t>(std::abs(l) - 1)));
        std::vector<Crossing> g = path[c.dual_edges[e].u];
        g.push_back({e, 1});
        auto back = reversed(path[c.dual_edges[e].v]);
        g.insert(g.end(), back.begin(), back.end());
        if (l < 0) g = reversed(g);
        out.insert(out.end(), g.begin(), g.end());
      }
      return out;
    };
    auto push = [&](const std::vector<Crossing>& path_) {
      Assignment x;
      for (auto& v : c.simplices[0].vertices) x.emplace(v, RationalFunction::var(v));
      for (auto& cr : path_) {
        const DualEdge& d = c.dual_edges[cr.edge];
        VertexBijection scratch;
        const VertexBijection& phi = c.crossing_map(cr, scratch);
        Assignment y = run_mutations(c.simplices[cr.dir > 0 ? d.u : d.v], x, {cr.dir > 0 ? d.k : d.k2});
        x.clear();
        for (auto& [v, f] : y) x.emplace(phi.at(v), f);
      }
      return x;
    };
    const auto la = loop(bm.a), lb = loop(bm.b);
    auto cat = [](std::initializer_list<const std::vector<Crossing>*> parts) {
      std::vector<Crossing> out;
      for (int t = 0; t < 3; ++t)
        for (auto* x : parts) out.insert(out.end(), x->begin(), x->end());
      return out;
    };
    rep.loops_ok = push(cat({&la, &lb})) == push(cat({&lb, &la}));
    os << "; pi_1 generators as loops (a = " << p.word_str(bm.a) << ", b = " << p.word_str(bm.b) << "): (ab)^3 "
       << (rep.loops_ok ? "=" : "!=") << " (ba)^3";
  } else {
    os << "; pi_1 braid generators not found: " << bm.detail;
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace cx
