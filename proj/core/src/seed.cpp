#include "clusterx/seed.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cx {

Seed::Seed(std::vector<std::string> labels, const std::vector<std::string>& frozen_labels)
    : vertices(std::move(labels)) {
  const std::size_t n = vertices.size();
  frozen.assign(n, false);
  eps.assign(n, std::vector<Scalar>(n, Scalar(0)));
  d.assign(n, 1);
  for (auto& f : frozen_labels) frozen[at(f)] = true;
}

int Seed::index(const std::string& label) const {
  auto it = std::find(vertices.begin(), vertices.end(), label);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

int Seed::at(const std::string& label) const {
  int i = index(label);
  if (i < 0) throw SeedError("unknown vertex '" + label + "'");
  return i;
}

std::vector<std::string> Seed::frozen_labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (frozen[i]) out.push_back(vertices[i]);
  return out;
}

std::vector<std::string> Seed::mutable_labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (!frozen[i]) out.push_back(vertices[i]);
  return out;
}

bool operator==(const Seed& a, const Seed& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> pos(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    pos[i] = b.index(a.vertices[i]);
    if (pos[i] < 0) return false;
    if (a.frozen[i] != b.frozen[pos[i]] || a.d[i] != b.d[pos[i]]) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.eps[i][j] != b.eps[pos[i]][pos[j]]) return false;
  return true;
}

std::vector<std::string> validate(const Seed& s) {
  std::vector<std::string> out;
  const std::size_t n = s.size();
  if (s.frozen.size() != n || s.d.size() != n || s.eps.size() != n) {
    out.push_back("shape: frozen/d/eps sizes differ from the vertex count");
    return out;
  }
  std::set<std::string> seen;
  for (auto& v : s.vertices)
    if (!seen.insert(v).second) out.push_back("duplicate vertex '" + v + "'");
  for (std::size_t i = 0; i < n; ++i) {
    if (s.eps[i].size() != n) {
      out.push_back("shape: eps row " + s.vertices[i] + " has wrong length");
      return out;
    }
    if (s.d[i] <= 0) out.push_back("d must be positive: d(" + s.vertices[i] + ") = " + std::to_string(s.d[i]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& e = s.eps[i][j];
      if (e.get_den() != 1 && !(s.frozen[i] && s.frozen[j]))
        out.push_back("integrality off frozen block: eps(" + s.vertices[i] + "," + s.vertices[j] + ") = " +
                      e.get_str());
      if (j >= i && s.d[i] > 0 && s.d[j] > 0 && s.hat(i, j) != -s.hat(j, i))
        out.push_back("skew-symmetrizability: eps(" + s.vertices[i] + "," + s.vertices[j] + ")*d = " +
                      s.hat(i, j).get_str() + " vs " + s.hat(j, i).get_str());
    }
  }
  return out;
}

Seed mutate_seed(const Seed& s, const std::string& k) {
  const int kk = s.at(k);
  if (s.frozen[kk]) throw SeedError("mutation at frozen vertex '" + k + "'");
  Seed t = s;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& eik = s.eps[i][kk];
      const Scalar& ekj = s.eps[kk][j];
      if (static_cast<int>(i) == kk || static_cast<int>(j) == kk) {
        t.eps[i][j] = -s.eps[i][j];
      } else if (eik >= 0) {
        if (ekj > 0) t.eps[i][j] = s.eps[i][j] + eik * ekj;
      } else {
        if (ekj < 0) t.eps[i][j] = s.eps[i][j] - eik * ekj;
      }
    }
  }
  return t;
}

Seed mutate_seed(const Seed& s, const std::vector<std::string>& program) {
  Seed t = s;
  for (auto& k : program) t = mutate_seed(t, k);
  return t;
}

bool is_bijection_on(const VertexBijection& sigma, const std::vector<std::string>& labels) {
  if (sigma.size() != labels.size()) return false;
  std::set<std::string> dom(labels.begin(), labels.end()), img;
  for (auto& [a, b] : sigma) {
    if (!dom.count(a)) return false;
    img.insert(b);
  }
  return img.size() == sigma.size();
}

Seed apply_symmetry(const Seed& s, const VertexBijection& sigma) {
  if (!is_bijection_on(sigma, s.vertices)) throw SeedError("symmetry is not a bijection on the seed's vertices");
  Seed t = s;
  for (auto& v : t.vertices) v = sigma.at(v);
  return t;
}

VertexBijection invert(const VertexBijection& sigma) {
  VertexBijection out;
  for (auto& [a, b] : sigma) out[b] = a;
  return out;
}

namespace {

// Vertex invariant used to prune isomorphism and canonical-form searches.
std::string vertex_invariant(const Seed& s, std::size_t i) {
  std::vector<Scalar> row, col;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.eps[i][j] != 0) row.push_back(s.eps[i][j] * s.d[j]);
    if (s.eps[j][i] != 0) col.push_back(s.eps[j][i]);
  }
  std::sort(row.begin(), row.end());
  std::sort(col.begin(), col.end());
  std::ostringstream os;
  os << (s.frozen[i] ? 'F' : 'M') << s.d[i] << "|";
  for (auto& x : row) os << x.get_str() << ",";
  os << "|";
  for (auto& x : col) os << x.get_str() << ",";
  return os.str();
}

struct IsoSearch {
  const Seed& a;
  const Seed& b;
  std::vector<std::string> inva, invb;
  std::vector<int> assign;  // a-index -> b-index
  std::vector<bool> used;
  std::vector<std::size_t> order;
  bool all = false;
  std::vector<VertexBijection> found;

  IsoSearch(const Seed& x, const Seed& y) : a(x), b(y) {
    for (std::size_t i = 0; i < a.size(); ++i) inva.push_back(vertex_invariant(a, i));
    for (std::size_t i = 0; i < b.size(); ++i) invb.push_back(vertex_invariant(b, i));
    assign.assign(a.size(), -1);
    used.assign(b.size(), false);
    // Rarest invariant classes first.
    std::map<std::string, int> freq;
    for (auto& s : inva) ++freq[s];
    order.resize(a.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t p, std::size_t q) { return freq[inva[p]] < freq[inva[q]]; });
  }

  bool run(std::size_t depth) {
    if (depth == order.size()) {
      VertexBijection m;
      for (std::size_t i = 0; i < a.size(); ++i) m[a.vertices[i]] = b.vertices[assign[i]];
      found.push_back(std::move(m));
      return !all;
    }
    const std::size_t i = order[depth];
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || inva[i] != invb[j]) continue;
      bool ok = a.eps[i][i] == b.eps[j][j];
      for (std::size_t t = 0; ok && t < depth; ++t) {
        std::size_t p = order[t];
        int q = assign[p];
        ok = a.eps[i][p] == b.eps[j][q] && a.eps[p][i] == b.eps[q][j];
      }
      if (!ok) continue;
      assign[i] = static_cast<int>(j);
      used[j] = true;
      if (run(depth + 1)) return true;
      used[j] = false;
      assign[i] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<VertexBijection> find_isomorphism(const Seed& s1, const Seed& s2) {
  if (s1.size() != s2.size()) return std::nullopt;
  IsoSearch search(s1, s2);
  auto a = search.inva, b = search.invb;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return std::nullopt;
  search.run(0);
  if (search.found.empty()) return std::nullopt;
  return search.found.front();
}

std::vector<VertexBijection> all_isomorphisms(const Seed& s1, const Seed& s2) {
  if (s1.size() != s2.size()) return {};
  IsoSearch search(s1, s2);
  search.all = true;
  search.run(0);
  return search.found;
}

namespace {

struct CanonSearch {
  const Seed& s;
  std::vector<std::string> inv;
  std::vector<std::size_t> cell_of;  // position -> index of required invariant
  std::vector<std::string> cells;    // sorted invariant per position
  std::vector<std::size_t> perm, best;
  std::vector<Scalar> cur, bestkey;
  std::vector<bool> used;
  bool have = false;

  explicit CanonSearch(const Seed& x) : s(x) {
    for (std::size_t i = 0; i < s.size(); ++i) inv.push_back(vertex_invariant(s, i));
    cells = inv;
    std::sort(cells.begin(), cells.end());
    used.assign(s.size(), false);
  }

  // -1 / 0 / +1 comparing cur (prefix) against bestkey's prefix of the same length.
  int cmp_prefix() const {
    for (std::size_t t = 0; t < cur.size(); ++t)
      if (cur[t] != bestkey[t]) return cur[t] < bestkey[t] ? -1 : 1;
    return 0;
  }

  void run(std::size_t depth) {
    if (depth == s.size()) {
      if (!have || cur < bestkey) {
        bestkey = cur;
        best = perm;
        have = true;
      }
      return;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (used[i] || inv[i] != cells[depth]) continue;
      const std::size_t mark = cur.size();
      cur.push_back(s.eps[i][i]);
      for (std::size_t t = 0; t < depth; ++t) {
        cur.push_back(s.eps[perm[t]][i]);
        cur.push_back(s.eps[i][perm[t]]);
      }
      // A strictly smaller prefix beats the incumbent; a larger one is pruned.
      int c = have ? cmp_prefix() : -1;
      if (c <= 0) {
        perm.push_back(i);
        used[i] = true;
        run(depth + 1);
        used[i] = false;
        perm.pop_back();
      }
      cur.resize(mark);
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const Seed& s) {
  CanonSearch search(s);
  search.run(0);
  CanonicalForm out;
  const std::size_t n = s.size();
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < n; ++p) labels.push_back("v" + std::to_string(p));
  out.seed.vertices = labels;
  out.seed.frozen.resize(n);
  out.seed.d.resize(n);
  out.seed.eps.assign(n, std::vector<Scalar>(n));
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t i = search.best[p];
    out.map[s.vertices[i]] = labels[p];
    out.seed.frozen[p] = s.frozen[i];
    out.seed.d[p] = s.d[i];
    for (std::size_t q = 0; q < n; ++q) out.seed.eps[p][q] = s.eps[i][search.best[q]];
  }
  std::ostringstream os;
  for (std::size_t p = 0; p < n; ++p) os << (out.seed.frozen[p] ? 'F' : 'M') << out.seed.d[p] << ";";
  for (auto& row : out.seed.eps) {
    for (auto& x : row) os << x.get_str() << ",";
    os << "/";
  }
  out.key = os.str();
  return out;
}

ScalarMatrix poisson_tensor(const Seed& s) {
  ScalarMatrix out(s.size(), std::vector<Scalar>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out[i][j] = s.hat(i, j);
  return out;
}

nlohmann::json seed_to_json(const Seed& s) {
  nlohmann::json j;
  j["version"] = 1;
  j["vertices"] = s.vertices;
  j["frozen"] = s.frozen_labels();
  auto rows = nlohmann::json::array();
  for (auto& row : s.eps) {
    auto r = nlohmann::json::array();
    for (auto& x : row) r.push_back({x.get_num().get_si(), x.get_den().get_si()});
    rows.push_back(r);
  }
  j["eps"] = rows;
  j["d"] = s.d;
  return j;
}

namespace {
Scalar scalar_from_json(const nlohmann::json& x) {
  if (x.is_number_integer()) return Scalar(x.get<long>());
  if (x.is_array() && x.size() == 2) {
    Scalar q(x[0].get<long>(), x[1].get<long>());
    if (x[1].get<long>() <= 0) throw SeedError("eps denominators must be positive");
    q.canonicalize();
    return q;
  }
  if (x.is_string()) {
    Scalar q(x.get<std::string>());
    q.canonicalize();
    return q;
  }
  throw SeedError("eps entries must be integers, [num,den] pairs or \"p/q\" strings");
}
}  // namespace

Seed seed_from_json(const nlohmann::json& j) {
  if (j.contains("version") && j["version"].get<int>() != 1) throw SeedError("unsupported seed schema version");
  Seed s(j.at("vertices").get<std::vector<std::string>>(),
         j.value("frozen", std::vector<std::string>{}));
  const auto& eps = j.at("eps");
  if (eps.size() != s.size()) throw SeedError("eps has wrong number of rows");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (eps[i].size() != s.size()) throw SeedError("eps row has wrong length");
    for (std::size_t k = 0; k < s.size(); ++k) s.eps[i][k] = scalar_from_json(eps[i][k]);
  }
  if (j.contains("d")) {
    s.d = j["d"].get<std::vector<long>>();
    if (s.d.size() != s.size()) throw SeedError("d has wrong length");
  }
  return s;
}

std::string seed_to_dot(const Seed& s, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    os << "  \"" << s.vertices[i] << "\" [shape=" << (s.frozen[i] ? "doublecircle" : "circle") << ", label=\""
       << s.vertices[i] << (s.d[i] != 1 ? " (d=" + std::to_string(s.d[i]) + ")" : "") << "\"];\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (s.eps[i][j] > 0)
        os << "  \"" << s.vertices[i] << "\" -> \"" << s.vertices[j] << "\" [label=\"" << s.eps[i][j].get_str()
           << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string matrix_str(const ScalarMatrix& m) {
  std::ostringstream os;
  for (auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j].get_str();
    os << "\n";
  }
  return os.str();
}

}  // namespace cx
