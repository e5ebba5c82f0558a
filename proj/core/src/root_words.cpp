#include "clusterx/root_words.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cx {

int RootDatum::index(const std::string& root) const {
  auto it = std::find(roots.begin(), roots.end(), root);
  if (it == roots.end()) throw SeedError("unknown root '" + root + "'");
  return static_cast<int>(it - roots.begin());
}

namespace {

RootDatum chain(std::size_t n) {
  RootDatum rd;
  for (std::size_t i = 0; i < n; ++i) rd.roots.push_back(std::string(1, static_cast<char>('a' + i)));
  rd.cartan.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    rd.cartan[i][i] = 2;
    if (i + 1 < n) rd.cartan[i][i + 1] = rd.cartan[i + 1][i] = -1;
  }
  rd.d.assign(n, 1);
  return rd;
}

}  // namespace

RootDatum root_datum_preset(const std::string& type) {
  if (type.size() == 2 && type[0] == 'A' && type[1] >= '1' && type[1] <= '4') return chain(type[1] - '0');
  RootDatum rd;
  if (type == "B2") {
    rd = chain(2);
    rd.cartan = {{2, -1}, {-2, 2}};  // a short
    rd.d = {1, 2};
  } else if (type == "C2") {
    rd = chain(2);
    rd.cartan = {{2, -2}, {-1, 2}};  // a long
    rd.d = {2, 1};
  } else if (type == "B3") {
    rd = chain(3);
    rd.cartan[2][1] = -1;
    rd.cartan[1][2] = -2;  // c short
    rd.d = {2, 2, 1};
  } else if (type == "D4") {
    rd = chain(4);
    rd.cartan = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};  // b central
  } else if (type == "G2") {
    rd = chain(2);
    rd.cartan = {{2, -1}, {-3, 2}};  // a short
    rd.d = {1, 3};
  } else {
    throw SeedError("unknown root datum type '" + type + "'");
  }
  return rd;
}

std::vector<std::string> validate(const RootDatum& rd) {
  std::vector<std::string> out;
  const std::size_t n = rd.rank();
  if (rd.cartan.size() != n || rd.d.size() != n) return {"shape: cartan/d sizes differ from the rank"};
  for (std::size_t a = 0; a < n; ++a) {
    if (rd.cartan[a].size() != n) return {"shape: cartan row " + rd.roots[a] + " has wrong length"};
    if (rd.d[a] <= 0) out.push_back("multiplier of " + rd.roots[a] + " must be positive");
    if (rd.cartan[a][a] != 2) out.push_back("diagonal entry of " + rd.roots[a] + " must be 2");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && rd.cartan[a][b] > 0)
        out.push_back("positive off-diagonal entry C(" + rd.roots[a] + "," + rd.roots[b] + ")");
      if (b > a && rd.hat(a, b) != rd.hat(b, a))
        out.push_back("C*d not symmetric at (" + rd.roots[a] + "," + rd.roots[b] + ")");
    }
  return out;
}

bool is_type_A(const RootDatum& rd) {
  const std::size_t n = rd.rank();
  for (std::size_t a = 0; a < n; ++a) {
    if (rd.d[a] != 1) return false;
    for (std::size_t b = 0; b < n; ++b) {
      long want = a == b ? 2 : (a + 1 == b || b + 1 == a) ? -1 : 0;
      if (rd.cartan[a][b] != want) return false;
    }
  }
  return true;
}

Word parse_word(const RootDatum& rd, const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    Letter l;
    if (tok[0] == '-') {
      l.sign = -1;
      tok = tok.substr(1);
    }
    l.root = rd.index(tok);
    w.push_back(l);
  }
  return w;
}

std::string word_str(const RootDatum& rd, const Word& w) {
  std::string out;
  for (auto& l : w) {
    if (!out.empty()) out += ' ';
    if (l.sign < 0) out += '-';
    out += rd.roots[l.root];
  }
  return out;
}

std::vector<long> letter_counts(const RootDatum& rd, const Word& w) {
  std::vector<long> n(rd.rank(), 0);
  for (auto& l : w) ++n[l.root];
  return n;
}

std::string vertex_label(const std::string& root, long index) { return root + std::to_string(index); }

namespace {

// Word seed skeleton: vertices (root, 0..n_root), extremes frozen, multipliers of the root.
Seed empty_word_seed(const RootDatum& rd, const std::vector<long>& n) {
  std::vector<std::string> labels, frozen;
  std::vector<long> d;
  for (std::size_t a = 0; a < rd.rank(); ++a)
    for (long i = 0; i <= n[a]; ++i) {
      labels.push_back(vertex_label(rd.roots[a], i));
      d.push_back(rd.d[a]);
      if (i == 0 || i == n[a]) frozen.push_back(labels.back());
    }
  Seed s(labels, frozen);
  s.d = d;
  return s;
}

}  // namespace

Seed elementary_seed(const RootDatum& rd, const Letter& letter) {
  if (letter.root < 0 || letter.root >= static_cast<int>(rd.rank())) throw SeedError("unknown letter");
  std::vector<long> n(rd.rank(), 0);
  n[letter.root] = 1;
  Seed s = empty_word_seed(rd, n);
  const int r = letter.root;
  const std::string lo = vertex_label(rd.roots[r], 0), hi = vertex_label(rd.roots[r], 1);
  s.e(lo, hi) = letter.sign;
  s.e(hi, lo) = -letter.sign;
  for (std::size_t b = 0; b < rd.rank(); ++b) {
    if (static_cast<int>(b) == r) continue;
    const std::string v = vertex_label(rd.roots[b], 0);
    Scalar c(letter.sign * rd.cartan[r][b], 2);
    c.canonicalize();
    Scalar partner = c * rd.d[b] / rd.d[r];
    s.e(lo, v) = c;
    s.e(hi, v) = -c;
    s.e(v, lo) = -partner;
    s.e(v, hi) = partner;
  }
  return s;
}

Seed word_seed_direct(const RootDatum& rd, const Word& w) {
  const auto n = letter_counts(rd, w);
  Seed s = empty_word_seed(rd, n);
  const std::size_t N = s.size();
  ScalarMatrix hat(N, std::vector<Scalar>(N, Scalar(0)));
  auto wedge = [&](int u, int v, const Scalar& c) {
    hat[u][v] += c;
    hat[v][u] -= c;
  };
  // Orientation of the wedge sum: -1 puts +d on the chain (lo, hi).
  const int sigma = -1;
  std::vector<long> cnt(rd.rank(), 0);
  for (auto& l : w) {
    const int r = l.root;
    const int lo = s.at(vertex_label(rd.roots[r], cnt[r]));
    const int hi = s.at(vertex_label(rd.roots[r], cnt[r] + 1));
    for (std::size_t b = 0; b < rd.rank(); ++b) {
      if (rd.cartan[r][b] == 0) continue;
      Scalar coef(sigma * l.sign * rd.hat(r, b), 2);
      coef.canonicalize();
      const int v = s.at(vertex_label(rd.roots[b], cnt[b]));
      wedge(v, lo, coef);
      wedge(v, hi, -coef);
    }
    ++cnt[r];
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s.eps[i][j] = hat[i][j] / s.d[j];
  return s;
}

GluingData concatenation_gluing(const RootDatum& rd, const Word& A, const Word& B,
                                std::vector<std::string>* glued_interior) {
  const auto nA = letter_counts(rd, A), nB = letter_counts(rd, B);
  Seed sa = word_seed_direct(rd, A), sb = word_seed_direct(rd, B);
  std::vector<std::string> target;
  VertexBijection pa, pb;
  if (glued_interior) glued_interior->clear();
  for (std::size_t a = 0; a < rd.rank(); ++a) {
    const std::string& r = rd.roots[a];
    for (long i = 0; i <= nA[a] + nB[a]; ++i) target.push_back(vertex_label(r, i));
    for (long i = 0; i <= nA[a]; ++i) pa[vertex_label(r, i)] = vertex_label(r, i);
    for (long i = 0; i <= nB[a]; ++i) pb[vertex_label(r, i)] = vertex_label(r, i + nA[a]);
    if (glued_interior && nA[a] > 0 && nB[a] > 0) glued_interior->push_back(vertex_label(r, nA[a]));
  }
  return GluingData({sa, sb}, target, {pa, pb});
}

Seed word_seed_amalgamated(const RootDatum& rd, const Word& w) {
  if (w.empty()) return word_seed_direct(rd, w);
  std::vector<Seed> factors;
  std::vector<VertexBijection> inj;
  std::vector<long> cnt(rd.rank(), 0);
  for (auto& l : w) {
    Seed e = elementary_seed(rd, l);
    VertexBijection p;
    for (std::size_t b = 0; b < rd.rank(); ++b) {
      const std::string& r = rd.roots[b];
      p[vertex_label(r, 0)] = vertex_label(r, cnt[b]);
      if (static_cast<int>(b) == l.root) p[vertex_label(r, 1)] = vertex_label(r, cnt[b] + 1);
    }
    factors.push_back(std::move(e));
    inj.push_back(std::move(p));
    ++cnt[l.root];
  }
  std::vector<std::string> target, interior;
  for (std::size_t b = 0; b < rd.rank(); ++b)
    for (long i = 0; i <= cnt[b]; ++i) {
      target.push_back(vertex_label(rd.roots[b], i));
      if (i > 0 && i < cnt[b]) interior.push_back(target.back());
    }
  return defrost(amalgamate(GluingData(std::move(factors), target, std::move(inj))), interior);
}

EquivalenceReport check_equivalence(const RootDatum& rd, const Word& w) {
  EquivalenceReport r;
  Seed a = word_seed_amalgamated(rd, w), b = word_seed_direct(rd, w);
  if (a == b) return r;
  r.ok = false;
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.frozen[i] != b.is_frozen(a.vertices[i])) os << "frozen flag differs at " << a.vertices[i] << "\n";
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Scalar& y = b.e(a.vertices[i], a.vertices[j]);
      if (a.eps[i][j] != y)
        os << "eps(" << a.vertices[i] << "," << a.vertices[j] << "): amalgamated " << a.eps[i][j].get_str()
           << ", direct " << y.get_str() << "\n";
    }
  }
  r.diff = os.str();
  return r;
}

WeylGroup::WeylGroup(const RootDatum& rd, std::size_t max_size) {
  const std::size_t n = rd.rank();
  std::vector<std::vector<long>> gens(n, std::vector<long>(n * n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    auto& S = gens[j];
    for (std::size_t i = 0; i < n; ++i) {
      S[i * n + i] = 1;
      S[j * n + i] -= rd.cartan[i][j];  // column i is s_j(alpha_i)
    }
  }
  auto mul = [n](const std::vector<long>& A, const std::vector<long>& B) {
    std::vector<long> C(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (A[i * n + k])
          for (std::size_t j = 0; j < n; ++j) C[i * n + j] += A[i * n + k] * B[k * n + j];
    return C;
  };
  std::vector<long> id(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  std::map<std::vector<long>, std::size_t> index;
  mats_.push_back(id);
  len_.push_back(0);
  word_.emplace_back();
  index[id] = 0;
  // Breadth first in generator order: the first word reaching an element is its
  // lexicographically least reduced word.
  for (std::size_t q = 0; q < mats_.size(); ++q) {
    right_.emplace_back(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      auto M = mul(mats_[q], gens[j]);
      auto [it, fresh] = index.emplace(M, mats_.size());
      if (fresh) {
        if (mats_.size() >= max_size) throw SeedError("Weyl group exceeds size bound: datum is not of finite type");
        mats_.push_back(M);
        len_.push_back(len_[q] + 1);
        auto w = word_[q];
        w.push_back(static_cast<int>(j));
        word_.push_back(std::move(w));
      }
      right_[q][j] = it->second;
    }
  }
}

std::size_t WeylGroup::longest() const {
  return static_cast<std::size_t>(std::max_element(len_.begin(), len_.end()) - len_.begin());
}

HeckeImage hecke_image(const WeylGroup& W, const Word& w) {
  HeckeImage h;
  for (auto& l : w) {
    std::size_t& x = l.sign > 0 ? h.plus : h.minus;
    std::size_t y = W.times_generator(x, l.root);
    if (W.length(y) > W.length(x)) x = y;
  }
  return h;
}

Word reduced_representative(const WeylGroup& W, const HeckeImage& h) {
  Word out;
  for (int j : W.reduced_word(h.plus)) out.push_back({j, 1});
  for (int j : W.reduced_word(h.minus)) out.push_back({j, -1});
  return out;
}

}  // namespace cx
