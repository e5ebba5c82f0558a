#include "clusterx/group_eval.hpp"

#include <sstream>

namespace cx {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

namespace {
void check_index(std::size_t n, std::size_t i) {
  if (i < 1 || i >= n) throw SeedError("generator index " + std::to_string(i) + " out of range for n = " + std::to_string(n));
}
}  // namespace

Matrix gen_E(std::size_t n, std::size_t i) {
  check_index(n, i);
  Matrix m = identity_matrix(n);
  m[i - 1][i] = 1;
  return m;
}

Matrix gen_F(std::size_t n, std::size_t i) { return transpose(gen_E(n, i)); }

Matrix gen_H(std::size_t n, std::size_t j, const RationalFunction& t) {
  if (j > n) throw SeedError("H index out of range");
  Matrix m = identity_matrix(n);
  for (std::size_t k = 0; k < j; ++k) m[k][k] = t;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), l = b.size();
  Matrix c(n, std::vector<RationalFunction>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < l; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.empty() ? 0 : a[0].size(), std::vector<RationalFunction>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix substitute(const Matrix& a, const Assignment& s) {
  Matrix out = a;
  for (auto& row : out)
    for (auto& x : row) x = substitute(x, s);
  return out;
}

std::string matrix_str(const Matrix& a) {
  std::ostringstream os;
  for (auto& row : a) {
    os << "[";
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j].str();
    os << "]\n";
  }
  return os.str();
}

Matrix ev(const RootDatum& rd, const Word& w, const Assignment& coords) {
  if (!is_type_A(rd)) throw SeedError("ev is implemented for type A root data only");
  const std::size_t n = rd.rank() + 1;
  auto coord = [&](int r, long i) -> const RationalFunction& {
    auto it = coords.find(vertex_label(rd.roots[r], i));
    if (it == coords.end()) throw SeedError("ev: missing coordinate " + vertex_label(rd.roots[r], i));
    return it->second;
  };
  Matrix g = identity_matrix(n);
  for (std::size_t r = 0; r < rd.rank(); ++r) g = g * gen_H(n, r + 1, coord(static_cast<int>(r), 0));
  std::vector<long> cnt(rd.rank(), 0);
  for (auto& l : w) {
    g = g * (l.sign > 0 ? gen_E(n, l.root + 1) : gen_F(n, l.root + 1));
    g = g * gen_H(n, l.root + 1, coord(l.root, ++cnt[l.root]));
  }
  return g;
}

Matrix ev(const RootDatum& rd, const Word& w) {
  Assignment vars;
  for (auto& v : word_seed(rd, w).vertices) vars.emplace(v, RationalFunction::var(v));
  return ev(rd, w, vars);
}

bool projective_equal(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) return false;
  std::size_t pk = a.size(), pl = 0;
  for (std::size_t k = 0; k < a.size() && pk == a.size(); ++k)
    for (std::size_t l = 0; l < a[k].size(); ++l)
      if (!a[k][l].is_zero()) {
        pk = k;
        pl = l;
        break;
      }
  if (pk == a.size()) throw ArithmeticError("projective comparison with the zero matrix");
  const RationalFunction& ap = a[pk][pl];
  const RationalFunction& bp = b[pk][pl];
  if (bp.is_zero()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!equals(a[i][j] * bp, b[i][j] * ap)) return false;
  return true;
}

RelationReport verify_relation(const RootDatum& rd, const Word& lhs, const Word& rhs, const ClusterMap& map) {
  RelationReport r;
  Matrix left = ev(rd, lhs);
  Matrix right = ev(rd, rhs, map.pullback);
  if (!projective_equal(left, right)) {
    r.ok = false;
    r.detail = "ev(" + word_str(rd, lhs) + ") =\n" + matrix_str(left) + "ev(" + word_str(rd, rhs) + ") after the map =\n" +
               matrix_str(right);
  }
  return r;
}

namespace {

std::string relabel_index(const RootDatum& rd, int r, long i) { return vertex_label(rd.roots[r], i); }

// Identity-labelled map J(w) -> J(out), after checking the seeds coincide.
ClusterMap identity_move(const RootDatum& rd, const Word& w, const Word& out) {
  Seed a = word_seed(rd, w), b = word_seed(rd, out);
  if (a != b) throw SeedError("move: J(" + word_str(rd, w) + ") and J(" + word_str(rd, out) + ") differ");
  return ClusterMap{a, b, identity_map(a).pullback};
}

}  // namespace

ClusterMap move_map(const RootDatum& rd, const Word& w, const Move& m, Word* out) {
  const std::size_t p = m.pos;
  auto need = [&](std::size_t len) {
    if (p + len > w.size()) throw SeedError("move out of range");
  };
  Word o = w;
  std::vector<long> before(rd.rank(), 0);
  for (std::size_t i = 0; i < p && i < w.size(); ++i) ++before[w[i].root];
  switch (m.kind) {
    case MoveKind::BarCommute:
    case MoveKind::Commute: {
      need(2);
      const Letter x = w[p], y = w[p + 1];
      if (x.root == y.root) throw SeedError("commutation needs distinct roots");
      if (m.kind == MoveKind::BarCommute && x.sign == y.sign) throw SeedError("bar commutation needs opposite signs");
      if (m.kind == MoveKind::Commute && (x.sign != y.sign || rd.cartan[x.root][y.root] != 0))
        throw SeedError("commutation needs equal signs and orthogonal roots");
      std::swap(o[p], o[p + 1]);
      if (out) *out = o;
      return identity_move(rd, w, o);
    }
    case MoveKind::BarSwap:
    case MoveKind::Idempotent:
    case MoveKind::Braid:
      break;
  }
  const Letter x = w[p];
  const int a = x.root;
  const std::string k = relabel_index(rd, a, before[a] + 1);
  Seed src = word_seed(rd, w);
  ClusterMap mu = mutation_map(src, k);
  VertexBijection rel;  // mutated-seed label -> J(out) label, for kept vertices
  for (auto& v : src.vertices) rel[v] = v;
  if (m.kind == MoveKind::BarSwap) {
    need(2);
    if (w[p + 1].root != a || x.sign > 0 || w[p + 1].sign < 0) throw SeedError("bar swap needs -a a");
    std::swap(o[p], o[p + 1]);
  } else if (m.kind == MoveKind::Idempotent) {
    need(2);
    if (w[p + 1].root != a || w[p + 1].sign != x.sign) throw SeedError("idempotent move needs a repeated letter");
    o.erase(o.begin() + static_cast<long>(p));
    const long n = letter_counts(rd, w)[a];
    rel.erase(k);
    for (long i = before[a] + 2; i <= n; ++i) rel[relabel_index(rd, a, i)] = relabel_index(rd, a, i - 1);
  } else {
    need(3);
    const Letter y = w[p + 1];
    const int b = y.root;
    if (w[p + 2] != x || y.sign != x.sign || b == a || rd.cartan[a][b] != -1 || rd.cartan[b][a] != -1)
      throw SeedError("braid move needs a b a with C_ab = C_ba = -1 and equal signs");
    o[p] = o[p + 2] = y;
    o[p + 1] = x;
    const auto n = letter_counts(rd, w);
    rel[k] = relabel_index(rd, b, before[b] + 1);
    for (long i = before[a] + 2; i <= n[a]; ++i) rel[relabel_index(rd, a, i)] = relabel_index(rd, a, i - 1);
    for (long i = before[b] + 1; i <= n[b]; ++i) rel[relabel_index(rd, b, i)] = relabel_index(rd, b, i + 1);
  }
  Seed tgt = word_seed(rd, o);
  // The mutated seed, restricted to kept vertices and relabelled, must be J(out).
  const Seed& ms = mu.target;
  for (auto& [u, uu] : rel)
    for (auto& [v, vv] : rel) {
      if (ms.e(u, v) != tgt.e(uu, vv))
        throw SeedError("move: mutated seed differs from J(" + word_str(rd, o) + ") at (" + uu + "," + vv + ")");
    }
  for (auto& [u, uu] : rel)
    if (ms.is_frozen(u) != tgt.is_frozen(uu) || ms.d[ms.at(u)] != tgt.d[tgt.at(uu)])
      throw SeedError("move: frozen set or multipliers differ at " + uu);
  ClusterMap f{src, tgt, {}};
  for (auto& [u, uu] : rel) f.pullback.emplace(uu, mu.pullback.at(u));
  if (out) *out = o;
  return f;
}

namespace {

struct Pivot {
  std::size_t p, q;
};

Pivot choose_pivot(const Matrix& g) {
  const std::size_t n = g.size();
  for (std::size_t t = n * n; t-- > 0;)
    if (!g[t / n][t % n].is_zero()) return {t / n, t % n};
  throw ArithmeticError("zero matrix has no pivot");
}

// Values of the right- and left-invariant fields of E_ab on u = g_ij / g_pq.
struct FieldValues {
  std::vector<std::vector<RationalFunction>> R, L;  // [a][b]
};

FieldValues field_values(const Matrix& g, std::size_t p, std::size_t q, EntryRatio u) {
  const std::size_t n = g.size();
  FieldValues f;
  f.R.assign(n, std::vector<RationalFunction>(n));
  f.L.assign(n, std::vector<RationalFunction>(n));
  const RationalFunction inv = g[p][q].inverse();
  const RationalFunction inv2 = inv * inv;
  const RationalFunction& gu = g[u.i][u.j];
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      // (E_ab g)_ij = delta_ia g_bj ; (g E_ab)_ij = g_ia delta_bj
      RationalFunction r, l;
      if (u.i == a) r += g[b][u.j] * inv;
      if (p == a && !gu.is_zero()) r -= gu * g[b][q] * inv2;
      if (u.j == b) l += g[u.i][a] * inv;
      if (q == b && !gu.is_zero()) l -= gu * g[p][a] * inv2;
      f.R[a][b] = r;
      f.L[a][b] = l;
    }
  return f;
}

RationalFunction bracket_from_fields(const FieldValues& x, const FieldValues& y) {
  const std::size_t n = x.R.size();
  RationalFunction s;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      s += x.R[a][b] * y.R[b][a] - x.R[b][a] * y.R[a][b];
      s -= x.L[a][b] * y.L[b][a] - x.L[b][a] * y.L[a][b];
    }
  return s;
}

std::vector<EntryRatio> entry_ratios(std::size_t n, Pivot pv) {
  std::vector<EntryRatio> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != pv.p || j != pv.q) out.push_back({i, j});
  return out;
}

}  // namespace

RationalFunction r_matrix_bracket(const Matrix& g, std::size_t p, std::size_t q, EntryRatio u, EntryRatio v) {
  return bracket_from_fields(field_values(g, p, q, u), field_values(g, p, q, v));
}

Scalar poisson_normalization() { return Scalar(-1, 2); }

RelationReport check_ev_bracket(const RootDatum& rd, const Word& w, const Seed& s, const Scalar& kappa) {
  RelationReport rep;
  const Matrix g = ev(rd, w);
  const std::size_t n = g.size();
  const Pivot pv = choose_pivot(g);
  const auto us = entry_ratios(n, pv);
  const std::size_t N = s.size();
  std::vector<RationalFunction> U;
  std::vector<FieldValues> fv;
  std::vector<std::vector<RationalFunction>> dl;  // x_i dU/dx_i
  const RationalFunction inv = g[pv.p][pv.q].inverse();
  for (auto& u : us) {
    U.push_back(g[u.i][u.j] * inv);
    fv.push_back(field_values(g, pv.p, pv.q, u));
    std::vector<RationalFunction> row(N);
    for (std::size_t i = 0; i < N; ++i) row[i] = partial_log_derivative(U.back(), s.vertices[i]);
    dl.push_back(std::move(row));
  }
  const RationalFunction k(kappa);
  for (std::size_t a = 0; a < us.size(); ++a)
    for (std::size_t b = a + 1; b < us.size(); ++b) {
      RationalFunction seed_side;
      for (std::size_t i = 0; i < N; ++i) {
        if (dl[a][i].is_zero()) continue;
        RationalFunction inner;
        for (std::size_t j = 0; j < N; ++j) {
          const Scalar h = s.hat(i, j);
          if (h != 0 && !dl[b][j].is_zero()) inner += RationalFunction(h) * dl[b][j];
        }
        if (!inner.is_zero()) seed_side += dl[a][i] * inner;
      }
      RationalFunction group_side = k * bracket_from_fields(fv[a], fv[b]);
      if (!equals(seed_side, group_side)) {
        rep.ok = false;
        std::ostringstream os;
        os << "bracket of g" << us[a].i << us[a].j << "/g" << pv.p << pv.q << " and g" << us[b].i << us[b].j << "/g"
           << pv.p << pv.q << ": seed gives " << seed_side.str() << ", r-matrix gives " << group_side.str();
        rep.detail = os.str();
        return rep;
      }
    }
  return rep;
}

RelationReport verify_ev_poisson(const RootDatum& rd, const Word& w) {
  return check_ev_bracket(rd, w, word_seed(rd, w), poisson_normalization());
}

namespace {

// Gauss-Jordan inverse over rational functions.
Matrix inverse(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw ArithmeticError("singular Jacobian");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const RationalFunction f = a[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= f;
      inv[c][j] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const RationalFunction m = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!a[c][j].is_zero()) a[r][j] -= m * a[c][j];
        if (!inv[c][j].is_zero()) inv[r][j] -= m * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

ScalarMatrix r_matrix_coordinate_bracket(const RootDatum& rd, const Word& w) {
  const Seed s = word_seed(rd, w);
  const Matrix g = ev(rd, w);
  const std::size_t n = g.size(), N = s.size();
  if (N != n * n - 1) throw SeedError("coordinate bracket needs |J(D)| = n^2 - 1");
  const Pivot pv = choose_pivot(g);
  const auto us = entry_ratios(n, pv);
  const RationalFunction inv = g[pv.p][pv.q].inverse();
  Matrix J(N, std::vector<RationalFunction>(N)), PG(N, std::vector<RationalFunction>(N));
  std::vector<FieldValues> fv;
  for (std::size_t a = 0; a < N; ++a) {
    const RationalFunction U = g[us[a].i][us[a].j] * inv;
    for (std::size_t i = 0; i < N; ++i) J[a][i] = partial_derivative(U, s.vertices[i]);
    fv.push_back(field_values(g, pv.p, pv.q, us[a]));
  }
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) PG[a][b] = bracket_from_fields(fv[a], fv[b]);
  const Matrix Ji = inverse(J);
  const Matrix Px = Ji * PG * transpose(Ji);
  ScalarMatrix B(N, std::vector<Scalar>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      RationalFunction c = Px[i][j] / (RationalFunction::var(s.vertices[i]) * RationalFunction::var(s.vertices[j]));
      if (!c.is_constant()) throw ArithmeticError("bracket of " + s.vertices[i] + ", " + s.vertices[j] + " is not log-canonical");
      B[i][j] = c.constant_value();
    }
  return B;
}

Seed elementary_bivector_seed(const RootDatum& rd, int root) {
  Seed s = word_seed(rd, Word{{root, 1}});
  for (auto& row : s.eps)
    for (auto& x : row) x = 0;
  const std::string lo = vertex_label(rd.roots[root], 0), hi = vertex_label(rd.roots[root], 1);
  auto put = [&](const std::string& u, const std::string& v, const Scalar& hat) {
    s.e(u, v) += hat / s.d[s.at(v)];
    s.e(v, u) -= hat / s.d[s.at(u)];
  };
  for (std::size_t b = 0; b < rd.rank(); ++b) {
    const Scalar c(rd.hat(root, b));
    const std::string v = vertex_label(rd.roots[b], 0);
    if (static_cast<int>(b) != root) put(lo, v, -c);
    put(hi, v, c);
  }
  return s;
}

}  // namespace cx
