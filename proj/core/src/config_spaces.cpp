#include "clusterx/config_spaces.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "clusterx/cluster_map.hpp"

namespace cx {

namespace {

RationalFunction rf(long v) { return RationalFunction(Scalar(v)); }

RationalFunction det2(const P1Point& p, const P1Point& q) { return p[0] * q[1] - q[0] * p[1]; }

std::string clip(const std::string& s, std::size_t n = 160) { return s.size() <= n ? s : s.substr(0, n) + "..."; }

}  // namespace

// ---------------------------------------------------------------- points on P^1

P1Point p1_point(const RationalFunction& t) { return {t, rf(1)}; }
P1Point p1_infinity() { return {rf(1), rf(0)}; }

std::vector<P1Point> symbolic_points(int n, const std::string& prefix) {
  std::vector<P1Point> out;
  for (int i = 1; i <= n; ++i) out.push_back(p1_point(RationalFunction::var(prefix + std::to_string(i))));
  return out;
}

RationalFunction cross_ratio(const P1Point& x1, const P1Point& x2, const P1Point& x3, const P1Point& x4) {
  const RationalFunction d12 = det2(x1, x2), d34 = det2(x3, x4), d14 = det2(x1, x4), d23 = det2(x2, x3);
  if (d12.is_zero() || d34.is_zero() || d14.is_zero() || d23.is_zero())
    throw ConfigError("cross-ratio of coincident points");
  return d12 * d34 / (d14 * d23);
}

// ---------------------------------------------------------------- triangulations

namespace {

bool crosses(const Diagonal& e, const Diagonal& f) {
  auto [a, b] = e;
  auto [c, d] = f;
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

std::set<Diagonal> edge_set(const Triangulation& t) {
  std::set<Diagonal> s(t.diagonals.begin(), t.diagonals.end());
  for (int i = 0; i < t.n_gon; ++i) {
    const int j = (i + 1) % t.n_gon;
    s.insert({std::min(i, j), std::max(i, j)});
  }
  return s;
}

std::vector<std::array<int, 3>> triangles(const Triangulation& t) {
  const auto edges = edge_set(t);
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < t.n_gon; ++i)
    for (int j = i + 1; j < t.n_gon; ++j)
      for (int k = j + 1; k < t.n_gon; ++k)
        if (edges.count({i, j}) && edges.count({j, k}) && edges.count({i, k})) out.push_back({i, j, k});
  return out;
}

}  // namespace

std::vector<std::string> validate(const Triangulation& t) {
  std::vector<std::string> bad;
  if (t.n_gon < 3) bad.push_back("polygon needs at least 3 vertices");
  if (static_cast<int>(t.diagonals.size()) != t.n_gon - 3)
    bad.push_back("expected " + std::to_string(t.n_gon - 3) + " diagonals, got " + std::to_string(t.diagonals.size()));
  std::set<Diagonal> seen;
  for (auto& d : t.diagonals) {
    if (d.first < 0 || d.second >= t.n_gon || d.first >= d.second || d.second - d.first < 2 ||
        (d.first == 0 && d.second == t.n_gon - 1))
      bad.push_back("not an internal diagonal: " + diagonal_label(d));
    if (!seen.insert(d).second) bad.push_back("repeated diagonal " + diagonal_label(d));
  }
  for (std::size_t i = 0; i < t.diagonals.size(); ++i)
    for (std::size_t j = i + 1; j < t.diagonals.size(); ++j)
      if (crosses(t.diagonals[i], t.diagonals[j]))
        bad.push_back(diagonal_label(t.diagonals[i]) + " crosses " + diagonal_label(t.diagonals[j]));
  return bad;
}

std::vector<Triangulation> all_triangulations(int n_gon) {
  if (n_gon < 3) throw ConfigError("polygon needs at least 3 vertices");
  // Triangulations of the sub-polygon i..j (vertices i, i+1, ..., j) as diagonal lists.
  std::map<std::pair<int, int>, std::vector<std::vector<Diagonal>>> memo;
  std::function<const std::vector<std::vector<Diagonal>>&(int, int)> sub = [&](int i, int j)
      -> const std::vector<std::vector<Diagonal>>& {
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    std::vector<std::vector<Diagonal>> out;
    if (j - i < 2) {
      out.push_back({});
    } else {
      for (int k = i + 1; k < j; ++k) {
        const auto left = sub(i, k);
        const auto right = sub(k, j);
        for (auto& l : left)
          for (auto& r : right) {
            std::vector<Diagonal> d = l;
            d.insert(d.end(), r.begin(), r.end());
            if (k - i >= 2) d.push_back({i, k});
            if (j - k >= 2) d.push_back({k, j});
            out.push_back(std::move(d));
          }
      }
    }
    return memo[{i, j}] = std::move(out);
  };
  std::vector<Triangulation> result;
  for (auto d : sub(0, n_gon - 1)) {
    std::sort(d.begin(), d.end());
    result.push_back({n_gon, d});
  }
  return result;
}

Triangulation snake_triangulation(int n_gon) {
  Triangulation t{n_gon, {}};
  int lo = 1, hi = n_gon - 1;
  bool move_hi = true;
  while (static_cast<int>(t.diagonals.size()) < n_gon - 3) {
    t.diagonals.push_back({lo, hi});
    if (move_hi)
      --hi;
    else
      ++lo;
    move_hi = !move_hi;
  }
  std::sort(t.diagonals.begin(), t.diagonals.end());
  return t;
}

std::string diagonal_label(const Diagonal& d) {
  return "E" + std::to_string(d.first + 1) + "_" + std::to_string(d.second + 1);
}

std::array<int, 4> quadrilateral(const Triangulation& t, const Diagonal& e) {
  const auto edges = edge_set(t);
  if (!std::binary_search(t.diagonals.begin(), t.diagonals.end(), e))
    throw ConfigError(diagonal_label(e) + " is not a diagonal of the triangulation");
  const auto [b, d] = e;
  int a = -1, c = -1;
  for (int v = 0; v < t.n_gon; ++v) {
    if (v == b || v == d) continue;
    if (!edges.count({std::min(v, b), std::max(v, b)}) || !edges.count({std::min(v, d), std::max(v, d)})) continue;
    (b < v && v < d ? c : a) = v;
  }
  if (a < 0 || c < 0) throw ConfigError("no quadrilateral around " + diagonal_label(e));
  return {a, b, c, d};
}

Seed triangulation_seed(const Triangulation& t) {
  auto bad = validate(t);
  if (!bad.empty()) throw ConfigError("invalid triangulation: " + bad.front());
  std::vector<std::string> labels;
  for (auto& d : t.diagonals) labels.push_back(diagonal_label(d));
  Seed s(labels, {});
  const std::set<Diagonal> diag(t.diagonals.begin(), t.diagonals.end());
  for (auto [i, j, k] : triangles(t)) {
    const Diagonal sides[3] = {{i, j}, {j, k}, {i, k}};  // counterclockwise: ij, jk, ki
    for (int m = 0; m < 3; ++m) {
      const Diagonal& e = sides[m];
      const Diagonal& f = sides[(m + 1) % 3];
      if (!diag.count(e) || !diag.count(f)) continue;
      s.e(diagonal_label(e), diagonal_label(f)) += 1;
      s.e(diagonal_label(f), diagonal_label(e)) -= 1;
    }
  }
  return s;
}

Triangulation flip(const Triangulation& t, const Diagonal& e, Diagonal* replacement) {
  const auto q = quadrilateral(t, e);
  const Diagonal f{std::min(q[0], q[2]), std::max(q[0], q[2])};
  Triangulation out = t;
  *std::find(out.diagonals.begin(), out.diagonals.end(), e) = f;
  std::sort(out.diagonals.begin(), out.diagonals.end());
  if (replacement) *replacement = f;
  return out;
}

std::map<std::string, RationalFunction> triangulation_coords(const Triangulation& t, const std::vector<P1Point>& pts) {
  if (static_cast<int>(pts.size()) != t.n_gon)
    throw ConfigError("expected " + std::to_string(t.n_gon) + " points, got " + std::to_string(pts.size()));
  std::map<std::string, RationalFunction> out;
  for (auto& e : t.diagonals) {
    const auto q = quadrilateral(t, e);
    try {
      out.emplace(diagonal_label(e), cross_ratio(pts[q[0]], pts[q[1]], pts[q[2]], pts[q[3]]));
    } catch (const ConfigError&) {
      throw ConfigError("degenerate configuration at " + diagonal_label(e));
    }
  }
  return out;
}

FlipCheck flip_is_mutation(const Triangulation& t, const Diagonal& e, const std::vector<P1Point>& pts) {
  FlipCheck r;
  Diagonal f;
  const Triangulation t2 = flip(t, e, &f);
  const std::string le = diagonal_label(e), lf = diagonal_label(f);
  const Seed s = triangulation_seed(t);
  VertexBijection rename;
  for (auto& v : s.vertices) rename[v] = v == le ? lf : v;
  if (apply_symmetry(mutate_seed(s, le), rename) != triangulation_seed(t2)) {
    r.ok = false;
    r.detail = "flipped seed differs from the mutated seed at " + le;
    return r;
  }
  const auto before = triangulation_coords(t, pts);
  const auto after = triangulation_coords(t2, pts);
  const auto mutated = run_mutations(s, before, {le});
  for (auto& [v, val] : mutated) {
    const RationalFunction& want = after.at(rename.at(v));
    if (val != want) {
      r.ok = false;
      r.detail = "flip of " + le + ": coordinate " + rename.at(v) + " is " + clip(want.str()) +
                 ", mutation gives " + clip(val.str());
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------- flags in P^3

RationalFunction det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  const Vec4* rows[4] = {&a, &b, &c, &d};
  std::array<int, 4> perm{0, 1, 2, 3};
  RationalFunction sum;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    RationalFunction term = (*rows[0])[perm[0]];
    for (int i = 1; i < 4 && !term.is_zero(); ++i) term = term * (*rows[i])[perm[i]];
    if (term.is_zero()) continue;
    sum = inversions % 2 ? sum - term : sum + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

Vec4 normal_curve_point(const RationalFunction& t) { return {rf(1), t, t * t, t * t * t}; }

bool projectively_equal(const Vec4& p, const Vec4& q) {
  bool nonzero = false;
  for (int i = 0; i < 4; ++i) {
    nonzero = nonzero || !p[i].is_zero();
    for (int j = i + 1; j < 4; ++j)
      if (p[i] * q[j] != p[j] * q[i]) return false;
  }
  return nonzero && std::any_of(q.begin(), q.end(), [](auto& x) { return !x.is_zero(); });
}

namespace {

RationalFunction nonzero(RationalFunction v, const char* what) {
  if (v.is_zero()) throw ConfigError(std::string("degenerate flags: ") + what + " vanishes");
  return v;
}

RationalFunction x1_of(const Flag& A, const Flag& B, const Flag& C) {
  const Vec4 &a1 = A.v1, &a2 = A.v2, &a3 = A.v3, &b1 = B.v1, &b2 = B.v2, &c1 = C.v1, &c2 = C.v2;
  const RationalFunction num = nonzero(det4(a1, a2, a3, b1), "D(a1,a2,a3,b1)") *
                               nonzero(det4(a1, b1, b2, c1), "D(a1,b1,b2,c1)") *
                               nonzero(det4(a1, c1, c2, a2), "D(a1,c1,c2,a2)");
  const RationalFunction den = nonzero(det4(a1, a2, a3, c1), "D(a1,a2,a3,c1)") *
                               nonzero(det4(a1, b1, b2, a2), "D(a1,b1,b2,a2)") *
                               nonzero(det4(a1, c1, c2, b1), "D(a1,c1,c2,b1)");
  return num / den;
}

}  // namespace

std::array<RationalFunction, 3> flag_coords(const FlagTriple& f) {
  return {x1_of(f.A, f.B, f.C), x1_of(f.B, f.C, f.A), x1_of(f.C, f.A, f.B)};
}

RationalFunction printed_x1(const FlagTriple& f) {
  const Vec4 &a1 = f.A.v1, &a2 = f.A.v2, &a3 = f.A.v3, &b1 = f.B.v1, &b2 = f.B.v2, &b3 = f.B.v3, &c1 = f.C.v1,
             &c2 = f.C.v2;
  const RationalFunction num = det4(a1, a2, a3, b1) * det4(a1, b2, b3, c1) * det4(a1, c1, c2, a2);
  const RationalFunction den = nonzero(det4(a1, a2, a3, c1) * det4(a1, b1, b2, a2) * det4(a1, c1, c2, b1), "denominator");
  return RationalFunction(Scalar(-1)) * num / den;
}

FlagTriple phi(const std::array<RationalFunction, 6>& p) {
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (p[i] == p[j]) throw ConfigError("coincident parameters " + std::to_string(i + 1) + " and " + std::to_string(j + 1));
  auto v = [&](int i) { return normal_curve_point(p[i]); };
  // x1 y1 x2 y2 x3 y3 at indices 0..5
  return {{v(0), v(1), v(5)}, {v(2), v(3), v(1)}, {v(4), v(5), v(3)}};
}

Vec4 line_plane_intersection(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s, const Vec4& u) {
  const RationalFunction dq = det4(q, r, s, u), dp = det4(p, r, s, u);
  if (dq.is_zero() && dp.is_zero()) throw ConfigError("line is not transverse to the plane");
  Vec4 out;
  for (int i = 0; i < 4; ++i) out[i] = dq * p[i] - dp * q[i];
  if (std::all_of(out.begin(), out.end(), [](auto& x) { return x.is_zero(); }))
    throw ConfigError("line is not transverse to the plane");
  return out;
}

std::array<Vec4, 6> psi(const FlagTriple& f) {
  return {f.A.v1, line_plane_intersection(f.A.v1, f.A.v2, f.B.v1, f.B.v2, f.B.v3),
          f.B.v1, line_plane_intersection(f.B.v1, f.B.v2, f.C.v1, f.C.v2, f.C.v3),
          f.C.v1, line_plane_intersection(f.C.v1, f.C.v2, f.A.v1, f.A.v2, f.A.v3)};
}

// ---------------------------------------------------------------- checks

namespace {

std::vector<P1Point> rational_points(const std::vector<long>& ts) {
  std::vector<P1Point> out;
  for (long t : ts) out.push_back(p1_point(rf(t)));
  return out;
}

FoldCheck all_flips(const std::string& name, int n_gon, const std::vector<std::vector<P1Point>>& point_sets) {
  FoldCheck c{name, true, ""};
  std::size_t count = 0;
  for (auto& t : all_triangulations(n_gon))
    for (auto& e : t.diagonals)
      for (auto& pts : point_sets) {
        ++count;
        FlipCheck f = flip_is_mutation(t, e, pts);
        if (!f.ok) {
          c.ok = false;
          c.detail = f.detail;
          return c;
        }
      }
  c.detail = std::to_string(count) + " flips";
  return c;
}

Vec4 transform(const std::array<std::array<long, 4>, 4>& m, const Vec4& v) {
  Vec4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (m[i][j]) out[i] += rf(m[i][j]) * v[j];
  return out;
}

}  // namespace

IdentityReport verify_configuration_spaces() {
  IdentityReport rep;
  auto add = [&](const std::string& name, bool ok, const std::string& detail) { rep.checks.push_back({name, ok, detail}); };

  {
    FoldCheck c = all_flips("square flip", 4, {symbolic_points(4)});
    add(c.name, c.ok, c.detail);
  }
  {
    // Five flips around the pentagon, coordinates carried by persistent labels.
    const auto pts = rational_points({0, 1, 3, 7, 12});
    Triangulation t{5, {{0, 2}, {0, 3}}};
    const Triangulation start = t;
    Seed s = triangulation_seed(t);
    auto coords = triangulation_coords(t, pts);
    std::map<Diagonal, std::string> label{{{0, 2}, "p"}, {{0, 3}, "q"}};
    VertexBijection to_p{{diagonal_label({0, 2}), "p"}, {diagonal_label({0, 3}), "q"}};
    s = apply_symmetry(s, to_p);
    std::map<std::string, RationalFunction> x{{"p", coords.at("E1_3")}, {"q", coords.at("E1_4")}};
    bool ok = true;
    Diagonal last{-1, -1};
    std::string detail;
    for (int step = 0; step < 5 && ok; ++step) {
      Diagonal e = t.diagonals[0] == last ? t.diagonals[1] : t.diagonals[0];
      Diagonal f;
      t = flip(t, e, &f);
      const std::string l = label.at(e);
      x = run_mutations(s, x, {l}, &s);
      label.erase(e);
      label[f] = l;
      last = f;
      auto now = triangulation_coords(t, pts);
      for (auto& [d, name] : label)
        if (x.at(name) != now.at(diagonal_label(d))) {
          ok = false;
          detail = "step " + std::to_string(step + 1) + " differs at " + diagonal_label(d);
        }
    }
    ok = ok && t.diagonals == start.diagonals;
    if (ok) {
      std::string p_end;
      for (auto& [d, name] : label)
        if (name == "p") p_end = diagonal_label(d);
      detail = "back to the start after 5 flips; label p now on " + p_end;
    }
    add("pentagon flip cycle", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 5 && ok; ++n) {
      const Seed s = triangulation_seed(snake_triangulation(n + 3));
      // A path with entries +-1 along consecutive diagonals.
      std::vector<int> degree(s.size(), 0);
      std::size_t edges = 0;
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (s.eps[i][j] == 0) continue;
          ok = ok && abs(s.eps[i][j]) == 1;
          ++degree[i];
          ++degree[j];
          ++edges;
        }
      ok = ok && edges + 1 == s.size() && std::all_of(degree.begin(), degree.end(), [&](int d) { return d <= 2; });
      if (s.size() > 1) ok = ok && std::count(degree.begin(), degree.end(), 1) == 2;
      if (!ok) detail = "snake of the " + std::to_string(n + 3) + "-gon is not a path";
    }
    add("snake seeds are A_n", ok, ok ? "n = 1..5" : detail);
  }
  {
    FoldCheck c = all_flips("hexagon flips (symbolic)", 6, {symbolic_points(6)});
    add(c.name, c.ok, c.detail);
  }
  {
    std::vector<P1Point> with_inf = rational_points({0, 1, 3, 7, 12, 20, 31, 45});
    with_inf[5] = p1_infinity();
    FoldCheck c = all_flips("octagon flips (rational points)", 8,
                            {rational_points({0, 1, 3, 7, 12, 20, 31, 45}), rational_points({-5, -2, 1, 2, 9, 11, 17, 40}), with_inf});
    add(c.name, c.ok, c.detail);
  }

  const std::array<std::string, 6> names{"x1", "y1", "x2", "y2", "x3", "y3"};
  std::array<RationalFunction, 6> params;
  std::map<std::string, P1Point> P;
  for (int i = 0; i < 6; ++i) {
    params[i] = RationalFunction::var(names[i]);
    P[names[i]] = p1_point(params[i]);
  }
  const FlagTriple F = phi(params);
  const auto X = flag_coords(F);
  {
    const RationalFunction r1 = cross_ratio(P["y1"], P["y3"], P["x3"], P["y2"]);
    const RationalFunction r2 = cross_ratio(P["y2"], P["y1"], P["x1"], P["y3"]);
    const RationalFunction r3 = cross_ratio(P["y3"], P["y2"], P["x2"], P["y1"]);
    const bool ok = X[0] == r1 && X[1] == r2 && X[2] == r3;
    std::string detail = ok ? "X1 = r+(y1,y3,x3,y2), X2 = r+(y2,y1,x1,y3), X3 = r+(y3,y2,x2,y1)" : "";
    if (!ok)
      for (int i = 0; i < 3; ++i) {
        const RationalFunction& want = i == 0 ? r1 : i == 1 ? r2 : r3;
        if (X[i] != want) detail += "X" + std::to_string(i + 1) + " = " + clip(X[i].str()) + "; ";
      }
    add("X_i o Phi", ok, detail);
  }
  {
    // The hexagon read counterclockwise as x1, y3, x3, y2, x2, y1 with diagonals y3y2, y2y1, y1y3.
    const std::vector<P1Point> hex{P["x1"], P["y3"], P["x3"], P["y2"], P["x2"], P["y1"]};
    const Triangulation t{6, {{1, 3}, {1, 5}, {3, 5}}};
    const auto c = triangulation_coords(t, hex);
    const bool ok = c.at("E2_4") == X[0] && c.at("E2_6") == X[1] && c.at("E4_6") == X[2];
    add("Phi lands on the hexagon triangulation", ok,
        ok ? "X1, X2, X3 = coordinates of y3y2, y1y3, y2y1" : "coordinates differ");
  }
  {
    const auto pts = psi(F);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 6; ++i) {
      const Vec4 want = normal_curve_point(params[i]);
      if (!projectively_equal(pts[i], want)) {
        ok = false;
        detail = "point " + std::to_string(i + 1) + " is not " + names[i];
      } else if (pts[i][1] / pts[i][0] != params[i]) {
        ok = false;
        detail = "parameter of point " + std::to_string(i + 1) + " is not " + names[i];
      }
    }
    // Each intersection lies on its line and in its plane.
    const Flag* flags[3] = {&F.A, &F.B, &F.C};
    for (int i = 0; i < 3 && ok; ++i) {
      const Vec4& m = pts[2 * i + 1];
      const Flag& L = *flags[i];
      const Flag& Pl = *flags[(i + 1) % 3];
      const Vec4 probe{rf(3), rf(-1), rf(4), rf(1)};
      ok = det4(Pl.v1, Pl.v2, Pl.v3, m).is_zero() && det4(L.v1, L.v2, m, probe).is_zero() &&
           det4(L.v1, L.v2, m, normal_curve_point(rf(5))).is_zero();
      if (!ok) detail = "intersection " + std::to_string(i + 1) + " misses its line or plane";
    }
    add("Psi o Phi = id", ok, ok ? "six points recovered with their parameters" : detail);
  }
  {
    // Rescale every vector of the triple by a distinct symbolic factor.
    FlagTriple G = F;
    Flag* flags[3] = {&G.A, &G.B, &G.C};
    int k = 0;
    for (Flag* f : flags)
      for (Vec4* v : {&f->v1, &f->v2, &f->v3}) {
        const RationalFunction s = RationalFunction::var("s" + std::to_string(++k));
        for (auto& x : *v) x = s * x;
      }
    const auto Y = flag_coords(G);
    const bool ok = Y[0] == X[0] && Y[1] == X[1] && Y[2] == X[2];
    const RationalFunction printed = printed_x1(G), printed0 = printed_x1(F);
    add("X_1 rescaling invariance", ok,
        std::string(ok ? "X1, X2, X3 unchanged" : "X changed") + "; the printed display " +
            (printed == printed0 ? "is" : "is not") + " invariant");
  }
  {
    const std::array<std::array<long, 4>, 4> m{{{2, 1, 0, 3}, {-1, 1, 4, 0}, {0, 5, 1, -2}, {1, 0, -3, 1}}};
    FlagTriple G = F;
    Flag* flags[3] = {&G.A, &G.B, &G.C};
    for (Flag* f : flags)
      for (Vec4* v : {&f->v1, &f->v2, &f->v3}) *v = transform(m, *v);
    const auto Y = flag_coords(G);
    const bool ok = Y[0] == X[0] && Y[1] == X[1] && Y[2] == X[2];
    Vec4 rows[4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rows[i][j] = rf(m[i][j]);
    add("volume form cancels", ok,
        ok ? "unchanged under a matrix of determinant " + det4(rows[0], rows[1], rows[2], rows[3]).str() : "changed");
  }
  {
    // D of four curve points is the Vandermonde product, and the middle identity of the proof.
    std::array<RationalFunction, 4> t{RationalFunction::var("t1"), RationalFunction::var("t2"),
                                      RationalFunction::var("t3"), RationalFunction::var("t4")};
    RationalFunction vdm = rf(1);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) vdm = vdm * (t[j] - t[i]);
    bool ok = det4(normal_curve_point(t[0]), normal_curve_point(t[1]), normal_curve_point(t[2]),
                   normal_curve_point(t[3])) == vdm;
    auto D = [&](const char* a, const char* b, const char* c, const char* d) {
      auto v = [&](const char* n) { return normal_curve_point(RationalFunction::var(n)); };
      return det4(v(a), v(b), v(c), v(d));
    };
    const RationalFunction mid = D("x1", "x2", "y1", "y3") * D("x1", "x2", "x3", "y2") /
                                 (D("x1", "x2", "y1", "y2") * D("x1", "x2", "y3", "x3"));
    ok = ok && mid == cross_ratio(P["y1"], P["y3"], P["x3"], P["y2"]);
    add("cross-ratio via curve determinants", ok, ok ? "Vandermonde and the two-determinant ratio" : "mismatch");
  }
  {
    const RationalFunction printed = printed_x1(F);
    const RationalFunction r1 = cross_ratio(P["y1"], P["y3"], P["x3"], P["y2"]);
    const bool ok = printed == r1;
    add("printed X_1 display", ok,
        ok ? "matches" : "printed X1 o Phi = " + clip(printed.str(), 240) + ", not r+(y1,y3,x3,y2)");
  }
  return rep;
}

}  // namespace cx
