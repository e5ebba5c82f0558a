#include "clusterx/ratfun.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace cx {

// ---------------------------------------------------------------- variables

namespace {
struct Registry {
  std::mutex mu;
  std::deque<std::string> names;  // stable references
  std::unordered_map<std::string, VarId> ids;
};
Registry& registry() {
  static Registry r;
  return r;
}
}  // namespace

VarId var_id(const std::string& name) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) return it->second;
  VarId id = static_cast<VarId>(r.names.size());
  r.names.push_back(name);
  r.ids.emplace(name, id);
  return id;
}

const std::string& var_name(VarId id) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.names.at(id);
}

bool var_less(VarId a, VarId b) {
  if (a == b) return false;
  return var_name(a) < var_name(b);
}

std::string scalar_str(const Scalar& s) { return s.get_str(); }

// ---------------------------------------------------------------- helpers

namespace {

using Row = std::vector<std::uint32_t>;

// Graded-lex: higher total degree first, then lexicographically larger first.
int grlex_cmp(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

std::vector<VarId> merge_vars(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  if (a == b) return a;
  std::vector<VarId> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && var_less(a[i], b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || var_less(b[j], a[i])) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

struct RowHash {
  std::size_t operator()(const Row& r) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : r) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace

class PolyAccess {
 public:
  static std::vector<VarId>& vars(Polynomial& p) { return p.vars_; }
  static std::vector<std::uint32_t>& exps(Polynomial& p) { return p.exps_; }
  static std::vector<Integer>& coefs(Polynomial& p) { return p.coefs_; }
  static const std::vector<std::uint32_t>& exps(const Polynomial& p) { return p.exps_; }
  static std::vector<std::uint32_t> exps_over(const Polynomial& p, const std::vector<VarId>& t) {
    return p.exps_over(t);
  }
};

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Integer& c) {
  if (c != 0) coefs_.push_back(c);
}

Polynomial Polynomial::var(const std::string& name) { return var(var_id(name)); }

Polynomial Polynomial::var(VarId v) {
  Polynomial p;
  p.vars_ = {v};
  p.exps_ = {1};
  p.coefs_ = {Integer(1)};
  return p;
}

Polynomial Polynomial::monomial(const Integer& c, const std::vector<std::pair<VarId, std::uint32_t>>& powers) {
  std::vector<VarId> vs;
  for (auto& [v, e] : powers)
    if (e) vs.push_back(v);
  std::sort(vs.begin(), vs.end(), var_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  Row row(vs.size(), 0);
  for (auto& [v, e] : powers) {
    if (!e) continue;
    auto it = std::find(vs.begin(), vs.end(), v);
    row[it - vs.begin()] += e;
  }
  return from_terms(vs, row, {c});
}

Polynomial Polynomial::from_terms(std::vector<VarId> vars, std::vector<std::uint32_t> exps,
                                  std::vector<Integer> coefs) {
  const std::size_t n = vars.size();
  const std::size_t m = coefs.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return grlex_cmp(exps.data() + a * n, exps.data() + b * n, n) > 0;
  });
  Polynomial p;
  p.vars_ = std::move(vars);
  for (std::size_t k = 0; k < m;) {
    std::size_t i = idx[k];
    Integer c = coefs[i];
    std::size_t l = k + 1;
    while (l < m && grlex_cmp(exps.data() + idx[l] * n, exps.data() + i * n, n) == 0) {
      c += coefs[idx[l]];
      ++l;
    }
    if (c != 0) {
      p.exps_.insert(p.exps_.end(), exps.begin() + i * n, exps.begin() + (i + 1) * n);
      p.coefs_.push_back(std::move(c));
    }
    k = l;
  }
  p.prune_vars();
  return p;
}

void Polynomial::prune_vars() {
  const std::size_t n = vars_.size();
  if (n == 0) return;
  std::vector<bool> used(n, false);
  for (std::size_t t = 0; t < coefs_.size(); ++t)
    for (std::size_t v = 0; v < n; ++v)
      if (exps_[t * n + v]) used[v] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<VarId> nv;
  for (std::size_t v = 0; v < n; ++v)
    if (used[v]) nv.push_back(vars_[v]);
  std::vector<std::uint32_t> ne;
  ne.reserve(coefs_.size() * nv.size());
  for (std::size_t t = 0; t < coefs_.size(); ++t)
    for (std::size_t v = 0; v < n; ++v)
      if (used[v]) ne.push_back(exps_[t * n + v]);
  vars_ = std::move(nv);
  exps_ = std::move(ne);
}

std::vector<std::uint32_t> Polynomial::exps_over(const std::vector<VarId>& target) const {
  if (target == vars_) return exps_;
  const std::size_t n = vars_.size(), m = target.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t v = 0, j = 0; v < n; ++v) {
    while (target[j] != vars_[v]) ++j;
    pos[v] = j;
  }
  std::vector<std::uint32_t> out(coefs_.size() * m, 0);
  for (std::size_t t = 0; t < coefs_.size(); ++t)
    for (std::size_t v = 0; v < n; ++v) out[t * m + pos[v]] = exps_[t * n + v];
  return out;
}

bool Polynomial::is_constant() const { return coefs_.empty() || (coefs_.size() == 1 && vars_.empty()); }

Integer Polynomial::constant_term() const {
  if (coefs_.empty()) return 0;
  const std::size_t n = vars_.size(), last = coefs_.size() - 1;
  for (std::size_t v = 0; v < n; ++v)
    if (exps_[last * n + v]) return 0;
  return coefs_[last];
}

std::uint32_t Polynomial::degree(VarId v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return 0;
  std::size_t k = it - vars_.begin(), n = vars_.size();
  std::uint32_t d = 0;
  for (std::size_t t = 0; t < coefs_.size(); ++t) d = std::max(d, exps_[t * n + k]);
  return d;
}

std::uint32_t Polynomial::total_degree() const {
  if (coefs_.empty()) return 0;
  std::uint32_t d = 0;
  for (std::size_t v = 0; v < vars_.size(); ++v) d += exps_[v];
  return d;
}

Integer Polynomial::content() const {
  Integer g = 0;
  for (auto& c : coefs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& c : p.coefs_) c = -c;
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto vars = merge_vars(a.vars_, b.vars_);
  const std::size_t n = vars.size();
  auto ea = a.exps_over(vars), eb = b.exps_over(vars);
  Polynomial p;
  p.vars_ = vars;
  std::size_t i = 0, j = 0;
  const std::size_t na = a.coefs_.size(), nb = b.coefs_.size();
  p.exps_.reserve((na + nb) * n);
  p.coefs_.reserve(na + nb);
  while (i < na || j < nb) {
    int c = (i == na) ? -1 : (j == nb) ? 1 : grlex_cmp(&ea[i * n], &eb[j * n], n);
    if (c > 0) {
      p.exps_.insert(p.exps_.end(), ea.begin() + i * n, ea.begin() + (i + 1) * n);
      p.coefs_.push_back(a.coefs_[i++]);
    } else if (c < 0) {
      p.exps_.insert(p.exps_.end(), eb.begin() + j * n, eb.begin() + (j + 1) * n);
      p.coefs_.push_back(b.coefs_[j++]);
    } else {
      Integer s = a.coefs_[i] + b.coefs_[j];
      if (s != 0) {
        p.exps_.insert(p.exps_.end(), ea.begin() + i * n, ea.begin() + (i + 1) * n);
        p.coefs_.push_back(std::move(s));
      }
      ++i;
      ++j;
    }
  }
  p.prune_vars();
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  if (a.is_constant()) return b.scaled(a.coefs_[0]);
  if (b.is_constant()) return a.scaled(b.coefs_[0]);
  auto vars = merge_vars(a.vars_, b.vars_);
  const std::size_t n = vars.size();
  auto ea = a.exps_over(vars), eb = b.exps_over(vars);
  const std::size_t na = a.coefs_.size(), nb = b.coefs_.size();
  if (na == 1 || nb == 1) {
    // Multiplying by a monomial preserves the term order.
    const bool amono = na == 1;
    const auto& em = amono ? ea : eb;
    const auto& ep = amono ? eb : ea;
    const Integer& cm = amono ? a.coefs_[0] : b.coefs_[0];
    const auto& cp = amono ? b.coefs_ : a.coefs_;
    Polynomial p;
    p.vars_ = vars;
    p.exps_ = ep;
    for (std::size_t t = 0; t < cp.size(); ++t)
      for (std::size_t v = 0; v < n; ++v) p.exps_[t * n + v] += em[v];
    p.coefs_.reserve(cp.size());
    for (auto& c : cp) p.coefs_.push_back(c * cm);
    return p;
  }
  std::unordered_map<Row, std::size_t, RowHash> index;
  index.reserve(na * nb);
  std::vector<std::uint32_t> exps;
  std::vector<Integer> coefs;
  Row row(n);
  Integer prod;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t v = 0; v < n; ++v) row[v] = ea[i * n + v] + eb[j * n + v];
      mpz_mul(prod.get_mpz_t(), a.coefs_[i].get_mpz_t(), b.coefs_[j].get_mpz_t());
      auto [it, inserted] = index.emplace(row, coefs.size());
      if (inserted) {
        exps.insert(exps.end(), row.begin(), row.end());
        coefs.push_back(prod);
      } else {
        coefs[it->second] += prod;
      }
    }
  }
  return Polynomial::from_terms(std::move(vars), std::move(exps), std::move(coefs));
}

Polynomial Polynomial::scaled(const Integer& c) const {
  if (c == 0) return Polynomial();
  Polynomial p = *this;
  for (auto& x : p.coefs_) x *= c;
  return p;
}

Polynomial Polynomial::divided_by_integer(const Integer& c) const {
  Polynomial p = *this;
  for (auto& x : p.coefs_) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) throw ArithmeticError("inexact integer division");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.vars_ == b.vars_ && a.coefs_ == b.coefs_ && a.exps_ == b.exps_;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
  auto vars = merge_vars(a.vars_, b.vars_);
  const std::size_t n = vars.size();
  auto ea = a.exps_over(vars), eb = b.exps_over(vars);
  const std::size_t m = std::min(a.coefs_.size(), b.coefs_.size());
  for (std::size_t t = 0; t < m; ++t) {
    int c = grlex_cmp(&ea[t * n], &eb[t * n], n);
    if (c) return c < 0;
    if (a.coefs_[t] != b.coefs_[t]) return a.coefs_[t] < b.coefs_[t];
  }
  return a.coefs_.size() < b.coefs_.size();
}

bool Polynomial::divides_into(const Polynomial& b, Polynomial& quotient) const {
  if (b.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (is_zero()) {
    quotient = Polynomial();
    return true;
  }
  if (b.is_constant()) {
    for (auto& c : coefs_)
      if (!mpz_divisible_p(c.get_mpz_t(), b.coefs_[0].get_mpz_t())) return false;
    quotient = divided_by_integer(b.coefs_[0]);
    return true;
  }
  // b's variables must occur in *this with at least the same degree.
  for (VarId v : b.vars_)
    if (degree(v) < b.degree(v)) return false;
  auto vars = vars_;  // superset of b.vars_
  const std::size_t n = vars.size();
  auto eb = b.exps_over(vars);
  if (b.coefs_.size() == 1) {
    Polynomial q;
    q.vars_ = vars;
    q.exps_ = exps_;
    q.coefs_.reserve(coefs_.size());
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
      for (std::size_t v = 0; v < n; ++v) {
        if (q.exps_[t * n + v] < eb[v]) return false;
        q.exps_[t * n + v] -= eb[v];
      }
      if (!mpz_divisible_p(coefs_[t].get_mpz_t(), b.coefs_[0].get_mpz_t())) return false;
      Integer c;
      mpz_divexact(c.get_mpz_t(), coefs_[t].get_mpz_t(), b.coefs_[0].get_mpz_t());
      q.coefs_.push_back(std::move(c));
    }
    q.prune_vars();
    quotient = std::move(q);
    return true;
  }
  // Remainder kept in an ordered map, largest monomial first.
  auto cmp = [n](const Row& x, const Row& y) { return grlex_cmp(x.data(), y.data(), n) > 0; };
  std::map<Row, Integer, decltype(cmp)> rem(cmp);
  for (std::size_t t = 0; t < coefs_.size(); ++t)
    rem.emplace(Row(exps_.begin() + t * n, exps_.begin() + (t + 1) * n), coefs_[t]);
  std::vector<std::uint32_t> qe;
  std::vector<Integer> qc;
  const Row lb(eb.begin(), eb.begin() + n);
  const Integer& lcb = b.coefs_[0];
  Row qrow(n), row(n);
  while (!rem.empty()) {
    auto it = rem.begin();
    for (std::size_t v = 0; v < n; ++v) {
      if (it->first[v] < lb[v]) return false;
      qrow[v] = it->first[v] - lb[v];
    }
    if (!mpz_divisible_p(it->second.get_mpz_t(), lcb.get_mpz_t())) return false;
    Integer qcoef;
    mpz_divexact(qcoef.get_mpz_t(), it->second.get_mpz_t(), lcb.get_mpz_t());
    rem.erase(it);
    for (std::size_t t = 1; t < b.coefs_.size(); ++t) {
      for (std::size_t v = 0; v < n; ++v) row[v] = qrow[v] + eb[t * n + v];
      auto [jt, ins] = rem.try_emplace(row, 0);
      jt->second -= qcoef * b.coefs_[t];
      if (jt->second == 0) rem.erase(jt);
    }
    qe.insert(qe.end(), qrow.begin(), qrow.end());
    qc.push_back(std::move(qcoef));
  }
  quotient = from_terms(vars, std::move(qe), std::move(qc));
  return true;
}

Polynomial Polynomial::divexact(const Polynomial& b) const {
  Polynomial q;
  if (!divides_into(b, q)) throw ArithmeticError("inexact polynomial division");
  return q;
}

Polynomial Polynomial::derivative(VarId v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return Polynomial();
  std::size_t k = it - vars_.begin(), n = vars_.size();
  std::vector<std::uint32_t> e;
  std::vector<Integer> c;
  for (std::size_t t = 0; t < coefs_.size(); ++t) {
    std::uint32_t d = exps_[t * n + k];
    if (!d) continue;
    e.insert(e.end(), exps_.begin() + t * n, exps_.begin() + (t + 1) * n);
    e[e.size() - n + k] = d - 1;
    c.push_back(coefs_[t] * d);
  }
  return from_terms(vars_, std::move(e), std::move(c));
}

Polynomial Polynomial::log_derivative(VarId v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return Polynomial();
  std::size_t k = it - vars_.begin(), n = vars_.size();
  std::vector<std::uint32_t> e;
  std::vector<Integer> c;
  for (std::size_t t = 0; t < coefs_.size(); ++t) {
    std::uint32_t d = exps_[t * n + k];
    if (!d) continue;
    e.insert(e.end(), exps_.begin() + t * n, exps_.begin() + (t + 1) * n);
    c.push_back(coefs_[t] * d);
  }
  return from_terms(vars_, std::move(e), std::move(c));
}

std::map<std::vector<std::uint32_t>, Polynomial> Polynomial::coefficients_in(const std::vector<VarId>& vs) const {
  const std::size_t n = vars_.size();
  std::vector<int> sel(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    auto it = std::find(vs.begin(), vs.end(), vars_[v]);
    if (it != vs.end()) sel[v] = static_cast<int>(it - vs.begin());
  }
  std::vector<VarId> rest;
  for (std::size_t v = 0; v < n; ++v)
    if (sel[v] < 0) rest.push_back(vars_[v]);
  struct Acc {
    std::vector<std::uint32_t> e;
    std::vector<Integer> c;
  };
  std::map<Row, Acc> acc;
  for (std::size_t t = 0; t < coefs_.size(); ++t) {
    Row key(vs.size(), 0);
    for (std::size_t v = 0; v < n; ++v)
      if (sel[v] >= 0) key[sel[v]] = exps_[t * n + v];
    auto& slot = acc[key];
    for (std::size_t v = 0; v < n; ++v)
      if (sel[v] < 0) slot.e.push_back(exps_[t * n + v]);
    slot.c.push_back(coefs_[t]);
  }
  std::map<std::vector<std::uint32_t>, Polynomial> out;
  for (auto& [k, a] : acc)
    if (!a.c.empty()) out.emplace(k, from_terms(rest, std::move(a.e), std::move(a.c)));
  return out;
}

Polynomial Polynomial::monomial_content() const {
  if (coefs_.empty()) return Polynomial(1);
  const std::size_t n = vars_.size();
  std::vector<std::pair<VarId, std::uint32_t>> mins;
  for (std::size_t v = 0; v < n; ++v) {
    std::uint32_t m = exps_[v];
    for (std::size_t t = 1; t < coefs_.size() && m; ++t) m = std::min(m, exps_[t * n + v]);
    if (m) mins.emplace_back(vars_[v], m);
  }
  return monomial(1, mins);
}

std::string Polynomial::str() const {
  if (coefs_.empty()) return "0";
  std::ostringstream os;
  const std::size_t n = vars_.size();
  bool first = true;
  for (std::size_t tt = coefs_.size(); tt-- > 0;) {
    Integer c = coefs_[tt];
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool any = false;
    if (c != 1) {
      os << c.get_str();
      any = true;
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::uint32_t e = exps_[tt * n + v];
      if (!e) continue;
      if (any) os << "*";
      os << var_name(vars_[v]);
      if (e > 1) os << "^" << e;
      any = true;
    }
    if (!any) os << "1";
  }
  return os.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = RowHash()(exps_);
  for (auto v : vars_) h = h * 31 + v;
  for (auto& c : coefs_) h = h * 131 + mpz_fdiv_ui(c.get_mpz_t(), 1000000007ul);
  return h;
}

// ---------------------------------------------------------------- gcd

namespace {

constexpr std::uint64_t kP = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(r & kP), hi = static_cast<std::uint64_t>(r >> 61);
  std::uint64_t s = lo + hi;
  return s >= kP ? s - kP : s;
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kP ? s - kP : s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kP - 2); }
std::uint64_t zmod(const Integer& z) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mpz_class(static_cast<unsigned long>(kP)).get_mpz_t());
  return r.get_ui();
}

using UPoly = std::vector<std::uint64_t>;  // coefficient of x^i at i

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t f = mulmod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = submod(a[shift + i], mulmod(f, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Univariate image in variable index k with the other variables at given values.
UPoly image(const Polynomial& p, VarId x, const std::map<VarId, std::uint64_t>& pt) {
  const auto& vars = p.vars();
  const std::size_t n = vars.size();
  UPoly out(p.degree(x) + 1, 0);
  for (std::size_t t = 0; t < p.num_terms(); ++t) {
    std::uint64_t val = zmod(p.coef(t));
    std::uint32_t dx = 0;
    for (std::size_t v = 0; v < n; ++v) {
      std::uint32_t e = p.exp(t, v);
      if (!e) continue;
      if (vars[v] == x)
        dx = e;
      else
        val = mulmod(val, powmod(pt.at(vars[v]), e));
    }
    out[dx] = addmod(out[dx], val);
  }
  return out;
}

Polynomial positive(Polynomial p) {
  if (!p.is_zero() && p.lc() < 0) return -p;
  return p;
}

Polynomial primitive_positive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer c = p.content();
  if (p.lc() < 0) c = -c;
  return c == 1 ? p : p.divided_by_integer(c);
}

Polynomial gcd_many(std::vector<Polynomial> ps);
Polynomial gcd_prim(const Polynomial& a, const Polynomial& b);

// Upper bound on the degree of gcd(a, b) in x, via a random image mod p.
// Sound whenever the leading coefficients in x do not vanish at the point.
std::uint32_t degree_bound(const Polynomial& a, const Polynomial& b, VarId x, std::mt19937_64& rng) {
  std::uint32_t da = a.degree(x), db = b.degree(x);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::map<VarId, std::uint64_t> pt;
    for (VarId v : a.vars())
      if (v != x) pt[v] = rng() % (kP - 2) + 2;
    for (VarId v : b.vars())
      if (v != x && !pt.count(v)) pt[v] = rng() % (kP - 2) + 2;
    UPoly ia = image(a, x, pt), ib = image(b, x, pt);
    if (ia.size() != da + 1 || ib.size() != db + 1 || ia.back() == 0 || ib.back() == 0) continue;
    UPoly g = ugcd(ia, ib);
    return g.empty() ? std::min(da, db) : static_cast<std::uint32_t>(g.size() - 1);
  }
  return std::min(da, db);
}

// Polynomial as univariate in x with coefficients in the other variables.
std::vector<Polynomial> as_univariate(const Polynomial& p, VarId x) {
  auto cs = p.coefficients_in({x});
  std::vector<Polynomial> out(p.degree(x) + 1);
  for (auto& [k, c] : cs) out[k[0]] = c;
  return out;
}

Polynomial from_univariate(const std::vector<Polynomial>& cs, VarId x) {
  Polynomial p;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    p = p + cs[i] * Polynomial::monomial(1, {{x, static_cast<std::uint32_t>(i)}});
  }
  return p;
}

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b, VarId x) {
  auto ua = as_univariate(a, x), ub = as_univariate(b, x);
  Polynomial ca = gcd_many(ua), cb = gcd_many(ub);
  Polynomial c = gcd(ca, cb);
  for (auto& q : ua) q = q.divexact(ca);
  for (auto& q : ub) q = q.divexact(cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (true) {
    // Pseudo-remainder of ua by ub.
    const Polynomial lcb = ub.back();
    while (ua.size() >= ub.size() && !ua.empty()) {
      Polynomial lca = ua.back();
      std::size_t shift = ua.size() - ub.size();
      for (auto& q : ua) q = q * lcb;
      for (std::size_t i = 0; i < ub.size(); ++i) ua[shift + i] = ua[shift + i] - lca * ub[i];
      while (!ua.empty() && ua.back().is_zero()) ua.pop_back();
    }
    if (ua.empty()) break;
    Polynomial cr = gcd_many(ua);
    for (auto& q : ua) q = q.divexact(cr);
    if (ua.size() == 1) {
      ub = {Polynomial(1)};
      break;
    }
    std::swap(ua, ub);
  }
  Polynomial g = from_univariate(ub, x);
  return positive(primitive_positive(g) * c);
}

Polynomial gcd_many(std::vector<Polynomial> ps) {
  ps.erase(std::remove_if(ps.begin(), ps.end(), [](const Polynomial& p) { return p.is_zero(); }), ps.end());
  if (ps.empty()) return Polynomial();
  std::sort(ps.begin(), ps.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.num_terms() < b.num_terms();
  });
  Polynomial g = positive(ps[0]);
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (g.is_constant() && g.lc() == 1) break;
    g = gcd(g, ps[i]);
  }
  return g;
}

// Both arguments primitive, free of monomial factors, with positive leading coefficient.
Polynomial gcd_prim(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a;
  std::vector<VarId> common, onlya, onlyb;
  for (VarId v : a.vars()) {
    if (std::find(b.vars().begin(), b.vars().end(), v) != b.vars().end())
      common.push_back(v);
    else
      onlya.push_back(v);
  }
  for (VarId v : b.vars())
    if (std::find(a.vars().begin(), a.vars().end(), v) == a.vars().end()) onlyb.push_back(v);
  if (common.empty()) return Polynomial(1);
  if (!onlya.empty() || !onlyb.empty()) {
    // The gcd lives in the common variables only.
    std::vector<Polynomial> parts;
    if (onlya.empty()) {
      parts.push_back(a);
    } else {
      for (auto& [k, c] : a.coefficients_in(onlya)) parts.push_back(c);
    }
    if (onlyb.empty()) {
      parts.push_back(b);
    } else {
      for (auto& [k, c] : b.coefficients_in(onlyb)) parts.push_back(c);
    }
    return gcd_many(std::move(parts));
  }
  thread_local std::mt19937_64 rng(0x5eed1234abcdull);
  std::vector<VarId> zero, pos;
  std::map<VarId, std::uint32_t> bound;
  for (VarId v : common) {
    std::uint32_t d = degree_bound(a, b, v, rng);
    bound[v] = d;
    (d == 0 ? zero : pos).push_back(v);
  }
  if (pos.empty()) return Polynomial(1);
  if (!zero.empty()) {
    std::vector<Polynomial> parts;
    for (auto& [k, c] : a.coefficients_in(zero)) parts.push_back(c);
    for (auto& [k, c] : b.coefficients_in(zero)) parts.push_back(c);
    return gcd_many(std::move(parts));
  }
  // Candidate: one input divides the other.
  auto fits = [&](const Polynomial& p) {
    for (VarId v : common)
      if (p.degree(v) != bound[v]) return false;
    return true;
  };
  Polynomial q;
  if (fits(b) && a.divides_into(b, q)) return b;
  if (fits(a) && b.divides_into(a, q)) return a;
  VarId x = pos[0];
  for (VarId v : pos)
    if (std::max(a.degree(v), b.degree(v)) < std::max(a.degree(x), b.degree(x))) x = v;
  return prs_gcd(a, b, x);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  Integer ca = a.content(), cb = b.content(), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Polynomial ma = a.monomial_content(), mb = b.monomial_content();
  // common monomial factor
  std::vector<std::pair<VarId, std::uint32_t>> mins;
  for (VarId v : ma.vars()) {
    std::uint32_t e = std::min(ma.degree(v), mb.degree(v));
    if (e) mins.emplace_back(v, e);
  }
  Polynomial m = Polynomial::monomial(c, mins);
  if (a.is_monomial() || b.is_monomial()) return m;
  Polynomial pa = a.divexact(ma).divided_by_integer(a.lc() < 0 ? Integer(-ca) : ca);
  Polynomial pb = b.divexact(mb).divided_by_integer(b.lc() < 0 ? Integer(-cb) : cb);
  Polynomial g = gcd_prim(pa, pb);
  return g * m;
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction make_reduced(Polynomial n, Polynomial d) {
  if (n.is_zero()) return RationalFunction();
  if (d.lc() < 0) {
    n = -n;
    d = -d;
  }
  return RationalFunction(std::move(n), std::move(d), RationalFunction::NoCanon{});
}

RationalFunction RationalFunction::from_coprime(Polynomial n, Polynomial d) {
  if (d.is_zero()) throw ArithmeticError("division by zero polynomial");
  return make_reduced(std::move(n), std::move(d));
}

RationalFunction::RationalFunction(const Scalar& s)
    : num_(Integer(s.get_num())), den_(Integer(s.get_den())) {}

RationalFunction::RationalFunction(const Polynomial& n, const Polynomial& d) {
  if (d.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (n.is_zero()) {
    num_ = Polynomial();
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = gcd(n, d);
  Polynomial nn = n, dd = d;
  if (!(g.is_constant() && g.lc() == 1)) {
    nn = n.divexact(g);
    dd = d.divexact(g);
  }
  *this = make_reduced(std::move(nn), std::move(dd));
}

Scalar RationalFunction::constant_value() const {
  if (!is_constant()) throw ArithmeticError("not a constant");
  if (num_.is_zero()) return 0;
  Scalar s(num_.lc(), den_.lc());
  s.canonicalize();
  return s;
}

std::vector<VarId> RationalFunction::vars() const {
  std::vector<VarId> out = num_.vars();
  for (VarId v : den_.vars())
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  std::sort(out.begin(), out.end(), var_less);
  return out;
}

namespace {
bool is_one(const Polynomial& p) { return p.is_constant() && !p.is_zero() && p.lc() == 1; }
Polynomial reduce_by(const Polynomial& p, const Polynomial& g) { return is_one(g) ? p : p.divexact(g); }
}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    Polynomial n = a.num_ + b.num_;
    if (is_one(a.den_)) return make_reduced(n, a.den_);
    return RationalFunction(n, a.den_);
  }
  Polynomial g = gcd(a.den_, b.den_);
  Polynomial b1 = reduce_by(a.den_, g), d1 = reduce_by(b.den_, g);
  Polynomial num = a.num_ * d1 + b.num_ * b1;
  Polynomial den = b1 * b.den_;
  if (is_one(g)) return make_reduced(num, den);
  Polynomial g2 = gcd(num, g);
  return make_reduced(reduce_by(num, g2), reduce_by(den, g2));
}

RationalFunction RationalFunction::operator-() const { return make_reduced(-num_, den_); }

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  return make_reduced(reduce_by(a.num_, g1) * reduce_by(b.num_, g2), reduce_by(a.den_, g2) * reduce_by(b.den_, g1));
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero rational function");
  return make_reduced(den_, num_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return RationalFunction(1);
  return make_reduced(num_.pow(e), den_.pow(e));
}

std::string RationalFunction::str() const {
  if (is_one(den_)) return num_.str();
  // A denominator stays unbracketed only when it is a constant or a single power.
  const bool num_simple = num_.num_terms() == 1 && num_.lc() > 0 && (num_.lc() == 1 || num_.is_constant());
  const bool den_simple = den_.num_terms() == 1 && (den_.is_constant() || (den_.lc() == 1 && den_.num_vars() == 1));
  return (num_simple ? num_.str() : "(" + num_.str() + ")") + "/" + (den_simple ? den_.str() : "(" + den_.str() + ")");
}

bool RationalFunction::subtraction_free() const {
  for (std::size_t t = 0; t < num_.num_terms(); ++t)
    if (num_.coef(t) < 0) return false;
  for (std::size_t t = 0; t < den_.num_terms(); ++t)
    if (den_.coef(t) < 0) return false;
  return true;
}

RationalFunction add(const RationalFunction& a, const RationalFunction& b) { return a + b; }
RationalFunction sub(const RationalFunction& a, const RationalFunction& b) { return a - b; }
RationalFunction mul(const RationalFunction& a, const RationalFunction& b) { return a * b; }
RationalFunction div(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw ArithmeticError("division by zero rational function");
  return a / b;
}

bool equals(const RationalFunction& a, const RationalFunction& b) {
  return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

namespace {
// p evaluated at the assignment, returned as numerator over prod den_v^{deg_v p}.
Polynomial substitute_poly(const Polynomial& p, const std::vector<VarId>& vars,
                           const std::vector<const RationalFunction*>& vals, const std::vector<std::uint32_t>& degs) {
  std::vector<std::vector<Polynomial>> npow(vars.size()), dpow(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v) {
    npow[v].push_back(Polynomial(1));
    dpow[v].push_back(Polynomial(1));
    for (std::uint32_t e = 1; e <= degs[v]; ++e) {
      npow[v].push_back(npow[v].back() * vals[v]->num());
      dpow[v].push_back(dpow[v].back() * vals[v]->den());
    }
  }
  Polynomial out;
  const auto& pv = p.vars();
  for (std::size_t t = 0; t < p.num_terms(); ++t) {
    Polynomial term(p.coef(t));
    for (std::size_t v = 0; v < vars.size(); ++v) {
      std::uint32_t e = 0;
      auto it = std::find(pv.begin(), pv.end(), vars[v]);
      if (it != pv.end()) e = p.exp(t, it - pv.begin());
      term = term * npow[v][e] * dpow[v][degs[v] - e];
    }
    out = out + term;
  }
  return out;
}
}  // namespace

RationalFunction substitute(const RationalFunction& f, const Assignment& assignment) {
  std::vector<VarId> vars = f.vars();
  std::vector<const RationalFunction*> vals;
  for (VarId v : vars) {
    auto it = assignment.find(var_name(v));
    if (it == assignment.end()) throw ArithmeticError("substitute: variable " + var_name(v) + " not assigned");
    vals.push_back(&it->second);
  }
  std::vector<std::uint32_t> dn, dd;
  for (VarId v : vars) {
    dn.push_back(f.num().degree(v));
    dd.push_back(f.den().degree(v));
  }
  Polynomial n = substitute_poly(f.num(), vars, vals, dn);
  Polynomial d = substitute_poly(f.den(), vars, vals, dd);
  if (d.is_zero()) throw ArithmeticError("substitute: denominator vanishes identically");
  // Balance the powers of the value denominators.
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (dd[v] > dn[v]) n = n * vals[v]->den().pow(dd[v] - dn[v]);
    if (dn[v] > dd[v]) d = d * vals[v]->den().pow(dn[v] - dd[v]);
  }
  return RationalFunction(n, d);
}

RationalFunction partial_derivative(const RationalFunction& f, const std::string& v) {
  VarId x = var_id(v);
  Polynomial n = f.num().derivative(x) * f.den() - f.num() * f.den().derivative(x);
  return RationalFunction(n, f.den() * f.den());
}

RationalFunction partial_log_derivative(const RationalFunction& f, const std::string& v) {
  VarId x = var_id(v);
  Polynomial n = f.num().log_derivative(x) * f.den() - f.num() * f.den().log_derivative(x);
  return RationalFunction(n, f.den() * f.den());
}

Scalar evaluate(const Polynomial& p, const std::map<std::string, Scalar>& point) {
  const auto& vars = p.vars();
  std::vector<Scalar> vals;
  for (VarId v : vars) {
    auto it = point.find(var_name(v));
    if (it == point.end()) throw ArithmeticError("evaluate: variable " + var_name(v) + " has no value");
    vals.push_back(it->second);
  }
  Scalar sum = 0;
  for (std::size_t t = 0; t < p.num_terms(); ++t) {
    Scalar term(p.coef(t));
    for (std::size_t v = 0; v < vars.size(); ++v) {
      std::uint32_t e = p.exp(t, v);
      if (!e) continue;
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), vals[v].get_num_mpz_t(), e);
      mpz_pow_ui(d.get_mpz_t(), vals[v].get_den_mpz_t(), e);
      Scalar f(n, d);
      f.canonicalize();
      term *= f;
    }
    sum += term;
  }
  return sum;
}

Scalar evaluate(const RationalFunction& f, const std::map<std::string, Scalar>& point) {
  Scalar d = evaluate(f.den(), point);
  if (d == 0) throw ArithmeticError("evaluate: denominator vanishes at the point");
  return evaluate(f.num(), point) / d;
}

// ---------------------------------------------------------------- parsing

namespace {
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}
  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at " + std::to_string(i_) + ": " + what + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (eat('*')) {
        r = r * unary();
      } else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else {
        return r;
      }
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction base = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else if (eat('(')) {
        neg = eat('-');
        long e = integer();
        if (!eat(')')) fail("expected )");
        return base.pow(neg ? -e : e);
      }
      long e = integer();
      return base.pow(neg ? -e : e);
    }
    return base;
  }
  long integer() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer");
    return std::stol(s_.substr(st, i_ - st));
  }
  RationalFunction atom() {
    skip();
    if (eat('(')) {
      RationalFunction r = expr();
      if (!eat(')')) fail("expected )");
      return r;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RationalFunction(Polynomial(Integer(s_.substr(st, i_ - st))));
    }
    if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      std::size_t st = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
        ++i_;
      return RationalFunction::var(s_.substr(st, i_ - st));
    }
    fail("expected operand");
  }
};
}  // namespace

RationalFunction RationalFunction::parse(const std::string& text) { return Parser(text).parse(); }

}  // namespace cx
