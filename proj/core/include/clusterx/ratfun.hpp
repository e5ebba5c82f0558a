#pragma once
// Exact multivariate polynomials and rational functions over Z.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cx {

using Scalar = mpq_class;
using Integer = mpz_class;

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Process-wide interning of variable names. Variables are ordered by name.
using VarId = std::uint32_t;
VarId var_id(const std::string& name);
const std::string& var_name(VarId id);
bool var_less(VarId a, VarId b);

std::string scalar_str(const Scalar& s);

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Integer& c);
  explicit Polynomial(long c) : Polynomial(Integer(c)) {}
  static Polynomial var(const std::string& name);
  static Polynomial var(VarId v);
  static Polynomial monomial(const Integer& c, const std::vector<std::pair<VarId, std::uint32_t>>& powers);

  bool is_zero() const { return coefs_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return coefs_.size() == 1; }
  std::size_t num_terms() const { return coefs_.size(); }
  std::size_t num_vars() const { return vars_.size(); }
  const std::vector<VarId>& vars() const { return vars_; }
  const Integer& coef(std::size_t t) const { return coefs_[t]; }
  std::uint32_t exp(std::size_t t, std::size_t v) const { return exps_[t * vars_.size() + v]; }
  // Leading coefficient under graded-lex order.
  const Integer& lc() const { return coefs_.front(); }
  Integer constant_term() const;
  std::uint32_t degree(VarId v) const;
  std::uint32_t total_degree() const;
  Integer content() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  Polynomial scaled(const Integer& c) const;
  Polynomial divided_by_integer(const Integer& c) const;  // exact
  Polynomial pow(unsigned e) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  // Graded-lex comparison of whole polynomials, used for deterministic ordering.
  friend bool operator<(const Polynomial& a, const Polynomial& b);

  // Exact division; returns false when b does not divide *this.
  bool divides_into(const Polynomial& b, Polynomial& quotient) const;  // *this / b
  Polynomial divexact(const Polynomial& b) const;

  Polynomial derivative(VarId v) const;
  Polynomial log_derivative(VarId v) const;  // x_v * d/dx_v
  // Coefficients with respect to the given variables: map from their exponent tuple.
  std::map<std::vector<std::uint32_t>, Polynomial> coefficients_in(const std::vector<VarId>& vs) const;
  // Common monomial factor (min exponent per variable), as a monomial with coefficient 1.
  Polynomial monomial_content() const;

  std::string str() const;
  std::size_t hash() const;

  // Low-level construction: terms in any order, duplicates merged, zeros dropped.
  static Polynomial from_terms(std::vector<VarId> vars, std::vector<std::uint32_t> exps, std::vector<Integer> coefs);

 private:
  std::vector<VarId> vars_;          // sorted by var_less, every listed variable occurs
  std::vector<std::uint32_t> exps_;  // row-major, one row per term
  std::vector<Integer> coefs_;       // nonzero, terms in decreasing graded-lex order

  void prune_vars();
  std::vector<std::uint32_t> exps_over(const std::vector<VarId>& target) const;
  friend class PolyAccess;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT implicit constant
  explicit RationalFunction(const Scalar& s);
  explicit RationalFunction(const Polynomial& p) : num_(p), den_(1) {}
  RationalFunction(const Polynomial& n, const Polynomial& d);  // canonicalizes
  static RationalFunction var(const std::string& name) { return RationalFunction(Polynomial::var(name)); }
  static RationalFunction parse(const std::string& text);
  // Caller guarantees gcd(n, d) = 1; only the sign is normalized.
  static RationalFunction from_coprime(Polynomial n, Polynomial d);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Scalar constant_value() const;  // requires is_constant()
  std::vector<VarId> vars() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  RationalFunction inverse() const;
  RationalFunction pow(int e) const;
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

  // Canonical forms are unique, so structural equality is mathematical equality.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string str() const;
  // True when numerator and denominator have no negative coefficients.
  bool subtraction_free() const;

 private:
  Polynomial num_, den_;
  struct NoCanon {};
  RationalFunction(Polynomial n, Polynomial d, NoCanon) : num_(std::move(n)), den_(std::move(d)) {}
  friend RationalFunction make_reduced(Polynomial n, Polynomial d);
};

using Assignment = std::map<std::string, RationalFunction>;

RationalFunction add(const RationalFunction& a, const RationalFunction& b);
RationalFunction sub(const RationalFunction& a, const RationalFunction& b);
RationalFunction mul(const RationalFunction& a, const RationalFunction& b);
RationalFunction div(const RationalFunction& a, const RationalFunction& b);
// Decided by cross multiplication, independent of canonical form.
bool equals(const RationalFunction& a, const RationalFunction& b);
RationalFunction substitute(const RationalFunction& f, const Assignment& assignment);
RationalFunction partial_log_derivative(const RationalFunction& f, const std::string& v);
RationalFunction partial_derivative(const RationalFunction& f, const std::string& v);
// Evaluate at exact rationals; throws ArithmeticError if the denominator vanishes.
Scalar evaluate(const RationalFunction& f, const std::map<std::string, Scalar>& point);
Scalar evaluate(const Polynomial& p, const std::map<std::string, Scalar>& point);

}  // namespace cx
