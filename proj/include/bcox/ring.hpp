#pragma once

// Exact arithmetic in multivariate Laurent polynomials over Q and in the
// rational functions built from them.
//
// Rational functions keep their denominator as a list of primitive,
// normalized factors with multiplicities.  Units of the Laurent ring
// (monomials times nonzero rationals) never appear in a denominator: they
// are moved into the numerator.  After every operation a factor is
// cancelled against the numerator whenever it divides it exactly, so values
// built from irreducible, pairwise coprime factors have a unique
// representation.  Equality never relies on that: it is decided by
// cross-multiplication.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bcox/errors.hpp"

namespace bcox {

using Rational = mpq_class;

inline constexpr std::size_t kMaxVariables = 48;

class Registry;

/// A named indeterminate.  Only meaningful together with its registry.
struct Variable {
  const Registry* registry = nullptr;
  std::uint16_t index = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Append-only table of variable names.  The position of a name is its
/// rank in the monomial order, so names added later never change the
/// meaning or the order of existing values.
class Registry {
 public:
  Registry() = default;
  Registry(std::initializer_list<std::string_view> names) {
    for (auto n : names) add(n);
  }
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  Variable add(std::string_view name) {
    std::lock_guard lock(mutex_);
    return add_locked(name);
  }

  /// Existing variable of that name, or a newly appended one.
  Variable get_or_add(std::string_view name) {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return Variable{this, static_cast<std::uint16_t>(i)};
    return add_locked(name);
  }

  /// Appends `prefix1`, `prefix2`, ... choosing the first unused name.
  Variable fresh(std::string_view prefix) {
    std::lock_guard lock(mutex_);
    for (std::size_t k = 1;; ++k) {
      std::string candidate = std::string(prefix) + std::to_string(k);
      if (std::find(names_.begin(), names_.end(), candidate) == names_.end())
        return add_locked(candidate);
    }
  }

  std::optional<Variable> find(std::string_view name) const {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return Variable{this, static_cast<std::uint16_t>(i)};
    return std::nullopt;
  }

  Variable operator[](std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw UsageError("unknown variable '" + std::string(name) + "'");
  }

  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::string& name(Variable v) const { return names_.at(v.index); }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return names_.size();
  }

 private:
  Variable add_locked(std::string_view name) {
    if (name.empty()) throw UsageError("empty variable name");
    if (std::find(names_.begin(), names_.end(), name) != names_.end())
      throw UsageError("duplicate variable '" + std::string(name) + "'");
    if (names_.size() >= kMaxVariables) throw CapabilityError("variable registry is full");
    names_.emplace_back(name);
    return Variable{this, static_cast<std::uint16_t>(names_.size() - 1)};
  }

  mutable std::mutex mutex_;
  std::deque<std::string> names_;
};

/// Exponent vector with possibly negative entries.  Ordered graded
/// lexicographically: total degree first, then exponents in registry order.
class Monomial {
 public:
  using Exponent = std::int16_t;

  Monomial() { exps_.fill(0); }

  static Monomial variable(std::size_t index, int power = 1) {
    Monomial m;
    m.exps_.at(index) = checked(power);
    m.degree_ = power;
    return m;
  }

  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const { return degree_; }
  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.exps_[i] = checked(int(exps_[i]) + o.exps_[i]);
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.exps_[i] = checked(int(exps_[i]) - o.exps_[i]);
    r.degree_ = degree_ - o.degree_;
    return r;
  }

  Monomial pow(int k) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.exps_[i] = checked(int(exps_[i]) * k);
    r.degree_ = degree_ * k;
    return r;
  }

  static Monomial min(const Monomial& a, const Monomial& b) {
    Monomial r;
    int d = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) d += r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    r.degree_ = d;
    return r;
  }

  static Monomial max(const Monomial& a, const Monomial& b) {
    Monomial r;
    int d = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) d += r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ = d;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.exps_ <=> b.exps_;
  }

 private:
  static Exponent checked(int e) {
    if (e > 32767 || e < -32768) throw CapabilityError("monomial exponent overflow");
    return static_cast<Exponent>(e);
  }

  std::array<Exponent, kMaxVariables> exps_;
  int degree_ = 0;
};

namespace detail {

inline const Registry* common_registry(const Registry* a, const Registry* b) {
  if (a == nullptr) return b;
  if (b == nullptr || a == b) return a;
  throw UsageError("operands belong to different variable registries");
}

inline int cmp(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

}  // namespace detail

/// Finite sum of monomials with nonzero rational coefficients, stored in
/// strictly decreasing monomial order.
class LaurentPoly {
 public:
  struct Term {
    Monomial monomial;
    Rational coefficient;
  };

  LaurentPoly() = default;

  LaurentPoly(const Registry* registry, const Rational& c) : registry_(registry) {
    if (sgn(c) != 0) terms_.push_back({Monomial(), c});
  }

  static LaurentPoly constant(const Registry* registry, const Rational& c) { return {registry, c}; }

  static LaurentPoly variable(Variable v, int power = 1) {
    return monomial(v.registry, Monomial::variable(v.index, power), Rational(1));
  }

  static LaurentPoly monomial(const Registry* registry, const Monomial& m, const Rational& c) {
    LaurentPoly p;
    p.registry_ = registry;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Sum of arbitrary terms (any order, repeats allowed).
  static LaurentPoly from_terms(const Registry* registry, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) { return l.monomial > r.monomial; });
    LaurentPoly p;
    p.registry_ = registry;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coefficient += t.coefficient;
        if (sgn(p.terms_.back().coefficient) == 0) p.terms_.pop_back();
      } else if (sgn(t.coefficient) != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const Registry* registry() const { return registry_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  Rational constant_term() const {
    for (const auto& t : terms_)
      if (t.monomial.is_one()) return t.coefficient;
    return Rational(0);
  }

  const Term& leading_term() const { return terms_.front(); }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    const Registry* reg = detail::common_registry(a.registry_, b.registry_);
    if (a.is_zero() || b.is_zero()) return LaurentPoly(reg, 0);
    if (b.is_monomial()) return a.times_term(b.terms_[0].monomial, b.terms_[0].coefficient, reg);
    if (a.is_monomial()) return b.times_term(a.terms_[0].monomial, a.terms_[0].coefficient, reg);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) prod.push_back({x.monomial * y.monomial, x.coefficient * y.coefficient});
    std::sort(prod.begin(), prod.end(), [](const Term& l, const Term& r) { return l.monomial > r.monomial; });
    LaurentPoly r;
    r.registry_ = reg;
    for (auto& t : prod) {
      if (!r.terms_.empty() && r.terms_.back().monomial == t.monomial) {
        r.terms_.back().coefficient += t.coefficient;
        if (sgn(r.terms_.back().coefficient) == 0) r.terms_.pop_back();
      } else {
        r.terms_.push_back(std::move(t));
      }
    }
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const Rational& c) {
    if (sgn(c) == 0) return LaurentPoly(a.registry_, 0);
    LaurentPoly r = a;
    for (auto& t : r.terms_) t.coefficient *= c;
    return r;
  }
  friend LaurentPoly operator*(const Rational& c, const LaurentPoly& a) { return a * c; }

  LaurentPoly times_term(const Monomial& m, const Rational& c, const Registry* reg = nullptr) const {
    LaurentPoly r;
    r.registry_ = reg ? reg : registry_;
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coefficient * c});
    return r;
  }

  /// Nonnegative powers; negative powers only for single terms.
  LaurentPoly pow(int k) const {
    if (k < 0) {
      if (!is_monomial()) throw DomainError("negative power of a non-monomial Laurent polynomial");
      Rational c = 1;
      for (int i = 0; i < -k; ++i) c /= terms_[0].coefficient;
      return monomial(registry_, terms_[0].monomial.pow(k), c);
    }
    LaurentPoly result(registry_, 1), base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  Monomial min_exponents() const {
    Monomial m = terms_.empty() ? Monomial() : terms_[0].monomial;
    for (const auto& t : terms_) m = Monomial::min(m, t.monomial);
    return m;
  }

  Monomial max_exponents() const {
    Monomial m = terms_.empty() ? Monomial() : terms_[0].monomial;
    for (const auto& t : terms_) m = Monomial::max(m, t.monomial);
    return m;
  }

  /// Exact quotient `*this / d`, or nullopt when `d` does not divide.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const {
    const Registry* reg = detail::common_registry(registry_, d.registry_);
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    if (is_zero()) return LaurentPoly(reg, 0);
    if (d.is_monomial()) return times_term(Monomial() / d.terms_[0].monomial, 1 / d.terms_[0].coefficient, reg);
    // Every quotient term lies in the box spanned by the per-variable
    // degree bounds; leaving it proves non-divisibility.
    const Monomial lo = min_exponents() / d.min_exponents();
    const Monomial hi = max_exponents() / d.max_exponents();
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (lo[i] > hi[i]) return std::nullopt;
    if (is_monomial()) return std::nullopt;  // units have no non-unit divisors
    LaurentPoly rem = *this, quotient;
    quotient.registry_ = reg;
    const auto& lead = d.terms_.front();
    while (!rem.is_zero()) {
      Monomial m = rem.terms_.front().monomial / lead.monomial;
      for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (m[i] < lo[i] || m[i] > hi[i]) return std::nullopt;
      Rational c = rem.terms_.front().coefficient / lead.coefficient;
      quotient.terms_.push_back({m, c});
      rem.subtract_scaled(d, m, c);
    }
    return quotient;
  }

  /// Rational content: the positive rational g with *this / g having coprime
  /// integer coefficients.
  Rational content() const {
    mpz_class num = 0, den = 1;
    for (const auto& t : terms_) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coefficient.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
    }
    Rational c(num, den);
    c.canonicalize();
    return c;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    detail::common_registry(a.registry_, b.registry_);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].monomial != b.terms_[i].monomial || a.terms_[i].coefficient != b.terms_[i].coefficient)
        return false;
    return true;
  }

  /// Total order used to sort denominator factors deterministically.
  friend std::strong_ordering compare(const LaurentPoly& a, const LaurentPoly& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.terms_[i].monomial <=> b.terms_[i].monomial; c != 0) return c;
      int c = detail::cmp(a.terms_[i].coefficient, b.terms_[i].coefficient);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
  }

  /// Canonical rendering: terms in decreasing monomial order, caret
  /// exponents, `*` between factors, e.g. `q^2 - 3/2*q*lambda^-1 + 1`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coefficient;
      if (first) {
        if (sgn(c) < 0) out += "-";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      c = abs(c);
      std::string mono = render_monomial(t.monomial);
      if (mono.empty()) {
        out += c.get_str();
      } else {
        if (c != 1) out += c.get_str() + "*";
        out += mono;
      }
      first = false;
    }
    return out;
  }

  std::string render_monomial(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += registry_ ? registry_->name(i) : ("v" + std::to_string(i));
      if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

 private:
  static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
    LaurentPoly r;
    r.registry_ = detail::common_registry(a.registry_, b.registry_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].monomial > b.terms_[j].monomial)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].monomial > a.terms_[i].monomial) {
        r.terms_.push_back(b.terms_[j]);
        if (subtract) r.terms_.back().coefficient = -r.terms_.back().coefficient;
        ++j;
      } else {
        Rational c = a.terms_[i].coefficient;
        if (subtract)
          c -= b.terms_[j].coefficient;
        else
          c += b.terms_[j].coefficient;
        if (sgn(c) != 0) r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // *this -= c * m * d
  void subtract_scaled(const LaurentPoly& d, const Monomial& m, const Rational& c) {
    std::vector<Term> out;
    out.reserve(terms_.size() + d.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < d.terms_.size()) {
      if (j == d.terms_.size()) {
        out.push_back(std::move(terms_[i++]));
        continue;
      }
      Monomial dm = d.terms_[j].monomial * m;
      if (i < terms_.size() && terms_[i].monomial > dm) {
        out.push_back(std::move(terms_[i++]));
      } else if (i == terms_.size() || dm > terms_[i].monomial) {
        out.push_back({dm, -(d.terms_[j].coefficient * c)});
        ++j;
      } else {
        Rational v = terms_[i].coefficient - d.terms_[j].coefficient * c;
        if (sgn(v) != 0) out.push_back({dm, std::move(v)});
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
  }

  const Registry* registry_ = nullptr;
  std::vector<Term> terms_;
};

namespace detail {

// Heuristic multivariate GCD for polynomials with integer coefficients and
// nonnegative exponents: evaluate one variable at a large integer, recurse,
// and rebuild the candidate from its balanced xi-adic digits.  A candidate
// is accepted only after it divides both inputs exactly.

inline mpz_class max_norm(const LaurentPoly& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    mpz_class a = abs(t.coefficient.get_num());
    if (a > m) m = a;
  }
  return m;
}

inline LaurentPoly evaluate_at(const LaurentPoly& p, std::size_t var, const mpz_class& xi) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const int e = t.monomial[var];
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(e));
    out.push_back({t.monomial / Monomial::variable(var, e), t.coefficient * Rational(f)});
  }
  return LaurentPoly::from_terms(p.registry(), std::move(out));
}

inline LaurentPoly interpolate_at(LaurentPoly h, std::size_t var, const mpz_class& xi) {
  std::vector<LaurentPoly::Term> out;
  const mpz_class half = xi / 2;
  for (int e = 0; !h.is_zero(); ++e) {
    std::vector<LaurentPoly::Term> digit;
    for (const auto& t : h.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), t.coefficient.get_num_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) digit.push_back({t.monomial, Rational(r)});
    }
    for (const auto& t : digit) out.push_back({t.monomial * Monomial::variable(var, e), t.coefficient});
    h = (h - LaurentPoly::from_terms(h.registry(), std::move(digit))) * (Rational(1) / Rational(xi));
    if (e > 4096) return LaurentPoly(h.registry(), 0);
  }
  return LaurentPoly::from_terms(h.registry(), std::move(out));
}

// Primitive, positive leading coefficient; integer input assumed.
inline LaurentPoly integer_primitive(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Rational c = p.content();
  if (sgn(p.leading_term().coefficient) < 0) c = -c;
  return p * (1 / c);
}

inline std::optional<LaurentPoly> heuristic_gcd(const LaurentPoly& a, const LaurentPoly& b, int depth = 0) {
  const Registry* reg = common_registry(a.registry(), b.registry());
  if (a.is_zero()) return integer_primitive(b);
  if (b.is_zero()) return integer_primitive(a);
  const Monomial hi = Monomial::max(a.max_exponents(), b.max_exponents());
  std::size_t var = kMaxVariables;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (hi[i] > 0) {
      var = i;
      break;
    }
  mpz_class ca = a.content().get_num(), cb = b.content().get_num(), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (var == kMaxVariables) return LaurentPoly(reg, Rational(cg));
  const LaurentPoly pa = integer_primitive(a), pb = integer_primitive(b);
  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 8 && depth < 64; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) > 20000) break;
    const LaurentPoly ea = evaluate_at(pa, var, xi), eb = evaluate_at(pb, var, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (auto h = heuristic_gcd(ea, eb, depth + 1)) {
        LaurentPoly g = integer_primitive(interpolate_at(*h, var, xi));
        if (!g.is_zero() && pa.divide_exact(g) && pb.divide_exact(g)) return g * Rational(cg);
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace detail

/// Quotient of Laurent polynomials.  The denominator is held factored; see
/// the file comment for the normal form.
class RationalFn {
 public:
  struct Factor {
    LaurentPoly poly;  // primitive, monomial-free, positive leading coefficient
    int power = 0;
  };

  RationalFn() = default;
  RationalFn(LaurentPoly numerator) : num_(std::move(numerator)) {}  // NOLINT: polynomials embed
  RationalFn(const Registry* registry, const Rational& c) : num_(registry, c) {}

  static RationalFn constant(const Registry* registry, const Rational& c) { return {registry, c}; }
  static RationalFn variable(Variable v, int power = 1) { return LaurentPoly::variable(v, power); }

  /// num / den; throws DomainError when den is zero.
  static RationalFn fraction(const LaurentPoly& num, const LaurentPoly& den) {
    return RationalFn(num) / RationalFn(den);
  }

  const Registry* registry() const {
    if (num_.registry()) return num_.registry();
    return den_.empty() ? nullptr : den_.front().poly.registry();
  }

  const LaurentPoly& numerator() const { return num_; }
  std::span<const Factor> denominator_factors() const { return den_; }

  LaurentPoly denominator() const {
    LaurentPoly d(registry(), 1);
    for (const auto& f : den_) d = d * f.poly.pow(f.power);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Rational constant_value() const {
    if (!is_constant()) throw UsageError("rational function is not a constant: " + to_string());
    return num_.constant_term();
  }

  RationalFn operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) { return add(a, b, false); }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return add(a, b, true); }

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    const Registry* reg = detail::common_registry(a.registry(), b.registry());
    if (a.is_zero() || b.is_zero()) return RationalFn(reg, 0);
    if (a.den_.empty() && b.den_.empty()) return RationalFn(a.num_ * b.num_);
    RationalFn r;
    LaurentPoly an = a.num_, bn = b.num_;
    std::vector<Factor> ad = a.den_, bd = b.den_;
    cancel_into(bn, ad);
    cancel_into(an, bd);
    r.num_ = an * bn;
    r.den_ = merge_factors(ad, bd);
    return r;
  }

  friend RationalFn operator*(const RationalFn& a, const Rational& c) {
    RationalFn r = a;
    r.num_ = r.num_ * c;
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }
  friend RationalFn operator*(const Rational& c, const RationalFn& a) { return a * c; }

  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }

  RationalFn inverse() const {
    if (is_zero()) throw DomainError("division by zero rational function");
    RationalFn r;
    r.num_ = LaurentPoly(registry(), 1);
    for (const auto& f : den_) r.num_ = r.num_ * f.poly.pow(f.power);
    r.divide_by_polynomial(num_);
    return r;
  }

  RationalFn pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFn result(registry(), 1), base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  /// Exact equality by cross-multiplication.
  friend bool rf_equal(const RationalFn& a, const RationalFn& b) {
    detail::common_registry(a.registry(), b.registry());
    if (a.den_.empty() && b.den_.empty()) return a.num_ == b.num_;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.num_ * b.denominator() == b.num_ * a.denominator();
  }

  friend bool operator==(const RationalFn& a, const RationalFn& b) { return rf_equal(a, b); }

  /// Lowest terms: numerator and denominator divided by their gcd, the
  /// denominator held as one primitive factor.  Equal values give equal
  /// results whenever the gcd heuristic succeeds (it falls back to the
  /// cancellation-only form otherwise).
  RationalFn normalized() const {
    if (den_.empty() || num_.is_zero()) return *this;
    auto [nu, np] = split_unit(num_);
    auto [du, dp] = split_unit(denominator());
    if (auto g = detail::heuristic_gcd(np, dp); g && !g->is_constant()) {
      np = *np.divide_exact(*g);
      dp = *dp.divide_exact(*g);
    }
    RationalFn r;
    r.num_ = np * nu * du.pow(-1);
    if (!dp.is_constant()) r.den_.push_back({dp, 1});
    else r.num_ = r.num_ * (1 / dp.constant_term());
    return r;
  }

  /// `num` when there is no denominator, `(num)/(den)` otherwise, in
  /// lowest terms with both parts in canonical polynomial rendering.
  std::string to_string() const {
    if (den_.empty()) return num_.to_string();
    const RationalFn r = normalized();
    if (r.den_.empty()) return r.num_.to_string();
    return "(" + r.num_.to_string() + ")/(" + r.denominator().to_string() + ")";
  }

  /// Splits a nonzero polynomial into unit * primitive part.  The primitive
  /// part has its minimal exponents at zero, coprime integer coefficients
  /// and a positive leading coefficient.
  static std::pair<LaurentPoly, LaurentPoly> split_unit(const LaurentPoly& p) {
    const Monomial shift = p.min_exponents();
    Rational c = p.content();
    if (sgn(p.leading_term().coefficient) < 0) c = -c;
    LaurentPoly unit = LaurentPoly::monomial(p.registry(), shift, c);
    LaurentPoly prim = p.times_term(Monomial() / shift, 1 / c);
    return {unit, prim};
  }

 private:
  static RationalFn add(const RationalFn& a, const RationalFn& b, bool subtract) {
    if (b.is_zero()) {
      detail::common_registry(a.registry(), b.registry());
      return a;
    }
    if (a.is_zero()) {
      detail::common_registry(a.registry(), b.registry());
      return subtract ? -b : b;
    }
    if (a.den_.empty() && b.den_.empty()) return RationalFn(subtract ? a.num_ - b.num_ : a.num_ + b.num_);
    // Common denominator: factorwise maximum of the powers.
    std::vector<Factor> common;
    LaurentPoly ascale(a.registry(), 1), bscale(b.registry(), 1);
    std::size_t i = 0, j = 0;
    while (i < a.den_.size() || j < b.den_.size()) {
      if (j == b.den_.size() || (i < a.den_.size() && compare(a.den_[i].poly, b.den_[j].poly) < 0)) {
        bscale = bscale * a.den_[i].poly.pow(a.den_[i].power);
        common.push_back(a.den_[i++]);
      } else if (i == a.den_.size() || compare(b.den_[j].poly, a.den_[i].poly) < 0) {
        ascale = ascale * b.den_[j].poly.pow(b.den_[j].power);
        common.push_back(b.den_[j++]);
      } else {
        const int pa = a.den_[i].power, pb = b.den_[j].power;
        if (pa < pb) ascale = ascale * a.den_[i].poly.pow(pb - pa);
        if (pb < pa) bscale = bscale * a.den_[i].poly.pow(pa - pb);
        common.push_back({a.den_[i].poly, std::max(pa, pb)});
        ++i;
        ++j;
      }
    }
    RationalFn r;
    LaurentPoly an = a.num_ * ascale, bn = b.num_ * bscale;
    r.num_ = subtract ? an - bn : an + bn;
    if (r.num_.is_zero()) return r;
    r.den_ = std::move(common);
    cancel_into(r.num_, r.den_);
    return r;
  }

  // Divides `num` by factors of `den` while they divide exactly.
  static void cancel_into(LaurentPoly& num, std::vector<Factor>& den) {
    if (num.is_zero()) {
      den.clear();
      return;
    }
    for (auto& f : den) {
      while (f.power > 0) {
        if (!could_divide(num, f.poly)) break;
        auto q = num.divide_exact(f.poly);
        if (!q) break;
        num = std::move(*q);
        --f.power;
      }
    }
    std::erase_if(den, [](const Factor& f) { return f.power == 0; });
  }

  static bool could_divide(const LaurentPoly& num, const LaurentPoly& f) {
    if (num.size() < 2) return false;
    const Monomial nlo = num.min_exponents(), nhi = num.max_exponents();
    const Monomial flo = f.min_exponents(), fhi = f.max_exponents();
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (nhi[i] - nlo[i] < fhi[i] - flo[i]) return false;
    return true;
  }

  static std::vector<Factor> merge_factors(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    std::vector<Factor> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && compare(a[i].poly, b[j].poly) < 0)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || compare(b[j].poly, a[i].poly) < 0) {
        out.push_back(b[j++]);
      } else {
        out.push_back({a[i].poly, a[i].power + b[j].power});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // *this /= p for a nonzero polynomial p, keeping the normal form.
  void divide_by_polynomial(const LaurentPoly& p) {
    if (p.is_zero()) throw DomainError("division by zero rational function");
    auto [unit, prim] = split_unit(p);
    num_ = num_ * unit.pow(-1);
    if (prim.is_constant()) return;
    std::vector<LaurentPoly> pending{prim};
    while (!pending.empty()) {
      LaurentPoly f = std::move(pending.back());
      pending.pop_back();
      if (f.is_constant()) continue;
      if (could_divide(num_, f)) {
        if (auto q = num_.divide_exact(f)) {
          num_ = std::move(*q);
          continue;
        }
      }
      // Refine against existing factors so that the factor list stays
      // pairwise coprime whenever divisibility makes that visible.
      bool placed = false;
      for (std::size_t k = 0; k < den_.size() && !placed; ++k) {
        if (den_[k].poly == f) {
          ++den_[k].power;
          placed = true;
        } else if (could_divide(f, den_[k].poly)) {
          if (auto q = f.divide_exact(den_[k].poly)) {
            ++den_[k].power;
            pending.push_back(split_unit(*q).second);
            num_ = num_ * split_unit(*q).first.pow(-1);
            placed = true;
          }
        } else if (could_divide(den_[k].poly, f)) {
          if (auto q = den_[k].poly.divide_exact(f)) {
            const int pw = den_[k].power;
            auto [u, rest] = split_unit(*q);
            num_ = num_ * u.pow(-pw);
            den_.erase(den_.begin() + static_cast<std::ptrdiff_t>(k));
            for (int r = 0; r < pw; ++r) {
              pending.push_back(rest);
              pending.push_back(f);
            }
            pending.push_back(f);
            placed = true;
          }
        }
      }
      if (!placed) {
        auto pos = std::lower_bound(den_.begin(), den_.end(), f,
                                    [](const Factor& x, const LaurentPoly& y) { return compare(x.poly, y) < 0; });
        den_.insert(pos, Factor{std::move(f), 1});
      }
    }
  }

  LaurentPoly num_;
  std::vector<Factor> den_;
};

/// Substitution bindings: variable -> value.
using Bindings = std::vector<std::pair<Variable, RationalFn>>;

namespace detail {

inline RationalFn substitute_poly(const LaurentPoly& p, const Bindings& bindings, const Registry* reg) {
  if (p.is_zero()) return RationalFn(reg, 0);
  // Cache of powers per bound variable.
  struct Cache {
    std::vector<std::pair<int, RationalFn>> powers;
  };
  std::vector<Cache> caches(bindings.size());
  auto power_of = [&](std::size_t b, int e) -> const RationalFn& {
    for (auto& [k, v] : caches[b].powers)
      if (k == e) return v;
    caches[b].powers.emplace_back(e, bindings[b].second.pow(e));
    return caches[b].powers.back().second;
  };
  RationalFn result(reg, 0);
  for (const auto& t : p.terms()) {
    Monomial rest = t.monomial;
    RationalFn value(LaurentPoly::monomial(reg, Monomial(), t.coefficient));
    for (std::size_t b = 0; b < bindings.size(); ++b) {
      const int e = t.monomial[bindings[b].first.index];
      if (e == 0) continue;
      rest = rest / Monomial::variable(bindings[b].first.index, e);
      value = value * power_of(b, e);
    }
    value = value * RationalFn(LaurentPoly::monomial(reg, rest, 1));
    result += value;
  }
  return result;
}

}  // namespace detail

/// Replaces each bound variable by its value.  Throws DomainError when the
/// denominator vanishes identically under the substitution.
inline RationalFn substitute(const RationalFn& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  const Registry* reg = e.registry();
  for (const auto& [v, val] : bindings) {
    reg = detail::common_registry(reg, v.registry);
    reg = detail::common_registry(reg, val.registry());
  }
  RationalFn num = detail::substitute_poly(e.numerator(), bindings, reg);
  RationalFn den(reg, 1);
  for (const auto& f : e.denominator_factors()) {
    RationalFn fv = detail::substitute_poly(f.poly, bindings, reg);
    if (fv.is_zero()) throw DomainError("denominator vanishes identically after substitution");
    den *= fv.pow(f.power);
  }
  return num / den;
}

inline RationalFn substitute(const LaurentPoly& p, const Bindings& bindings) {
  return substitute(RationalFn(p), bindings);
}

/// Lowest common multiple of the factored denominators of `values`.
inline LaurentPoly common_denominator(std::span<const RationalFn> values, const Registry* reg) {
  std::vector<RationalFn::Factor> acc;
  for (const auto& v : values) {
    for (const auto& f : v.denominator_factors()) {
      auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& x) { return x.poly == f.poly; });
      if (it == acc.end())
        acc.push_back(f);
      else
        it->power = std::max(it->power, f.power);
    }
  }
  LaurentPoly d(reg, 1);
  for (const auto& f : acc) d = d * f.poly.pow(f.power);
  return d;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const RationalFn& r) { return os << r.to_string(); }

/// Registry holding every parameter the library uses, in canonical order.
/// Trace parameters and other runtime symbols are appended behind these.
inline Registry& standard_registry() {
  static Registry reg{"q",  "lambda", "Q",  "Q0", "c",     "cp",   "d",  "q1", "t",  "t1", "t2",
                      "u",  "w",      "f1", "zw", "zb",    "a",    "b",  "alpha", "beta", "A"};
  return reg;
}

}  // namespace bcox
