#pragma once

// Markov traces on a tower of algebras, found by solving the linear system
// of normalization, centrality and stabilization conditions over the
// rational-function field.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bcox/algebra.hpp"

namespace bcox {

/// Affine linear system sum_j a_j u_j = b over RationalFn, kept in reduced
/// row echelon form as equations arrive.  The pivot of each new equation
/// is its highest-priority unknown (the largest index), so low-index
/// unknowns are the ones left free.
class AffineSystem {
 public:
  using Row = std::map<int, RationalFn>;

  explicit AffineSystem(std::size_t unknowns, const Registry* reg) : n_(unknowns), reg_(reg), pivot_row_(unknowns, -1) {}

  /// Throws InconsistentSystemError when the equation contradicts earlier ones.
  void add(Row coeffs, RationalFn constant) {
    for (auto it = coeffs.begin(); it != coeffs.end();) it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
    // eliminate existing pivots
    std::vector<int> hits;
    for (const auto& [j, a] : coeffs)
      if (pivot_row_[static_cast<std::size_t>(j)] >= 0) hits.push_back(j);
    for (int j : hits) {
      const RationalFn a = coeffs.at(j);
      const auto& [prow, pconst] = rows_[static_cast<std::size_t>(pivot_row_[static_cast<std::size_t>(j)])];
      for (const auto& [k, c] : prow) {
        RationalFn v = coeffs[k] - a * c;
        if (v.is_zero()) coeffs.erase(k);
        else coeffs[k] = std::move(v);
      }
      constant -= a * pconst;
    }
    if (coeffs.empty()) {
      if (!constant.is_zero()) throw InconsistentSystemError("linear system is inconsistent: 0 = " + constant.to_string());
      return;
    }
    const int pivot = coeffs.rbegin()->first;
    const RationalFn inv = coeffs.rbegin()->second.inverse();
    for (auto& [k, c] : coeffs) c = k == pivot ? RationalFn(reg_, 1) : c * inv;
    constant *= inv;
    // back-substitute into earlier rows
    for (auto& [row, rconst] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const RationalFn a = it->second;
      for (const auto& [k, c] : coeffs) {
        RationalFn v = row[k] - a * c;
        if (v.is_zero()) row.erase(k);
        else row[k] = std::move(v);
      }
      rconst -= a * constant;
    }
    pivot_row_[static_cast<std::size_t>(pivot)] = static_cast<int>(rows_.size());
    rows_.emplace_back(std::move(coeffs), std::move(constant));
  }

  std::size_t unknowns() const { return n_; }
  bool is_pivot(std::size_t j) const { return pivot_row_[j] >= 0; }
  std::size_t rank() const { return rows_.size(); }

  /// Solution with free unknown j replaced by free_value(j).
  template <class FreeValue>
  std::vector<RationalFn> solve(FreeValue free_value) const {
    std::vector<RationalFn> out(n_);
    std::vector<std::optional<RationalFn>> free(n_);
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_pivot(j)) free[j] = free_value(j);
    for (std::size_t j = 0; j < n_; ++j) {
      if (free[j]) {
        out[j] = *free[j];
        continue;
      }
      const auto& [row, constant] = rows_[static_cast<std::size_t>(pivot_row_[j])];
      RationalFn v = constant;
      for (const auto& [k, c] : row)
        if (static_cast<std::size_t>(k) != j) v -= c * *free[static_cast<std::size_t>(k)];
      out[j] = v;
    }
    return out;
  }

 private:
  std::size_t n_;
  const Registry* reg_;
  std::vector<int> pivot_row_;
  std::vector<std::pair<Row, RationalFn>> rows_;
};

/// Stabilization rules tr(w X_k) = positive tr(w), tr(w X_k^-1) = negative tr(w).
struct StabilizationCoefficients {
  RationalFn positive, negative;

  /// (x lambda)^-1 and lambda/x: the coefficients that make
  /// x^(n-1) lambda^e tr(beta) invariant under beta -> beta X_n^(+-1).
  static StabilizationCoefficients kauffman(const Presentation& p) {
    const RationalFn& x = p.parameter("x");
    const RationalFn& lambda = p.parameter("lambda");
    return {(x * lambda).inverse(), lambda / x};
  }
};

/// Linear functional on an algebra given by its values on the basis;
/// values may involve free parameters.
class MarkovTrace {
 public:
  MarkovTrace(const BasisTable* table, std::vector<RationalFn> values, std::vector<std::pair<Variable, Word>> parameters)
      : table_(table), values_(std::move(values)), parameters_(std::move(parameters)) {}

  const BasisTable& table() const { return *table_; }
  const std::vector<RationalFn>& values() const { return values_; }
  /// Free parameters with the basis word whose trace each one is.
  const std::vector<std::pair<Variable, Word>>& parameters() const { return parameters_; }

  RationalFn operator()(const Element& a) const {
    if (a.table() != table_) throw UsageError("trace applied to an element of another algebra");
    RationalFn r(table_->registry(), 0);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!a[i].is_zero()) r += a[i] * values_[i];
    return r;
  }

 private:
  const BasisTable* table_;
  std::vector<RationalFn> values_;
  std::vector<std::pair<Variable, Word>> parameters_;
};

namespace detail {

// Word of `from` rewritten into generator indices of `to`, by name.
inline Word transfer_word(const Word& w, const Presentation& from, const Presentation& to) {
  Word out;
  for (int g : w) {
    const int h = to.generator_index(from.generators.at(static_cast<std::size_t>(g)).name);
    if (h < 0) throw UsageError("generator " + from.generators.at(static_cast<std::size_t>(g)).name + " missing in " + to.name);
    out.push_back(h);
  }
  return out;
}

inline std::string parameter_name(const Presentation& p, const Word& w) {
  std::string s = "s";
  for (int g : w) s += "_" + p.generators.at(static_cast<std::size_t>(g)).name;
  return s;
}

}  // namespace detail

/// Solves tr(1) = 1, tr(b g) = tr(g b) for every basis word b and
/// generator g (which implies tr(ab) = tr(ba) for all a, b), and the
/// stabilization rules for every table of the tower: for a tower algebra
/// on k strands, tr(w X_k^(+-1)) = coefficient * tr(w) for each of its
/// basis words w.  Unknowns left free become registry variables named
/// s_<word>.  Throws InconsistentSystemError when no trace exists.
inline MarkovTrace solve_markov_trace(const BasisTable& t, const std::vector<const BasisTable*>& tower, Registry& reg,
                                      const std::optional<StabilizationCoefficients>& coefficients = std::nullopt) {
  if (&reg != t.registry()) throw UsageError("solve_markov_trace: registry does not belong to the algebra");
  const Presentation& p = t.presentation();
  const StabilizationCoefficients coef = coefficients ? *coefficients : StabilizationCoefficients::kauffman(p);
  const std::size_t dim = t.dimension();
  AffineSystem sys(dim, &reg);
  auto row_of = [](const Element& e) {
    AffineSystem::Row r;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!e[i].is_zero()) r.emplace(static_cast<int>(i), e[i]);
    return r;
  };
  sys.add({{0, RationalFn(&reg, 1)}}, RationalFn(&reg, 1));
  if (!t.basis_word(0).empty()) throw UsageError("basis does not start with the unit");

  for (const auto* lower : tower) {
    const int k = lower->presentation().strands;
    const int gk = t.generator_index("X" + std::to_string(k));
    for (const auto& lw : lower->basis()) {
      const Element w = t.word_element(detail::transfer_word(lw, lower->presentation(), p));
      sys.add(row_of(t.right_multiply(w, gk) - coef.positive * w), RationalFn(&reg, 0));
      sys.add(row_of(t.right_multiply_inverse(w, gk) - coef.negative * w), RationalFn(&reg, 0));
    }
  }
  for (std::size_t g = 0; g < t.generator_count(); ++g) {
    const Element gen = t.generator(static_cast<int>(g));
    for (std::size_t b = 0; b < dim; ++b) {
      Element basis = t.zero();
      basis[b] = RationalFn(&reg, 1);
      sys.add(row_of(t.right_multiply(basis, static_cast<int>(g)) - t.right_multiply(gen, t.basis_word(b))),
              RationalFn(&reg, 0));
    }
  }
  std::vector<std::pair<Variable, Word>> params;
  auto values = sys.solve([&](std::size_t j) {
    const Variable v = reg.get_or_add(detail::parameter_name(p, t.basis_word(j)));
    params.emplace_back(v, t.basis_word(j));
    return RationalFn::variable(v);
  });
  return MarkovTrace(&t, std::move(values), std::move(params));
}

/// Rank of the exact rational matrix (destroyed).
inline std::size_t rational_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

namespace detail {

// Rank over Z/p with p = 2^61 - 1, or nullopt when some denominator
// vanishes mod p.  Never exceeds the rank over Q.
inline std::optional<std::size_t> modular_rank(const std::vector<std::vector<mpq_class>>& m) {
  using u64 = std::uint64_t;
  using u128 = unsigned __int128;
  constexpr u64 p = (u64{1} << 61) - 1;
  auto mulmod = [](u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) % p); };
  auto powmod = [&](u64 a, u64 e) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
      if (e & 1) r = mulmod(r, a);
    return r;
  };
  const mpz_class pz(std::to_string(p));
  auto reduce = [&](const mpz_class& z) {
    mpz_class r = z % pz;
    if (r < 0) r += pz;
    return static_cast<u64>(std::stoull(r.get_str()));
  };
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::vector<u64>> a(rows, std::vector<u64>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (m[i][j] == 0) continue;
      const u64 den = reduce(m[i][j].get_den());
      if (den == 0) return std::nullopt;
      a[i][j] = mulmod(reduce(m[i][j].get_num()), powmod(den, p - 2));
    }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const u64 inv = powmod(a[rank][c], p - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const u64 f = mulmod(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) a[r][k] = (a[r][k] + p - mulmod(f, a[rank][k])) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank of the bilinear form (a, b) -> tr(ab) on the basis, at a rational
/// specialization of every variable the trace and table involve.
inline std::size_t trace_form_rank(const MarkovTrace& tr, const Bindings& point) {
  const BasisTable numeric = tr.table().specialize(point);
  std::vector<mpq_class> vals;
  for (const auto& v : tr.values()) {
    const RationalFn s = substitute(v, point);
    if (!s.is_constant()) throw UsageError("trace_form_rank: specialization leaves free variables in " + s.to_string());
    vals.push_back(s.constant_value());
  }
  const std::size_t dim = numeric.dimension();
  using NumRow = std::vector<std::pair<int, mpq_class>>;
  std::vector<std::vector<NumRow>> rows(numeric.generator_count(), std::vector<NumRow>(dim));
  for (std::size_t g = 0; g < numeric.generator_count(); ++g)
    for (std::size_t b = 0; b < dim; ++b)
      for (const auto& [j, c] : numeric.right_row(static_cast<int>(g), b)) rows[g][b].emplace_back(j, c.constant_value());
  using Vec = std::vector<mpq_class>;
  auto apply = [&](const Vec& v, int g) {
    Vec out(dim);
    for (std::size_t k = 0; k < dim; ++k)
      if (v[k] != 0)
        for (const auto& [l, c] : rows[static_cast<std::size_t>(g)][k]) out[static_cast<std::size_t>(l)] += v[k] * c;
    return out;
  };
  std::vector<std::vector<mpq_class>> gram(dim, std::vector<mpq_class>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    std::map<Word, Vec> prefix;  // b_i * w for prefixes w of basis words
    prefix[Word{}] = Vec(dim);
    prefix[Word{}][i] = 1;
    for (std::size_t j = 0; j < dim; ++j) {
      const Word& w = numeric.basis_word(j);
      Word cur;
      for (int g : w) {
        Word next = cur;
        next.push_back(g);
        if (!prefix.count(next)) prefix[next] = apply(prefix.at(cur), g);
        cur = std::move(next);
      }
      const Vec& v = prefix.at(w);
      mpq_class acc = 0;
      for (std::size_t k = 0; k < dim; ++k)
        if (v[k] != 0) acc += v[k] * vals[k];
      gram[i][j] = acc;
    }
  }
  if (const auto r = detail::modular_rank(gram); r && *r == dim) return dim;
  return rational_rank(std::move(gram));
}

/// Random nonzero rational value for every variable in `vars`, numerators
/// and denominators drawn from [1, 97].
inline Bindings random_point(const std::vector<Variable>& vars, std::mt19937_64& rng, const Registry* reg) {
  std::uniform_int_distribution<int> num(1, 97), den(1, 97), sign(0, 1);
  Bindings b;
  for (const auto& v : vars) {
    mpq_class r(num(rng) * (sign(rng) ? 1 : -1), den(rng));
    r.canonicalize();
    b.emplace_back(v, RationalFn(reg, r));
  }
  return b;
}

}  // namespace bcox
