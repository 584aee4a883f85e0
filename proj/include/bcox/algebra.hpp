#pragma once

// Finite-dimensional algebras given by generators and relations.
//
// compute_basis() builds the right regular module of the presented algebra
// by linear closure (vector enumeration): starting from the empty word it
// right-multiplies live basis vectors by generators, imposes every
// relation at every live vector, and eliminates the largest vector (in
// length-lexicographic word order) from each linear dependency found.  The
// result is a basis of words together with the matrices of right
// multiplication by each generator.  Because relations are imposed as
// linear constraints rather than used as a rewriting system, the dimension
// found is that of the presented algebra whether or not the rules are
// confluent.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bcox/braid.hpp"
#include "bcox/errors.hpp"
#include "bcox/ring.hpp"

namespace bcox {

/// Word in the generators of a presentation (generator indices).
using Word = std::vector<int>;

/// Length first, then lexicographic in generator index.
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Linear combination of words.
using WordCombination = std::vector<std::pair<Word, RationalFn>>;

struct Generator {
  std::string name;
  /// Expression of the inverse as a combination of words, when invertible.
  std::optional<WordCombination> inverse;
};

/// Directed rule `lhs -> rhs`; lhs is larger than every word of rhs.
struct Rule {
  Word lhs;
  WordCombination rhs;
};

struct Presentation {
  std::string name;
  int strands = 0;
  const Registry* registry = nullptr;
  std::vector<Generator> generators;
  std::vector<Rule> rules;
  std::optional<std::size_t> expected_dim;
  /// braid_generators[k]: generator realizing braid letter k (k = 0 is Y),
  /// or -1 when the algebra does not receive that letter.
  std::vector<int> braid_generators;
  /// Named parameter values the presentation was built with.
  std::vector<std::pair<std::string, RationalFn>> parameters;

  const RationalFn& parameter(std::string_view key) const {
    for (const auto& [k, v] : parameters)
      if (k == key) return v;
    throw UsageError(name + " has no parameter " + std::string(key));
  }

  int generator_index(std::string_view gen_name) const {
    for (std::size_t g = 0; g < generators.size(); ++g)
      if (generators[g].name == gen_name) return static_cast<int>(g);
    return -1;
  }

  std::string render(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (int g : w) s += (s.empty() ? "" : "*") + generators.at(static_cast<std::size_t>(g)).name;
    return s;
  }

  /// Adds the relation sum(lhs) = sum(rhs), oriented so the largest word
  /// with nonzero coefficient becomes the rule's left side with
  /// coefficient 1.
  void add_relation(const WordCombination& lhs, const WordCombination& rhs) {
    std::map<Word, RationalFn, decltype(&word_less)> diff(&word_less);
    for (const auto& [w, c] : lhs) diff[w] += c;
    for (const auto& [w, c] : rhs) diff[w] -= c;
    std::erase_if(diff, [](const auto& kv) { return kv.second.is_zero(); });
    if (diff.empty()) return;
    auto top = std::prev(diff.end());
    const RationalFn lead = top->second;
    Rule r;
    r.lhs = top->first;
    diff.erase(top);
    for (const auto& [w, c] : diff) r.rhs.emplace_back(w, -(c / lead));
    rules.push_back(std::move(r));
  }

  /// Throws UsageError unless every rule uses declared generators and is
  /// directed length-lexicographically.
  void validate() const {
    const int ng = static_cast<int>(generators.size());
    auto check_word = [&](const Word& w) {
      for (int g : w)
        if (g < 0 || g >= ng) throw UsageError(name + ": rule uses an undeclared generator");
    };
    for (const auto& r : rules) {
      check_word(r.lhs);
      for (const auto& [w, c] : r.rhs) {
        check_word(w);
        if (!word_less(w, r.lhs)) throw UsageError(name + ": rule " + render(r.lhs) + " is not length-lex directed");
      }
    }
  }
};

/// Sparse combination of basis indices.
using SparseRow = std::vector<std::pair<int, RationalFn>>;

class BasisTable;

/// Algebra element: dense coefficient vector over a table's basis.
class Element {
 public:
  Element() = default;
  explicit Element(const BasisTable* table);

  const BasisTable* table() const { return table_; }
  std::size_t size() const { return coef_.size(); }
  const RationalFn& operator[](std::size_t i) const { return coef_[i]; }
  RationalFn& operator[](std::size_t i) { return coef_[i]; }
  const std::vector<RationalFn>& coefficients() const { return coef_; }

  bool is_zero() const {
    return std::all_of(coef_.begin(), coef_.end(), [](const RationalFn& c) { return c.is_zero(); });
  }

  friend Element operator+(Element a, const Element& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.coef_.size(); ++i)
      if (!b.coef_[i].is_zero()) a.coef_[i] += b.coef_[i];
    return a;
  }
  friend Element operator-(Element a, const Element& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.coef_.size(); ++i)
      if (!b.coef_[i].is_zero()) a.coef_[i] -= b.coef_[i];
    return a;
  }
  friend Element operator*(const RationalFn& s, Element a) {
    for (auto& c : a.coef_)
      if (!c.is_zero()) c *= s;
    return a;
  }
  Element operator-() const { return RationalFn(nullptr, -1) * *this; }

  friend bool operator==(const Element& a, const Element& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.coef_.size(); ++i)
      if (!rf_equal(a.coef_[i], b.coef_[i])) return false;
    return true;
  }

  /// Index of the first basis coefficient where the two differ, or -1.
  int first_difference(const Element& o) const {
    check_same(o);
    for (std::size_t i = 0; i < coef_.size(); ++i)
      if (!rf_equal(coef_[i], o.coef_[i])) return static_cast<int>(i);
    return -1;
  }

  std::string to_string() const;

 private:
  void check_same(const Element& o) const {
    if (table_ != o.table_) throw UsageError("elements of different algebras");
  }

  const BasisTable* table_ = nullptr;
  std::vector<RationalFn> coef_;
};

/// Basis words and right-multiplication structure constants of a
/// finite-dimensional algebra.
class BasisTable {
 public:
  BasisTable(Presentation p, std::vector<Word> basis, std::vector<std::vector<SparseRow>> right)
      : presentation_(std::move(p)), basis_(std::move(basis)), right_(std::move(right)) {
    build_inverse_rows();
  }

  BasisTable(const BasisTable&) = delete;
  BasisTable& operator=(const BasisTable&) = delete;
  BasisTable(BasisTable&&) = default;

  const Presentation& presentation() const { return presentation_; }
  const Registry* registry() const { return presentation_.registry; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Word>& basis() const { return basis_; }
  const Word& basis_word(std::size_t i) const { return basis_.at(i); }
  std::size_t generator_count() const { return presentation_.generators.size(); }

  int generator_index(std::string_view name) const {
    const int g = presentation_.generator_index(name);
    if (g < 0) throw UsageError(presentation_.name + " has no generator " + std::string(name));
    return g;
  }

  /// Image of basis vector b under right multiplication by generator g.
  const SparseRow& right_row(int g, std::size_t b) const { return right_.at(static_cast<std::size_t>(g)).at(b); }

  Element zero() const { return Element(this); }

  Element unit() const {
    Element e(this);
    const auto it = std::find(basis_.begin(), basis_.end(), Word{});
    if (it == basis_.end()) throw DomainError(presentation_.name + " is the zero algebra");
    e[static_cast<std::size_t>(it - basis_.begin())] = RationalFn(registry(), 1);
    return e;
  }

  Element scalar(const RationalFn& s) const { return s * unit(); }

  Element generator(int g) const { return right_multiply(unit(), g); }
  Element generator(std::string_view name) const { return generator(generator_index(name)); }

  /// Formal inverse of generator g; DomainError when none is known.
  Element generator_inverse(int g) const { return right_multiply_inverse(unit(), g); }

  Element right_multiply(const Element& a, int g) const { return apply_rows(a, right_.at(static_cast<std::size_t>(g))); }

  Element right_multiply_inverse(const Element& a, int g) const {
    const auto& rows = inverse_rows_.at(static_cast<std::size_t>(g));
    if (!rows)
      throw DomainError("generator " + presentation_.generators.at(static_cast<std::size_t>(g)).name +
                        " has no inverse in " + presentation_.name);
    return apply_rows(a, *rows);
  }

  Element right_multiply(const Element& a, const Word& w) const {
    Element r = a;
    for (int g : w) r = right_multiply(r, g);
    return r;
  }

  Element word_element(const Word& w) const { return right_multiply(unit(), w); }

  /// Table with every structure constant passed through `substitute`.
  BasisTable specialize(const Bindings& bindings) const {
    Presentation p = presentation_;
    for (auto& [k, v] : p.parameters) v = substitute(v, bindings);
    for (auto& gen : p.generators)
      if (gen.inverse)
        for (auto& [w, c] : *gen.inverse) c = substitute(c, bindings);
    for (auto& rule : p.rules)
      for (auto& [w, c] : rule.rhs) c = substitute(c, bindings);
    std::vector<std::vector<SparseRow>> right = right_;
    for (auto& rows : right)
      for (auto& row : rows) {
        for (auto& [i, c] : row) c = substitute(c, bindings);
        std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
      }
    return BasisTable(std::move(p), basis_, std::move(right));
  }

  /// Line-oriented dump: basis words, then one line per nonzero
  /// structure constant row.
  std::string dump() const {
    std::ostringstream out;
    out << "algebra " << presentation_.name << " dim " << dimension() << "\n";
    for (std::size_t i = 0; i < basis_.size(); ++i) out << "basis " << i << " " << presentation_.render(basis_[i]) << "\n";
    for (std::size_t g = 0; g < right_.size(); ++g)
      for (std::size_t b = 0; b < basis_.size(); ++b) {
        out << "b" << b << "*" << presentation_.generators[g].name << " =";
        if (right_[g][b].empty()) out << " 0";
        bool first = true;
        for (const auto& [j, c] : right_[g][b]) {
          out << (first ? " " : " + ") << "(" << c.to_string() << ")*b" << j;
          first = false;
        }
        out << "\n";
      }
    return out.str();
  }

 private:
  Element apply_rows(const Element& a, const std::vector<SparseRow>& rows) const {
    if (a.table() != this) throw UsageError("element belongs to another algebra");
    Element r(this);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (const auto& [j, c] : rows[i]) r[static_cast<std::size_t>(j)] += a[i] * c;
    }
    return r;
  }

  void build_inverse_rows() {
    inverse_rows_.assign(presentation_.generators.size(), std::nullopt);
    for (std::size_t g = 0; g < presentation_.generators.size(); ++g) {
      const auto& inv = presentation_.generators[g].inverse;
      if (!inv) continue;
      std::vector<SparseRow> rows(basis_.size());
      for (std::size_t b = 0; b < basis_.size(); ++b) {
        Element acc(this);
        Element start(this);
        start[b] = RationalFn(registry(), 1);
        for (const auto& [w, c] : *inv) acc = acc + c * right_multiply(start, w);
        for (std::size_t j = 0; j < basis_.size(); ++j)
          if (!acc[j].is_zero()) rows[b].emplace_back(static_cast<int>(j), acc[j]);
      }
      inverse_rows_[g] = std::move(rows);
    }
  }

  Presentation presentation_;
  std::vector<Word> basis_;
  std::vector<std::vector<SparseRow>> right_;
  std::vector<std::optional<std::vector<SparseRow>>> inverse_rows_;
};

inline Element::Element(const BasisTable* table) : table_(table), coef_(table ? table->dimension() : 0) {}

inline std::string Element::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coef_[i].to_string() + ")*" + table_->presentation().render(table_->basis_word(i));
  }
  return s.empty() ? "0" : s;
}

namespace detail {

class VectorEnumerator {
 public:
  VectorEnumerator(const Presentation& p, std::size_t limit) : p_(p), limit_(limit), ngen_(p.generators.size()) {}

  BasisTable run() {
    new_vector(Word{});
    for (std::size_t i = 0; i < vecs_.size(); ++i) {
      if (!vecs_[i].alive) continue;
      for (const auto& rule : p_.rules) {
        if (!vecs_[i].alive) break;
        Sparse rel = trace(static_cast<int>(i), rule.lhs, RationalFn(p_.registry, 1));
        for (const auto& [w, c] : rule.rhs) add_scaled(rel, trace(static_cast<int>(i), w, RationalFn(p_.registry, 1)), -c);
        impose(std::move(rel));
        drain();
      }
      if (!vecs_[i].alive) continue;
      for (std::size_t g = 0; g < ngen_; ++g) image(static_cast<int>(i), g);
    }
    return finish();
  }

 private:
  using Sparse = std::vector<std::pair<int, RationalFn>>;  // sorted by id

  struct Vec {
    Word word;
    bool alive = true;
    Sparse replacement;
    std::vector<std::optional<Sparse>> image;
  };

  int new_vector(Word w) {
    vecs_.push_back(Vec{std::move(w), true, {}, std::vector<std::optional<Sparse>>(ngen_)});
    ++alive_;
    if (alive_ > limit_)
      throw NonConfluenceError(p_.name + ": closure exceeded " + std::to_string(limit_) +
                               " live vectors without stabilizing (last word " + p_.render(vecs_.back().word) + ")");
    return static_cast<int>(vecs_.size() - 1);
  }

  static void add_scaled(Sparse& acc, const Sparse& x, const RationalFn& s) {
    Sparse out;
    out.reserve(acc.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < x.size()) {
      if (j == x.size() || (i < acc.size() && acc[i].first < x[j].first)) {
        out.push_back(std::move(acc[i++]));
      } else if (i == acc.size() || x[j].first < acc[i].first) {
        out.emplace_back(x[j].first, x[j].second * s);
        ++j;
      } else {
        RationalFn c = acc[i].second + x[j].second * s;
        if (!c.is_zero()) out.emplace_back(acc[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    acc = std::move(out);
  }

  // Rewrites a combination over live vectors only.
  Sparse normalize(const Sparse& s) {
    bool clean = std::all_of(s.begin(), s.end(), [&](const auto& e) { return vecs_[static_cast<std::size_t>(e.first)].alive; });
    if (clean) return s;
    std::map<int, RationalFn> acc;
    for (const auto& [id, c] : s) {
      if (vecs_[static_cast<std::size_t>(id)].alive) {
        acc[id] += c;
      } else {
        const Sparse& r = resolved(id);
        for (const auto& [id2, c2] : r) acc[id2] += c * c2;
      }
    }
    Sparse out;
    for (auto& [id, c] : acc)
      if (!c.is_zero()) out.emplace_back(id, std::move(c));
    return out;
  }

  const Sparse& resolved(int id) {
    Vec& v = vecs_[static_cast<std::size_t>(id)];
    const bool clean = std::all_of(v.replacement.begin(), v.replacement.end(),
                                   [&](const auto& e) { return vecs_[static_cast<std::size_t>(e.first)].alive; });
    if (!clean) {
      Sparse r = normalize(vecs_[static_cast<std::size_t>(id)].replacement);
      vecs_[static_cast<std::size_t>(id)].replacement = std::move(r);
    }
    return vecs_[static_cast<std::size_t>(id)].replacement;
  }

  // Image of live vector v under generator g, defining a new vector when
  // it is not yet known.
  Sparse image(int v, std::size_t g) {
    auto& slot = vecs_[static_cast<std::size_t>(v)].image[g];
    if (!slot) {
      Word w = vecs_[static_cast<std::size_t>(v)].word;
      w.push_back(static_cast<int>(g));
      const int id = new_vector(std::move(w));
      vecs_[static_cast<std::size_t>(v)].image[g] = Sparse{{id, RationalFn(p_.registry, 1)}};
    }
    return *vecs_[static_cast<std::size_t>(v)].image[g];
  }

  Sparse apply(const Sparse& s, std::size_t g) {
    Sparse cur = normalize(s);
    Sparse out;
    for (const auto& [v, c] : cur) add_scaled(out, image(v, g), c);
    return out;
  }

  Sparse trace(int v, const Word& w, const RationalFn& scale) {
    Sparse cur{{v, scale}};
    for (int g : w) cur = apply(cur, static_cast<std::size_t>(g));
    return cur;
  }

  void impose(Sparse rel) {
    rel = normalize(rel);
    if (rel.empty()) return;
    auto top = std::max_element(rel.begin(), rel.end(), [&](const auto& a, const auto& b) {
      return word_less(vecs_[static_cast<std::size_t>(a.first)].word, vecs_[static_cast<std::size_t>(b.first)].word);
    });
    const int u = top->first;
    const RationalFn lead = top->second;
    Sparse replacement;
    try {
      const RationalFn inv = -lead.inverse();
      for (const auto& [id, c] : rel)
        if (id != u) replacement.emplace_back(id, c * inv);
    } catch (const DomainError& e) {
      throw DegeneracyError(p_.name + ": " + e.what());
    }
    Vec& vu = vecs_[static_cast<std::size_t>(u)];
    vu.alive = false;
    --alive_;
    vu.replacement = replacement;
    for (std::size_t g = 0; g < ngen_; ++g) {
      auto img = std::move(vecs_[static_cast<std::size_t>(u)].image[g]);
      vecs_[static_cast<std::size_t>(u)].image[g].reset();
      if (img) pending_.push_back({std::move(*img), replacement, g});
    }
  }

  void drain() {
    while (!pending_.empty()) {
      Deduction d = std::move(pending_.front());
      pending_.pop_front();
      // u*g was known; u = sum r_v v, hence u*g - sum r_v (v*g) = 0.
      Sparse rel = std::move(d.known_image);
      for (const auto& [v, r] : d.replacement) add_scaled(rel, apply(Sparse{{v, r}}, d.generator), RationalFn(p_.registry, -1));
      impose(std::move(rel));
    }
  }

  BasisTable finish() {
    std::vector<int> live;
    for (std::size_t i = 0; i < vecs_.size(); ++i)
      if (vecs_[i].alive) live.push_back(static_cast<int>(i));
    std::sort(live.begin(), live.end(), [&](int a, int b) {
      return word_less(vecs_[static_cast<std::size_t>(a)].word, vecs_[static_cast<std::size_t>(b)].word);
    });
    std::map<int, int> index;
    std::vector<Word> basis;
    for (std::size_t k = 0; k < live.size(); ++k) {
      index[live[k]] = static_cast<int>(k);
      basis.push_back(vecs_[static_cast<std::size_t>(live[k])].word);
    }
    std::vector<std::vector<SparseRow>> right(ngen_, std::vector<SparseRow>(live.size()));
    for (std::size_t g = 0; g < ngen_; ++g)
      for (std::size_t k = 0; k < live.size(); ++k) {
        Sparse img = normalize(image(live[k], g));
        SparseRow row;
        for (auto& [id, c] : img) row.emplace_back(index.at(id), std::move(c));
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        right[g][k] = std::move(row);
      }
    return BasisTable(p_, std::move(basis), std::move(right));
  }

  struct Deduction {
    Sparse known_image;
    Sparse replacement;
    std::size_t generator;
  };

  const Presentation& p_;
  std::size_t limit_;
  std::size_t ngen_;
  std::size_t alive_ = 0;
  std::vector<Vec> vecs_;
  std::deque<Deduction> pending_;
};

}  // namespace detail

/// Linear closure of a presentation.  Throws NonConfluenceError when more
/// than 4 * expected_dim vectors are live at once (or 20000 without an
/// expected dimension), DegeneracyError when an elimination would divide
/// by an identically zero coefficient.
inline BasisTable compute_basis(const Presentation& p) {
  p.validate();
  const std::size_t limit = p.expected_dim ? 4 * std::max<std::size_t>(*p.expected_dim, 1) : 20000;
  return detail::VectorEnumerator(p, limit).run();
}

/// Bilinear product through the structure constants: a * b =
/// sum_j b_j (a * w_j) where w_j is the j-th basis word.
inline Element multiply(const BasisTable& t, const Element& a, const Element& b) {
  if (a.table() != &t || b.table() != &t) throw UsageError("multiply: elements belong to another algebra");
  Element result = t.zero();
  std::map<Word, Element> prefix_cache;
  prefix_cache.emplace(Word{}, a);
  auto times_word = [&](const Word& w) -> const Element& {
    std::size_t known = 0;
    Word probe;
    for (std::size_t k = 1; k <= w.size(); ++k) {
      probe.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      if (prefix_cache.count(probe)) known = k;
    }
    Word cur(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(known));
    for (std::size_t k = known; k < w.size(); ++k) {
      Element next = t.right_multiply(prefix_cache.at(cur), w[k]);
      cur.push_back(w[k]);
      prefix_cache.emplace(cur, std::move(next));
    }
    return prefix_cache.at(w);
  };
  for (std::size_t j = 0; j < t.dimension(); ++j) {
    if (b[j].is_zero()) continue;
    result = result + b[j] * times_word(t.basis_word(j));
  }
  return result;
}

/// Image of a braid word: letters act through the presentation's braid
/// generators, inverse letters through the generators' formal inverses.
inline Element element_of_word(const BasisTable& t, const BraidWord& w) {
  const auto& map = t.presentation().braid_generators;
  Element e = t.unit();
  for (const auto& l : w.letters()) {
    if (l.index >= static_cast<int>(map.size()) || map[static_cast<std::size_t>(l.index)] < 0)
      throw UsageError("braid letter " + std::to_string(l.index) + " has no image in " + t.presentation().name);
    const int g = map[static_cast<std::size_t>(l.index)];
    e = l.power > 0 ? t.right_multiply(e, g) : t.right_multiply_inverse(e, g);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct HeckeParameters {
  RationalFn Q, Q0;
  static HeckeParameters symbolic(Registry& reg) {
    return {RationalFn::variable(reg["Q"]), RationalFn::variable(reg["Q0"])};
  }
};

struct BmwParameters {
  RationalFn q, lambda, q1;
  static BmwParameters symbolic(Registry& reg) {
    return {RationalFn::variable(reg["q"]), RationalFn::variable(reg["lambda"]), RationalFn::variable(reg["q1"])};
  }
  RationalFn delta() const { return q - q.inverse(); }
  /// x = 1 - (lambda - lambda^-1) / delta.
  RationalFn x() const { return RationalFn(q.registry(), 1) - (lambda - lambda.inverse()) / delta(); }
  RationalFn q0() const { return q.inverse(); }
};

struct TlbParameters {
  RationalFn c, cp, d;
  static TlbParameters symbolic(Registry& reg) {
    return {RationalFn::variable(reg["c"]), RationalFn::variable(reg["cp"]), RationalFn::variable(reg["d"])};
  }
};

namespace detail {

inline WordCombination single(Word w, RationalFn c) { return {{std::move(w), std::move(c)}}; }

}  // namespace detail

/// Type-B Hecke algebra on n strands: X0..X_{n-1} with
/// X0^2 = (Q0-1) X0 + Q0 and X_i^2 = (Q-1) X_i + Q, plus the braid
/// relations of type B.
inline Presentation present_heckeB(int n, const HeckeParameters& par) {
  if (n < 1) throw UsageError("present_heckeB: n >= 1 required");
  if (par.Q.is_zero() || par.Q0.is_zero()) throw DegeneracyError("Hecke parameters must be invertible");
  const Registry* reg = par.Q.registry() ? par.Q.registry() : par.Q0.registry();
  const RationalFn one(reg, 1);
  Presentation p;
  p.name = "heckeB" + std::to_string(n);
  p.strands = n;
  p.registry = reg;
  p.parameters = {{"Q", par.Q}, {"Q0", par.Q0}};
  for (int i = 0; i < n; ++i) {
    const RationalFn& Qi = i == 0 ? par.Q0 : par.Q;
    // X^-1 = Q^-1 X - (1 - Q^-1)
    p.generators.push_back({"X" + std::to_string(i), WordCombination{{{i}, Qi.inverse()}, {{}, Qi.inverse() - one}}});
    p.braid_generators.push_back(i);
  }
  using detail::single;
  for (int i = 0; i < n; ++i) {
    const RationalFn& Qi = i == 0 ? par.Q0 : par.Q;
    p.add_relation(single({i, i}, one), {{{i}, Qi - one}, {{}, Qi}});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) p.add_relation(single({j, i}, one), single({i, j}, one));
  for (int i = 1; i + 1 < n; ++i) p.add_relation(single({i + 1, i, i + 1}, one), single({i, i + 1, i}, one));
  if (n >= 2) p.add_relation(single({1, 0, 1, 0}, one), single({0, 1, 0, 1}, one));
  std::size_t dim = 1;
  for (int k = 1; k <= n; ++k) dim *= 2 * static_cast<std::size_t>(k);
  p.expected_dim = dim;
  return p;
}

namespace detail {

// Adds the type-A Birman-Wenzl relations among X_i (generator xi(i)) and
// e_i (generator ei(i)), i = 1..n-1, with e_i the auxiliary generator
// 1 - (X_i - X_i^-1)/delta.
template <class XIndex, class EIndex>
void add_bmw_relations(Presentation& p, int n, const BmwParameters& par, XIndex xi, EIndex ei) {
  const Registry* reg = p.registry;
  const RationalFn one(reg, 1);
  const RationalFn delta = par.delta(), lambda = par.lambda, x = par.x();
  for (int i = 1; i < n; ++i) {
    const int X = xi(i), E = ei(i);
    // X_i X_i^-1 = 1 with X_i^-1 = X_i - delta + delta e_i
    p.add_relation(single({X, X}, one), {{{}, one}, {{X}, delta}, {{E}, -(delta * lambda)}});
    p.add_relation(single({X, E}, one), single({E}, lambda));
    p.add_relation(single({E, X}, one), single({E}, lambda));
    p.add_relation(single({E, E}, one), single({E}, x));
  }
  for (int i = 1; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      p.add_relation(single({xi(j), xi(i)}, one), single({xi(i), xi(j)}, one));
      p.add_relation(single({ei(j), xi(i)}, one), single({xi(i), ei(j)}, one));
      p.add_relation(single({xi(j), ei(i)}, one), single({ei(i), xi(j)}, one));
      p.add_relation(single({ei(j), ei(i)}, one), single({ei(i), ei(j)}, one));
    }
  for (int i = 1; i + 1 < n; ++i) {
    const int Xa = xi(i), Xb = xi(i + 1), Ea = ei(i), Eb = ei(i + 1);
    p.add_relation(single({Xa, Xb, Xa}, one), single({Xb, Xa, Xb}, one));
    // e_{i+1} X_i e_{i+1} = lambda^-1 e_{i+1}; with it, the X_i^-1 variant
    // e_{i+1} X_i^-1 e_{i+1} = lambda e_{i+1} is equivalent to
    // e_{i+1} e_i e_{i+1} = e_{i+1}.
    p.add_relation(single({Eb, Xa, Eb}, one), single({Eb}, lambda.inverse()));
    p.add_relation(single({Eb, Ea, Eb}, one), single({Eb}, one));
  }
}

inline void check_bmw_parameters(const BmwParameters& par) {
  if (par.q.is_zero() || par.lambda.is_zero()) throw DegeneracyError("q and lambda must be invertible");
  if (par.delta().is_zero()) throw DegeneracyError("delta = q - q^-1 vanishes");
  if (par.x().is_zero()) throw DegeneracyError("x = 1 - (lambda - lambda^-1)/delta vanishes");
  if (par.q1.is_zero()) throw DegeneracyError("q1 vanishes");
}

inline std::vector<std::pair<std::string, RationalFn>> bmw_parameter_list(const BmwParameters& par) {
  return {{"q", par.q}, {"lambda", par.lambda}, {"q1", par.q1}, {"q0", par.q0()}, {"delta", par.delta()}, {"x", par.x()}};
}

}  // namespace detail

/// Type-A Birman-Wenzl algebra on n strands (X_i, e_i for 1 <= i < n);
/// its dimension is (2n-1)!!.
inline Presentation present_bmwA(int n, const BmwParameters& par) {
  if (n < 2) throw UsageError("present_bmwA: n >= 2 required");
  detail::check_bmw_parameters(par);
  Presentation p;
  p.name = "bmwA" + std::to_string(n);
  p.strands = n;
  p.registry = par.q.registry();
  p.parameters = detail::bmw_parameter_list(par);
  const RationalFn one(p.registry, 1);
  auto xi = [](int i) { return i - 1; };
  auto ei = [n](int i) { return n - 2 + i; };
  for (int i = 1; i < n; ++i)
    p.generators.push_back({"X" + std::to_string(i), WordCombination{{{xi(i)}, one}, {{}, -par.delta()}, {{ei(i)}, par.delta()}}});
  for (int i = 1; i < n; ++i) p.generators.push_back({"e" + std::to_string(i), std::nullopt});
  p.braid_generators.push_back(-1);
  for (int i = 1; i < n; ++i) p.braid_generators.push_back(xi(i));
  detail::add_bmw_relations(p, n, par, xi, ei);
  std::size_t dim = 1;
  for (int k = 1; k <= n; ++k) dim *= static_cast<std::size_t>(2 * k - 1);
  p.expected_dim = dim;
  return p;
}

/// Reduced type-B Birman-Wenzl algebra on n strands: Y, X_i, e_i with
/// q0 = q^-1.  Expected dimension 2^n (2n-1)!!.
inline Presentation present_bmwB(int n, const BmwParameters& par) {
  if (n < 1 || n > 3) throw CapabilityError("present_bmwB: 1 <= n <= 3 supported");
  detail::check_bmw_parameters(par);
  Presentation p;
  p.name = "bmwB" + std::to_string(n);
  p.strands = n;
  p.registry = par.q.registry();
  p.parameters = detail::bmw_parameter_list(par);
  const RationalFn one(p.registry, 1);
  const int Y = 0;
  auto xi = [](int i) { return i; };
  auto ei = [n](int i) { return n - 1 + i; };
  // Y^-1 = q (Y - q1) from Y^2 = q1 Y + q^-1
  p.generators.push_back({"Y", WordCombination{{{Y}, par.q}, {{}, -(par.q * par.q1)}}});
  for (int i = 1; i < n; ++i)
    p.generators.push_back({"X" + std::to_string(i), WordCombination{{{xi(i)}, one}, {{}, -par.delta()}, {{ei(i)}, par.delta()}}});
  for (int i = 1; i < n; ++i) p.generators.push_back({"e" + std::to_string(i), std::nullopt});
  p.braid_generators.push_back(Y);
  for (int i = 1; i < n; ++i) p.braid_generators.push_back(xi(i));

  using detail::single;
  p.add_relation(single({Y, Y}, one), {{{Y}, par.q1}, {{}, par.q0()}});
  detail::add_bmw_relations(p, n, par, xi, ei);
  for (int i = 2; i < n; ++i) {
    p.add_relation(single({xi(i), Y}, one), single({Y, xi(i)}, one));
    p.add_relation(single({ei(i), Y}, one), single({Y, ei(i)}, one));
  }
  if (n >= 2) {
    const int X1 = xi(1), E1 = ei(1);
    p.add_relation(single({X1, Y, X1, Y}, one), single({Y, X1, Y, X1}, one));
    p.add_relation(single({Y, X1, Y, E1}, one), single({E1}, one));
  }
  std::size_t dim = std::size_t{1} << n;
  for (int k = 1; k <= n; ++k) dim *= static_cast<std::size_t>(2 * k - 1);
  p.expected_dim = dim;
  return p;
}

/// Temperley-Lieb algebra of type B: e0..e_{n-1} with e0^2 = d e0,
/// e_i^2 = c e_i, e1 e0 e1 = c' e1 and the type-A Temperley-Lieb
/// relations among e_1..e_{n-1}.
inline Presentation present_tlb(int n, const TlbParameters& par) {
  if (n < 1) throw UsageError("present_tlb: n >= 1 required");
  const Registry* reg = par.c.registry() ? par.c.registry() : par.d.registry();
  const RationalFn one(reg, 1);
  Presentation p;
  p.name = "tlb" + std::to_string(n);
  p.strands = n;
  p.registry = reg;
  p.parameters = {{"c", par.c}, {"cp", par.cp}, {"d", par.d}};
  for (int i = 0; i < n; ++i) p.generators.push_back({"e" + std::to_string(i), std::nullopt});
  p.braid_generators.assign(static_cast<std::size_t>(n), -1);
  using detail::single;
  p.add_relation(single({0, 0}, one), single({0}, par.d));
  for (int i = 1; i < n; ++i) p.add_relation(single({i, i}, one), single({i}, par.c));
  if (n >= 2) p.add_relation(single({1, 0, 1}, one), single({1}, par.cp));
  for (int i = 1; i + 1 < n; ++i) {
    p.add_relation(single({i, i + 1, i}, one), single({i}, one));
    p.add_relation(single({i + 1, i, i + 1}, one), single({i + 1}, one));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) p.add_relation(single({j, i}, one), single({i, j}, one));
  std::size_t binom = 1;
  for (int k = 1; k <= n; ++k) binom = binom * static_cast<std::size_t>(n + k) / static_cast<std::size_t>(k);
  p.expected_dim = binom;
  return p;
}

/// Named identity of two elements in a finished table.
struct RelationCheck {
  std::string name;
  Element lhs, rhs;
  bool holds() const { return lhs == rhs; }
};

/// Every defining relation of the algebra's source definition, re-checked
/// as an identity of elements in the finished table.
inline std::vector<RelationCheck> defining_relation_checks(const BasisTable& t, const BmwParameters& par) {
  std::vector<RelationCheck> out;
  const auto& pr = t.presentation();
  const int n = pr.strands;
  const bool has_y = pr.generator_index("Y") >= 0;
  auto X = [&](int i) { return t.generator("X" + std::to_string(i)); };
  auto Xinv = [&](int i) { return t.generator_inverse(t.generator_index("X" + std::to_string(i))); };
  auto e = [&](int i) { return t.generator("e" + std::to_string(i)); };
  auto mul = [&](std::initializer_list<Element> fs) {
    Element r = t.unit();
    for (const auto& f : fs) r = multiply(t, r, f);
    return r;
  };
  const Element one = t.unit();
  const RationalFn lambda = par.lambda;
  for (int i = 1; i < n; ++i) {
    const std::string s = std::to_string(i);
    out.push_back({"X" + s + " X" + s + "^-1 = 1", mul({X(i), Xinv(i)}), one});
    out.push_back({"X" + s + "^-1 X" + s + " = 1", mul({Xinv(i), X(i)}), one});
    out.push_back({"e" + s + " = 1 - (X" + s + " - X" + s + "^-1)/delta", e(i),
                   one - par.delta().inverse() * (X(i) - Xinv(i))});
    out.push_back({"X" + s + " e" + s + " = lambda e" + s, mul({X(i), e(i)}), lambda * e(i)});
    out.push_back({"e" + s + " X" + s + " = lambda e" + s, mul({e(i), X(i)}), lambda * e(i)});
    if (i >= 2) {
      const std::string m = std::to_string(i - 1);
      out.push_back({"e" + s + " X" + m + " e" + s + " = lambda^-1 e" + s, mul({e(i), X(i - 1), e(i)}), lambda.inverse() * e(i)});
      out.push_back({"e" + s + " X" + m + "^-1 e" + s + " = lambda e" + s, mul({e(i), Xinv(i - 1), e(i)}), lambda * e(i)});
      out.push_back({"X" + m + " X" + s + " X" + m + " = X" + s + " X" + m + " X" + s, mul({X(i - 1), X(i), X(i - 1)}),
                     mul({X(i), X(i - 1), X(i)})});
    }
    for (int j = i + 2; j < n; ++j)
      out.push_back({"X" + s + " X" + std::to_string(j) + " = X" + std::to_string(j) + " X" + s, mul({X(i), X(j)}),
                     mul({X(j), X(i)})});
  }
  if (has_y) {
    const Element Y = t.generator("Y");
    const Element Yinv = t.generator_inverse(t.generator_index("Y"));
    out.push_back({"Y Y^-1 = 1", mul({Y, Yinv}), one});
    out.push_back({"Y^2 = q1 Y + q0", mul({Y, Y}), par.q1 * Y + par.q0() * one});
    if (n >= 2) {
      out.push_back({"X1 Y X1 Y = Y X1 Y X1", mul({X(1), Y, X(1), Y}), mul({Y, X(1), Y, X(1)})});
      out.push_back({"Y X1 Y e1 = e1", mul({Y, X(1), Y, e(1)}), e(1)});
    }
    for (int i = 2; i < n; ++i)
      out.push_back({"Y X" + std::to_string(i) + " = X" + std::to_string(i) + " Y", mul({Y, X(i)}), mul({X(i), Y})});
  }
  return out;
}

/// Relations of the type-B Hecke algebra re-checked in its table.
inline std::vector<RelationCheck> defining_relation_checks(const BasisTable& t, const HeckeParameters& par) {
  std::vector<RelationCheck> out;
  const int n = t.presentation().strands;
  auto X = [&](int i) { return t.generator("X" + std::to_string(i)); };
  auto mul = [&](std::initializer_list<Element> fs) {
    Element r = t.unit();
    for (const auto& f : fs) r = multiply(t, r, f);
    return r;
  };
  const Element one = t.unit();
  const RationalFn uno(t.registry(), 1);
  for (int i = 0; i < n; ++i) {
    const RationalFn& Qi = i == 0 ? par.Q0 : par.Q;
    const std::string s = std::to_string(i);
    const std::string qn = i == 0 ? "Q0" : "Q";
    out.push_back({"X" + s + "^2 = (" + qn + "-1) X" + s + " + " + qn, mul({X(i), X(i)}), (Qi - uno) * X(i) + Qi * one});
    out.push_back({"X" + s + " X" + s + "^-1 = 1", mul({X(i), t.generator_inverse(i)}), one});
    for (int j = i + 2; j < n; ++j)
      out.push_back({"X" + s + " X" + std::to_string(j) + " commute", mul({X(i), X(j)}), mul({X(j), X(i)})});
  }
  for (int i = 1; i + 1 < n; ++i)
    out.push_back({"braid X" + std::to_string(i), mul({X(i), X(i + 1), X(i)}), mul({X(i + 1), X(i), X(i + 1)})});
  if (n >= 2) out.push_back({"X0 X1 X0 X1 = X1 X0 X1 X0", mul({X(0), X(1), X(0), X(1)}), mul({X(1), X(0), X(1), X(0)})});
  return out;
}

}  // namespace bcox
