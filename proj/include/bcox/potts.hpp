#pragma once

// Potts model with a wall: exact partition function by enumerating spin
// states, the transfer word of a rectangular grid in the blob algebra, and
// the evaluation of Z as a normalized closure trace of that word.
//
// Z = sum_S u^(#inner bonds with equal spins) w^(#walled sites with spin != 0)
//
// Trace evaluation (Fortuin-Kasteleyn expansion, v = u - 1, c^2 = f):
// a grid with R rows and C columns runs on 2C strands, site j of a row
// sitting between strands 2j-1 and 2j.  The word starts with the cap
// e1 e3 ... e_{2C-1} and sweeps down the rows; per row
//   wall on the first site:  w + (1 - w)/d e0
//   bond (j, j+1):           1 + v/c e_{2j}
// and between consecutive rows, per column
//   bond down:               v/c + e_{2j-1}.
// Loops weigh c, blobbed loops c' = d/c, d = 1, and the closure is planar
// (winding weights equal to the loop weights).  Then
//   Z = c^(|V| + 2C) tr(word)
// with tr normalized to tr(1) = 1.  A cluster touching the wall in m
// places has its outer loop blobbed m times, contributing
// c' d^(m-1) ((1-w)/d)^m = (1-w)^m / c instead of the c of a free cluster.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bcox/errors.hpp"
#include "bcox/ring.hpp"
#include "bcox/tlb.hpp"

namespace bcox {

/// Sites, inner bonds and the sites coupled to the wall.
class BoundaryLattice {
 public:
  struct Grid {
    int rows = 0, cols = 0;
    bool walled = true;
  };

  BoundaryLattice() = default;

  /// rows x cols grid, nearest-neighbour bonds, the first column walled
  /// unless `walled` is false.  Site (r, j) has index r*cols + j.
  static BoundaryLattice grid(int rows, int cols, bool walled = true) {
    if (rows < 0 || cols < 0) throw UsageError("grid: negative size");
    if ((rows == 0) != (cols == 0)) throw UsageError("grid: both sizes must be zero or positive");
    BoundaryLattice l;
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < cols; ++j) l.add_site("r" + std::to_string(r + 1) + "c" + std::to_string(j + 1));
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < cols; ++j) {
        if (j + 1 < cols) l.add_bond(r * cols + j, r * cols + j + 1);
        if (r + 1 < rows) l.add_bond(r * cols + j, (r + 1) * cols + j);
      }
    if (walled)
      for (int r = 0; r < rows; ++r) l.add_wall(r * cols);
    l.grid_ = Grid{rows, cols, walled};
    return l;
  }

  int add_site(const std::string& name) {
    if (index_.count(name)) throw UsageError("lattice: duplicate site '" + name + "'");
    index_[name] = static_cast<int>(names_.size());
    names_.push_back(name);
    grid_.reset();
    return static_cast<int>(names_.size()) - 1;
  }

  void add_bond(int a, int b) {
    check_site(a);
    check_site(b);
    if (a == b) throw UsageError("lattice: self-bond on site '" + names_[static_cast<std::size_t>(a)] + "'");
    bonds_.emplace_back(std::min(a, b), std::max(a, b));
    grid_.reset();
  }

  void add_wall(int s) {
    check_site(s);
    if (std::find(walls_.begin(), walls_.end(), s) == walls_.end()) walls_.push_back(s);
    grid_.reset();
  }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& site_names() const { return names_; }
  const std::vector<std::pair<int, int>>& bonds() const { return bonds_; }
  const std::vector<int>& walls() const { return walls_; }
  /// Set only for lattices built by grid() and not modified since.
  const std::optional<Grid>& grid_shape() const { return grid_; }

 private:
  void check_site(int s) const {
    if (s < 0 || s >= size()) throw UsageError("lattice: unknown site index " + std::to_string(s));
  }

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<std::pair<int, int>> bonds_;
  std::vector<int> walls_;
  std::optional<Grid> grid_;
};

/// Lines `site <id>`, `bond <id> <id>`, `wall <id>` or a single
/// `grid <rows> <cols> [nowall]`; `#` starts a comment.
inline BoundaryLattice parse_lattice(std::istream& in) {
  BoundaryLattice l;
  bool have_grid = false, have_sites = false;
  std::string line;
  std::size_t lineno = 0, tokens_before = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::size_t first_token = tokens_before;
    tokens_before += tok.size();
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError("lattice line " + std::to_string(lineno) + ": " + why, first_token);
    };
    auto site = [&](const std::string& id) {
      auto s = l.find(id);
      if (!s) throw fail("unknown site '" + id + "'");
      return *s;
    };
    const std::string& kw = tok[0];
    if (kw == "grid") {
      if (have_grid || have_sites) throw fail("grid must be the only lattice statement");
      if (tok.size() < 3 || tok.size() > 4 || (tok.size() == 4 && tok[3] != "nowall"))
        throw fail("expected 'grid <rows> <cols> [nowall]'");
      int rows = 0, cols = 0;
      try {
        std::size_t p1 = 0, p2 = 0;
        rows = std::stoi(tok[1], &p1);
        cols = std::stoi(tok[2], &p2);
        if (p1 != tok[1].size() || p2 != tok[2].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw fail("grid sizes must be integers");
      }
      if (rows < 1 || cols < 1) throw fail("grid sizes must be positive");
      l = BoundaryLattice::grid(rows, cols, tok.size() == 3);
      have_grid = true;
    } else if (have_grid) {
      throw fail("grid must be the only lattice statement");
    } else if (kw == "site") {
      if (tok.size() != 2) throw fail("expected 'site <id>'");
      if (l.find(tok[1])) throw fail("duplicate site '" + tok[1] + "'");
      l.add_site(tok[1]);
      have_sites = true;
    } else if (kw == "bond") {
      if (tok.size() != 3) throw fail("expected 'bond <id> <id>'");
      const int a = site(tok[1]), b = site(tok[2]);
      if (a == b) throw fail("self-bond on '" + tok[1] + "'");
      l.add_bond(a, b);
    } else if (kw == "wall") {
      if (tok.size() != 2) throw fail("expected 'wall <id>'");
      l.add_wall(site(tok[1]));
    } else {
      throw fail("unknown statement '" + kw + "'");
    }
  }
  return l;
}

inline BoundaryLattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  return parse_lattice(in);
}

inline BoundaryLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open lattice file '" + path + "'");
  return parse_lattice(in);
}

/// Polynomial in u, w with integer coefficients.
using PottsPoly = LaurentPoly;

/// Sum over all f^|V| spin states.  `jobs` threads split the state range.
inline PottsPoly brute_force_Z(const BoundaryLattice& l, int f, Registry& reg, int jobs = 1) {
  if (f < 1) throw UsageError("brute_force_Z: at least one spin state required");
  const int n = l.size();
  double states = 1;
  for (int i = 0; i < n; ++i) states *= f;
  if (states > 1e7) throw CapabilityError("brute_force_Z: f^|V| exceeds 10^7 states");
  const std::uint64_t total = static_cast<std::uint64_t>(states + 0.5);
  const std::size_t nb = l.bonds().size(), nw = l.walls().size();
  using Counts = std::vector<std::uint64_t>;  // index: equal bonds * (nw+1) + nonzero walls
  auto run = [&](std::uint64_t first, std::uint64_t last, Counts& counts) {
    std::vector<int> s(static_cast<std::size_t>(n), 0);
    std::uint64_t x = first;
    for (int i = 0; i < n; ++i, x /= static_cast<std::uint64_t>(f)) s[static_cast<std::size_t>(i)] = static_cast<int>(x % f);
    for (std::uint64_t k = first; k < last; ++k) {
      std::size_t eq = 0, nz = 0;
      for (const auto& [a, b] : l.bonds()) eq += s[static_cast<std::size_t>(a)] == s[static_cast<std::size_t>(b)];
      for (int v : l.walls()) nz += s[static_cast<std::size_t>(v)] != 0;
      ++counts[eq * (nw + 1) + nz];
      for (int i = 0; i < n; ++i) {
        if (++s[static_cast<std::size_t>(i)] < f) break;
        s[static_cast<std::size_t>(i)] = 0;
      }
    }
  };
  jobs = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(jobs, 1)), 1, total));
  std::vector<Counts> parts(static_cast<std::size_t>(jobs), Counts((nb + 1) * (nw + 1), 0));
  if (jobs == 1) {
    run(0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(run, total * static_cast<std::uint64_t>(j) / static_cast<std::uint64_t>(jobs),
                        total * static_cast<std::uint64_t>(j + 1) / static_cast<std::uint64_t>(jobs),
                        std::ref(parts[static_cast<std::size_t>(j)]));
    for (auto& t : pool) t.join();
  }
  const Variable u = reg["u"], w = reg["w"];
  std::vector<LaurentPoly::Term> terms;
  for (std::size_t eq = 0; eq <= nb; ++eq)
    for (std::size_t nz = 0; nz <= nw; ++nz) {
      std::uint64_t c = 0;
      for (const auto& p : parts) c += p[eq * (nw + 1) + nz];
      if (c == 0) continue;
      const Monomial m = Monomial::variable(u.index, static_cast<int>(eq)) * Monomial::variable(w.index, static_cast<int>(nz));
      terms.push_back({m, Rational(mpz_class(std::to_string(c)))});
    }
  return LaurentPoly::from_terms(&reg, std::move(terms));
}

/// One factor alpha + beta e_generator of the transfer word.
struct TangleFactor {
  enum class Kind { Wall, Across, Down };
  Kind kind;
  int generator;
  int row, col;  // 1-based site (for Down: the upper site)

  std::string to_string() const {
    const char* k = kind == Kind::Wall ? "wall" : kind == Kind::Across ? "across" : "down";
    return std::string(k) + "(e" + std::to_string(generator) + ")";
  }
};

struct Tangle {
  int strands = 0;
  std::vector<int> cap;  // e1 e3 ... e_{2C-1}
  std::vector<TangleFactor> factors;

  std::string to_string() const {
    std::string s = "cap(";
    for (std::size_t i = 0; i < cap.size(); ++i) s += (i ? " e" : "e") + std::to_string(cap[i]);
    s += ")";
    for (const auto& f : factors) s += " " + f.to_string();
    return s;
  }
};

/// Row by row: the wall factor, the bonds across the row, then the bonds
/// down to the next row.
inline Tangle lattice_to_tangle(const BoundaryLattice& l) {
  if (!l.grid_shape()) throw CapabilityError("lattice_to_tangle: only grid lattices have a transfer word");
  const auto g = *l.grid_shape();
  Tangle t;
  t.strands = 2 * g.cols;
  for (int j = 1; j <= g.cols; ++j) t.cap.push_back(2 * j - 1);
  using K = TangleFactor::Kind;
  for (int r = 1; r <= g.rows; ++r) {
    if (g.walled) t.factors.push_back({K::Wall, 0, r, 1});
    for (int j = 1; j < g.cols; ++j) t.factors.push_back({K::Across, 2 * j, r, j});
    if (r < g.rows)
      for (int j = 1; j <= g.cols; ++j) t.factors.push_back({K::Down, 2 * j - 1, r, j});
  }
  return t;
}

/// Scalars and loop weights used by trace_Z.  standard() is the
/// Fortuin-Kasteleyn correspondence described at the top of this file.
struct PottsCorrespondence {
  RationalFn c, cp, d;                        // loop, blobbed loop, blob merge
  RationalFn wall_one, wall_e;                // w + (1-w)/d e0
  RationalFn across_one, across_e;            // 1 + v/c e_2j
  RationalFn down_one, down_e;                // v/c + e_2j-1

  static PottsCorrespondence standard(Registry& reg) {
    const RationalFn one(&reg, 1);
    const RationalFn c = RationalFn::variable(reg["c"]), u = RationalFn::variable(reg["u"]), w = RationalFn::variable(reg["w"]);
    const RationalFn d = one, v = u - one;
    return {c, d / c, d, w, (one - w) / d, one, v / c, v / c, one};
  }

  std::pair<RationalFn, RationalFn> scalars(TangleFactor::Kind k) const {
    switch (k) {
      case TangleFactor::Kind::Wall: return {wall_one, wall_e};
      case TangleFactor::Kind::Across: return {across_one, across_e};
      default: return {down_one, down_e};
    }
  }
};

namespace detail {

// Replaces c^(2k) by f^k; odd or negative powers of c mean the
// correspondence failed.
inline PottsPoly reduce_loop_weight(const RationalFn& z, int f, Variable c) {
  const RationalFn r = z.normalized();
  if (!r.is_polynomial()) throw DomainError("trace_Z: result is not a polynomial: " + r.to_string());
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : r.numerator().terms()) {
    const int e = t.monomial[c.index];
    if (e < 0 || e % 2 != 0)
      throw DomainError("trace_Z: correspondence unsolved, residual term with c^" + std::to_string(e) + " in " + r.to_string());
    mpz_class fk;
    mpz_ui_pow_ui(fk.get_mpz_t(), static_cast<unsigned long>(f), static_cast<unsigned long>(e / 2));
    terms.push_back({t.monomial / Monomial::variable(c.index, e), t.coefficient * Rational(fk)});
  }
  LaurentPoly p = LaurentPoly::from_terms(r.registry(), std::move(terms));
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (t.monomial[i] < 0) throw DomainError("trace_Z: negative exponent in " + p.to_string());
  return p;
}

}  // namespace detail

/// c^(|V| + 2C) tr(cap * factors), c^2 reduced to f.
inline PottsPoly trace_Z(const BoundaryLattice& l, int f, Registry& reg, const PottsCorrespondence& corr) {
  if (f < 1) throw UsageError("trace_Z: at least one spin state required");
  if (l.size() == 0) return LaurentPoly(&reg, 1);
  const Tangle tangle = lattice_to_tangle(l);
  const TlbAlgebra alg(tangle.strands, {corr.c, corr.cp, corr.d});
  TlbElement x = alg.unit();
  for (int g : tangle.cap) x = alg.multiply(x, alg.generator(g));
  for (const auto& fac : tangle.factors) {
    const auto [a, b] = corr.scalars(fac.kind);
    TlbElement next;
    const TlbElement gen = alg.generator(fac.generator);
    for (const auto& [diag, coef] : x) {
      TlbAlgebra::add_to(next, diag, coef * a);
      auto [s, d] = alg.compose(diag, gen.begin()->first);
      TlbAlgebra::add_to(next, d, coef * b * s);
    }
    x = std::move(next);
  }
  const RationalFn tr = alg.trace(x, {corr.c, corr.cp});
  const RationalFn z = corr.c.pow(l.size() + tangle.strands) * tr;
  return detail::reduce_loop_weight(z, f, reg["c"]);
}

inline PottsPoly trace_Z(const BoundaryLattice& l, int f, Registry& reg) {
  return trace_Z(l, f, reg, PottsCorrespondence::standard(reg));
}

struct CrosscheckReport {
  bool pass = false;
  PottsPoly brute, trace;
  std::string error;  // set when trace_Z could not be evaluated
  std::vector<std::string> differences;  // "u^a*w^b: brute X, trace Y"
};

inline CrosscheckReport crosscheck(const BoundaryLattice& l, int f, Registry& reg, const PottsCorrespondence& corr) {
  CrosscheckReport rep;
  rep.brute = brute_force_Z(l, f, reg);
  try {
    rep.trace = trace_Z(l, f, reg, corr);
  } catch (const DomainError& e) {
    rep.error = e.what();
    return rep;
  }
  const LaurentPoly diff = rep.brute - rep.trace;
  for (const auto& t : diff.terms()) {
    const LaurentPoly m = LaurentPoly::monomial(&reg, t.monomial, 1);
    Rational b = 0, tr = 0;
    for (const auto& x : rep.brute.terms())
      if (x.monomial == t.monomial) b = x.coefficient;
    for (const auto& x : rep.trace.terms())
      if (x.monomial == t.monomial) tr = x.coefficient;
    rep.differences.push_back(m.to_string() + ": brute " + b.get_str() + ", trace " + tr.get_str());
  }
  rep.pass = rep.differences.empty();
  return rep;
}

inline CrosscheckReport crosscheck(const BoundaryLattice& l, int f, Registry& reg) {
  return crosscheck(l, f, reg, PottsCorrespondence::standard(reg));
}

}  // namespace bcox
