#pragma once

// Temperley-Lieb algebra of type B as a diagram algebra: planar matchings
// of n top and n bottom points, where an arc may carry a blob when it can
// be slid to the left wall without crossing another arc.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcox/algebra.hpp"
#include "bcox/braid.hpp"
#include "bcox/errors.hpp"
#include "bcox/ring.hpp"

namespace bcox {

/// Points 0..n-1 are t1..tn (top, left to right), n..2n-1 are b1..bn.
class BlobDiagram {
 public:
  BlobDiagram() = default;

  /// Validates planarity and blob legality.
  BlobDiagram(int n, std::vector<int> partner, std::vector<bool> blob)
      : n_(n), partner_(std::move(partner)), blob_(std::move(blob)) {
    if (n_ < 0 || partner_.size() != static_cast<std::size_t>(2 * n_) || blob_.size() != partner_.size())
      throw UsageError("blob diagram: wrong point count");
    for (int p = 0; p < 2 * n_; ++p) {
      const int q = partner_[static_cast<std::size_t>(p)];
      if (q < 0 || q >= 2 * n_ || q == p || partner_[static_cast<std::size_t>(q)] != p)
        throw UsageError("blob diagram: not a perfect matching");
      if (blob_[static_cast<std::size_t>(p)] != blob_[static_cast<std::size_t>(q)])
        throw UsageError("blob diagram: blob marks must agree on both ends of an arc");
    }
    for (int p = 0; p < 2 * n_; ++p)
      for (int r = 0; r < 2 * n_; ++r)
        if (crosses(p, r)) throw UsageError("blob diagram: arcs cross");
    for (int p = 0; p < 2 * n_; ++p)
      if (blob_[static_cast<std::size_t>(p)] && !exposed(p)) throw UsageError("blob diagram: blob on an arc hidden from the wall");
  }

  static BlobDiagram identity(int n) {
    std::vector<int> partner(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
      partner[static_cast<std::size_t>(k)] = n + k;
      partner[static_cast<std::size_t>(n + k)] = k;
    }
    return BlobDiagram(n, std::move(partner), std::vector<bool>(static_cast<std::size_t>(2 * n), false));
  }

  /// e0 (i = 0): identity with a blob on strand 1; e_i: cap on t_i t_{i+1},
  /// cup on b_i b_{i+1}.
  static BlobDiagram generator(int n, int i) {
    if (i < 0 || i >= n) throw UsageError("blob diagram generator index out of range");
    BlobDiagram d = identity(n);
    if (i == 0) {
      d.blob_[0] = d.blob_[static_cast<std::size_t>(n)] = true;
      return d;
    }
    const int t = i - 1, b = n + i - 1;
    d.partner_[static_cast<std::size_t>(t)] = t + 1;
    d.partner_[static_cast<std::size_t>(t + 1)] = t;
    d.partner_[static_cast<std::size_t>(b)] = b + 1;
    d.partner_[static_cast<std::size_t>(b + 1)] = b;
    return d;
  }

  int strands() const { return n_; }
  int partner(int p) const { return partner_.at(static_cast<std::size_t>(p)); }
  bool blobbed(int p) const { return blob_.at(static_cast<std::size_t>(p)); }

  /// Position of a point going clockwise around the boundary from t1:
  /// t1..tn, then bn..b1.  The wall sits between b1 and t1.
  int circular(int p) const { return p < n_ ? p : 3 * n_ - 1 - p; }

  /// True when the arc at p is not nested inside another arc, i.e. it
  /// can reach the left wall.
  bool exposed(int p) const {
    int i = circular(p), j = circular(partner(p));
    if (i > j) std::swap(i, j);
    for (int r = 0; r < 2 * n_; ++r) {
      int k = circular(r), l = circular(partner(r));
      if (k > l) std::swap(k, l);
      if (k < i && j < l) return false;
    }
    return true;
  }

  std::string to_string() const {
    auto label = [&](int p) { return p < n_ ? "t" + std::to_string(p + 1) : "b" + std::to_string(p - n_ + 1); };
    std::string s = "{";
    bool first = true;
    for (int p = 0; p < 2 * n_; ++p) {
      const int q = partner(p);
      if (q < p) continue;
      s += (first ? "" : " ") + label(p) + "-" + label(q) + (blobbed(p) ? "*" : "");
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const BlobDiagram&, const BlobDiagram&) = default;
  friend auto operator<=>(const BlobDiagram& a, const BlobDiagram& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.partner_ <=> b.partner_; c != 0) return c;
    return a.blob_ <=> b.blob_;
  }

 private:
  bool crosses(int p, int r) const {
    int i = circular(p), j = circular(partner(p)), k = circular(r), l = circular(partner(r));
    if (i > j) std::swap(i, j);
    if (k > l) std::swap(k, l);
    return (i < k && k < j && j < l) || (k < i && i < l && l < j);
  }

  int n_ = 0;
  std::vector<int> partner_;
  std::vector<bool> blob_;
};

/// All blob diagrams on n strands in sorted order; C(2n, n) of them.
inline std::vector<BlobDiagram> enumerate_diagrams(int n) {
  if (n < 0 || n > 6) throw CapabilityError("enumerate_diagrams: 0 <= n <= 6 supported");
  const int m = 2 * n;
  // noncrossing matchings of circular positions 0..m-1
  std::vector<std::vector<int>> matchings;
  std::vector<int> circ(static_cast<std::size_t>(m), -1);
  std::function<void()> rec = [&]() {
    int first = 0;
    while (first < m && circ[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == m) {
      matchings.push_back(circ);
      return;
    }
    // partner at odd distance keeps the enclosed interval even
    for (int j = first + 1; j < m; j += 2) {
      bool free_inside = circ[static_cast<std::size_t>(j)] < 0;
      for (int k = first + 1; k < j && free_inside; ++k)
        if (circ[static_cast<std::size_t>(k)] >= 0) free_inside = false;
      if (!free_inside) continue;
      circ[static_cast<std::size_t>(first)] = j;
      circ[static_cast<std::size_t>(j)] = first;
      rec();
      circ[static_cast<std::size_t>(first)] = circ[static_cast<std::size_t>(j)] = -1;
    }
  };
  rec();
  auto point_of = [n](int c) { return c < n ? c : 3 * n - 1 - c; };
  std::vector<BlobDiagram> out;
  for (const auto& mc : matchings) {
    std::vector<int> partner(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) partner[static_cast<std::size_t>(point_of(c))] = point_of(mc[static_cast<std::size_t>(c)]);
    const BlobDiagram plain(n, partner, std::vector<bool>(static_cast<std::size_t>(m), false));
    std::vector<int> exposed_arcs;
    for (int p = 0; p < m; ++p)
      if (p < plain.partner(p) && plain.exposed(p)) exposed_arcs.push_back(p);
    for (unsigned mask = 0; mask < (1u << exposed_arcs.size()); ++mask) {
      std::vector<bool> blob(static_cast<std::size_t>(m), false);
      for (std::size_t k = 0; k < exposed_arcs.size(); ++k)
        if (mask >> k & 1u) {
          blob[static_cast<std::size_t>(exposed_arcs[k])] = true;
          blob[static_cast<std::size_t>(plain.partner(exposed_arcs[k]))] = true;
        }
      out.emplace_back(n, partner, std::move(blob));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Element of TB_n: diagram -> nonzero coefficient.
using TlbElement = std::map<BlobDiagram, RationalFn>;

/// Weights of the closure trace: contractible loops c / c', loops around
/// the axis zw (plain) / zb (blobbed).
struct TlbTraceWeights {
  RationalFn zw, zb;
  static TlbTraceWeights symbolic(Registry& reg) { return {RationalFn::variable(reg["zw"]), RationalFn::variable(reg["zb"])}; }
};

/// The diagram algebra with loop value c, blobbed loop value c' and blob
/// merge factor d.
class TlbAlgebra {
 public:
  TlbAlgebra(int n, TlbParameters par) : n_(n), par_(std::move(par)) {
    if (n < 0) throw UsageError("TlbAlgebra: n >= 0 required");
    reg_ = par_.c.registry() ? par_.c.registry() : (par_.cp.registry() ? par_.cp.registry() : par_.d.registry());
  }

  int strands() const { return n_; }
  const TlbParameters& parameters() const { return par_; }
  const Registry* registry() const { return reg_; }

  TlbElement unit() const { return {{BlobDiagram::identity(n_), one()}}; }
  TlbElement scalar(const RationalFn& s) const {
    if (s.is_zero()) return {};
    return {{BlobDiagram::identity(n_), s}};
  }
  TlbElement generator(int i) const { return {{BlobDiagram::generator(n_, i), one()}}; }

  /// Stacks a over b (a's bottom points meet b's top points) and removes
  /// closed loops.
  std::pair<RationalFn, BlobDiagram> compose(const BlobDiagram& a, const BlobDiagram& b) const {
    if (a.strands() != n_ || b.strands() != n_) throw UsageError("compose: diagrams on different strand counts");
    const int n = n_;
    // nodes: a's points 0..2n-1, b's points 2n..4n-1
    auto arc = [&](int v) { return v < 2 * n ? a.partner(v) : 2 * n + b.partner(v - 2 * n); };
    auto blob = [&](int v) { return v < 2 * n ? a.blobbed(v) : b.blobbed(v - 2 * n); };
    // glue a's bottom k with b's top k
    auto glue = [&](int v) -> int {
      if (v < 2 * n) return v >= n ? 2 * n + (v - n) : -1;
      const int w = v - 2 * n;
      return w < n ? n + w : -1;
    };
    auto is_outer = [&](int v) { return (v < 2 * n && v < n) || (v >= 2 * n && v - 2 * n >= n); };
    auto result_point = [&](int v) { return v < 2 * n ? v : v - 2 * n; };
    std::vector<bool> seen(static_cast<std::size_t>(4 * n), false);
    std::vector<int> partner(static_cast<std::size_t>(2 * n));
    std::vector<bool> rblob(static_cast<std::size_t>(2 * n), false);
    RationalFn scalar = one();
    for (int start = 0; start < 4 * n; ++start) {
      if (!is_outer(start) || seen[static_cast<std::size_t>(start)]) continue;
      int v = start, blobs = 0;
      while (true) {
        seen[static_cast<std::size_t>(v)] = true;
        if (blob(v)) ++blobs;
        const int w = arc(v);
        seen[static_cast<std::size_t>(w)] = true;
        if (is_outer(w)) {
          v = w;
          break;
        }
        v = glue(w);
      }
      partner[static_cast<std::size_t>(result_point(start))] = result_point(v);
      partner[static_cast<std::size_t>(result_point(v))] = result_point(start);
      if (blobs > 0) {
        rblob[static_cast<std::size_t>(result_point(start))] = rblob[static_cast<std::size_t>(result_point(v))] = true;
        scalar *= par_.d.pow(blobs - 1);
      }
    }
    for (int start = 0; start < 4 * n; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      int v = start, blobs = 0;
      do {
        seen[static_cast<std::size_t>(v)] = true;
        if (blob(v)) ++blobs;
        const int w = arc(v);
        seen[static_cast<std::size_t>(w)] = true;
        v = glue(w);
      } while (v != start);
      scalar *= blobs > 0 ? par_.cp * par_.d.pow(blobs - 1) : par_.c;
    }
    return {scalar, BlobDiagram(n, std::move(partner), std::move(rblob))};
  }

  TlbElement multiply(const TlbElement& x, const TlbElement& y) const {
    TlbElement out;
    for (const auto& [da, ca] : x)
      for (const auto& [db, cb] : y) {
        auto [s, d] = compose(da, db);
        add_to(out, d, ca * cb * s);
      }
    return out;
  }

  /// Annular closure: t_k joins b_k around the axis.  Returns the weight
  /// of the closed diagram (product of loop weights), unnormalized.
  RationalFn closure_weight(const BlobDiagram& d, const TlbTraceWeights& w) const {
    const int n = n_;
    std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
    RationalFn weight = one();
    for (int start = 0; start < 2 * n; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      int v = start, blobs = 0, winding = 0;
      do {
        seen[static_cast<std::size_t>(v)] = true;
        if (d.blobbed(v)) ++blobs;
        const int u = d.partner(v);
        seen[static_cast<std::size_t>(u)] = true;
        // closure strand from t_k runs to b_k around the axis (+1), back -1
        winding += u < n ? 1 : -1;
        v = u < n ? u + n : u - n;
      } while (v != start);
      const RationalFn extra = blobs > 1 ? par_.d.pow(blobs - 1) : one();
      if (winding == 0) weight *= (blobs > 0 ? par_.cp : par_.c) * extra;
      else weight *= (blobs > 0 ? w.zb : w.zw) * extra;
    }
    return weight;
  }

  /// Closure trace normalized so tr(1) = 1 (division by zw^n).
  RationalFn trace(const TlbElement& x, const TlbTraceWeights& w) const {
    RationalFn acc(reg_, 0);
    for (const auto& [d, c] : x) acc += c * closure_weight(d, w);
    return acc / w.zw.pow(n_);
  }

  static void add_to(TlbElement& e, const BlobDiagram& d, const RationalFn& c) {
    if (c.is_zero()) return;
    auto it = e.find(d);
    if (it == e.end()) {
      e.emplace(d, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }

  TlbElement add(TlbElement a, const TlbElement& b, const RationalFn& scale) const {
    for (const auto& [d, c] : b) add_to(a, d, c * scale);
    return a;
  }

 private:
  RationalFn one() const { return RationalFn(reg_, 1); }

  int n_;
  TlbParameters par_;
  const Registry* reg_ = nullptr;
};

inline bool tlb_equal(const TlbElement& a, const TlbElement& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || !rf_equal(ia->second, ib->second)) return false;
  return true;
}

inline std::string to_string(const TlbElement& e) {
  if (e.empty()) return "0";
  std::string s;
  for (const auto& [d, c] : e) s += (s.empty() ? "" : " + ") + ("(" + c.to_string() + ")*" + d.to_string());
  return s;
}

// ---------------------------------------------------------------------------
// Skein parameters: X_i -> a + b e_i, Y -> alpha + beta e0
// ---------------------------------------------------------------------------

/// Loop values and generator images making the braid group of type B act
/// on TB_n.
/// A defining relation of TB_n evaluated as diagram composition.
struct TlbRelationCheck {
  std::string name;
  TlbElement lhs, rhs;
  bool holds() const { return tlb_equal(lhs, rhs); }
};

/// e0^2 = d e0, e_i^2 = c e_i, e1 e0 e1 = c' e1, e_i e_{i+-1} e_i = e_i and
/// far commutation, each computed by composing blob diagrams.
inline std::vector<TlbRelationCheck> tlb_relation_checks(const TlbAlgebra& alg) {
  const int n = alg.strands();
  const auto& par = alg.parameters();
  auto e = [&](int i) { return alg.generator(i); };
  auto mul = [&](std::initializer_list<TlbElement> fs) {
    TlbElement r = alg.unit();
    for (const auto& f : fs) r = alg.multiply(r, f);
    return r;
  };
  auto scaled = [&](const TlbElement& x, const RationalFn& s) { return alg.add({}, x, s); };
  std::vector<TlbRelationCheck> out;
  out.push_back({"e0 e0 = d e0", mul({e(0), e(0)}), scaled(e(0), par.d)});
  for (int i = 1; i < n; ++i) {
    const std::string si = std::to_string(i);
    out.push_back({"e" + si + " e" + si + " = c e" + si, mul({e(i), e(i)}), scaled(e(i), par.c)});
    if (i + 1 < n) {
      const std::string sj = std::to_string(i + 1);
      out.push_back({"e" + si + " e" + sj + " e" + si + " = e" + si, mul({e(i), e(i + 1), e(i)}), e(i)});
      out.push_back({"e" + sj + " e" + si + " e" + sj + " = e" + sj, mul({e(i + 1), e(i), e(i + 1)}), e(i + 1)});
    }
  }
  if (n >= 2) out.push_back({"e1 e0 e1 = c' e1", mul({e(1), e(0), e(1)}), scaled(e(1), par.cp)});
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      const std::string si = std::to_string(i), sj = std::to_string(j);
      out.push_back({"e" + si + " e" + sj + " = e" + sj + " e" + si, mul({e(i), e(j)}), mul({e(j), e(i)})});
    }
  return out;
}

struct SkeinParameters {
  RationalFn a, b, alpha, beta;
  RationalFn c, cp, d;
  RationalFn q1, q0;  // Y^2 = q1 Y + q0
  /// Solution branches met while solving, the taken one first.
  std::vector<std::string> branches;
};

namespace detail {

// For an element whose coefficients are affine in `unknown`, the values
// of the unknown making every coefficient vanish: nullopt if none, the
// unknown itself (as a variable) if any value works.
inline std::optional<RationalFn> solve_affine_vanishing(const TlbElement& residual, Variable unknown) {
  const Registry* reg = unknown.registry;
  std::optional<RationalFn> value;
  bool any = true;
  for (const auto& [d, coef] : residual) {
    const RationalFn at0 = substitute(coef, {{unknown, RationalFn(reg, 0)}});
    const RationalFn at1 = substitute(coef, {{unknown, RationalFn(reg, 1)}});
    const RationalFn slope = at1 - at0;
    // affine check at a third point
    if (!rf_equal(substitute(coef, {{unknown, RationalFn(reg, 2)}}), at0 + slope * RationalFn(reg, 2)))
      throw UsageError("skein residual is not affine in the unknown");
    if (slope.is_zero()) {
      if (!at0.is_zero()) return std::nullopt;
      continue;
    }
    const RationalFn v = -(at0 / slope);
    if (value && !rf_equal(*value, v)) return std::nullopt;
    value = v;
    any = false;
  }
  if (any) return RationalFn::variable(unknown);
  return value;
}

}  // namespace detail

/// Solves for c (braid relation in TB_3), c' (four-term relation in TB_2)
/// and q1, q0 (quadratic relation of Y) given a, b, alpha, beta, d.
/// Throws DomainError when a relation has no solution.
inline SkeinParameters solve_skein(Registry& reg, const RationalFn& a, const RationalFn& b, const RationalFn& alpha,
                                   const RationalFn& beta, const RationalFn& d) {
  SkeinParameters s{a, b, alpha, beta, {}, {}, d, {}, {}, {}};
  const Variable uc = reg.get_or_add("c"), ucp = reg.get_or_add("cp");
  const RationalFn one(&reg, 1);

  // braid relation X1 X2 X1 = X2 X1 X2 with c unknown
  {
    const TlbAlgebra alg(3, {RationalFn::variable(uc), RationalFn::variable(ucp), d});
    auto X = [&](int i) { return alg.add(alg.scalar(a), alg.generator(i), b); };
    const TlbElement l = alg.multiply(alg.multiply(X(1), X(2)), X(1));
    const TlbElement r = alg.multiply(alg.multiply(X(2), X(1)), X(2));
    const auto c = detail::solve_affine_vanishing(alg.add(l, r, -one), uc);
    if (!c) throw DomainError("skein: braid relation has no solution for c");
    s.c = *c;
    s.branches.push_back(b.is_zero() ? "b = 0: X scalar, c free" : "b != 0: c = -a/b - b/a");
  }
  // four-term relation with c solved and c' unknown
  {
    const TlbAlgebra alg(2, {s.c, RationalFn::variable(ucp), d});
    const TlbElement X = alg.add(alg.scalar(a), alg.generator(1), b);
    const TlbElement Y = alg.add(alg.scalar(alpha), alg.generator(0), beta);
    auto m = [&](std::initializer_list<const TlbElement*> fs) {
      TlbElement r = alg.unit();
      for (const auto* f : fs) r = alg.multiply(r, *f);
      return r;
    };
    const TlbElement res = alg.add(m({&Y, &X, &Y, &X}), m({&X, &Y, &X, &Y}), -one);
    const auto cp = detail::solve_affine_vanishing(res, ucp);
    if (!cp) throw DomainError("skein: four-term relation has no solution for c'");
    s.cp = *cp;
    if (beta.is_zero()) s.branches.push_back("beta = 0: Y scalar, c' free");
    else if (b.is_zero()) s.branches.push_back("b = 0: X scalar, c' free");
    else s.branches.push_back("b, beta != 0: c' = -(2 a alpha + a beta d + alpha b c)/(b beta)");
  }
  // Y^2 = (alpha^2 + (2 alpha beta + beta^2 d) e0) = q1 Y + q0
  if (beta.is_zero()) {
    s.q1 = alpha + alpha;
    s.q0 = -(alpha * alpha);
    s.branches.push_back("beta = 0: q1 = 2 alpha, q0 = -alpha^2 chosen from the family q1 alpha + q0 = alpha^2");
  } else {
    s.q1 = alpha + alpha + beta * d;
    s.q0 = alpha * alpha - s.q1 * alpha;
    s.branches.push_back("beta != 0: q1 = 2 alpha + beta d, q0 = -alpha^2 - alpha beta d");
  }
  return s;
}

namespace detail {

inline TlbElement product(const TlbAlgebra& alg, std::initializer_list<const TlbElement*> fs) {
  TlbElement r = alg.unit();
  for (const auto* f : fs) r = alg.multiply(r, *f);
  return r;
}

}  // namespace detail

/// True when the braid relation (in TB_3), the four-term relation (in
/// TB_2) and Y^2 = q1 Y + q0 hold for the images a + b e_i, alpha + beta e0.
inline bool skein_relations_hold(const SkeinParameters& s) {
  const RationalFn one = s.a.registry() ? RationalFn(s.a.registry(), 1) : RationalFn(s.c.registry(), 1);
  const TlbAlgebra a3(3, {s.c, s.cp, s.d});
  const TlbElement X1 = a3.add(a3.scalar(s.a), a3.generator(1), s.b);
  const TlbElement X2 = a3.add(a3.scalar(s.a), a3.generator(2), s.b);
  if (!tlb_equal(detail::product(a3, {&X1, &X2, &X1}), detail::product(a3, {&X2, &X1, &X2}))) return false;
  const TlbAlgebra a2(2, {s.c, s.cp, s.d});
  const TlbElement X = a2.add(a2.scalar(s.a), a2.generator(1), s.b);
  const TlbElement Y = a2.add(a2.scalar(s.alpha), a2.generator(0), s.beta);
  if (!tlb_equal(detail::product(a2, {&Y, &X, &Y, &X}), detail::product(a2, {&X, &Y, &X, &Y}))) return false;
  const TlbElement Y2 = detail::product(a2, {&Y, &Y});
  return tlb_equal(Y2, a2.add(a2.scalar(s.q0), Y, s.q1));
}

namespace detail {

inline TlbElement image_of_word(const BraidWord& w, const SkeinParameters& s) {
  const TlbAlgebra alg(w.strands(), {s.c, s.cp, s.d});
  const RationalFn binv = -(s.b / (s.a * (s.a + s.b * s.c)));
  const RationalFn betainv = -(s.beta / (s.alpha * (s.alpha + s.beta * s.d)));
  TlbElement r = alg.unit();
  for (const auto& l : w.letters()) {
    TlbElement f;
    if (l.index == 0)
      f = alg.add(alg.scalar(l.power > 0 ? s.alpha : s.alpha.inverse()), alg.generator(0), l.power > 0 ? s.beta : betainv);
    else
      f = alg.add(alg.scalar(l.power > 0 ? s.a : s.a.inverse()), alg.generator(l.index), l.power > 0 ? s.b : binv);
    r = alg.multiply(r, f);
  }
  return r;
}

}  // namespace detail

/// Image of a braid word in TB_n: X_i -> a + b e_i, Y -> alpha + beta e0,
/// inverses a^-1 - b/(a(a + b c)) e_i and alpha^-1 - beta/(alpha(alpha + beta d)) e0.
/// UsageError unless the parameters satisfy the skein relations.
inline TlbElement braid_image(const BraidWord& w, const SkeinParameters& s) {
  if (!skein_relations_hold(s)) throw UsageError("braid_image: parameters do not solve the skein relations");
  return detail::image_of_word(w, s);
}

}  // namespace bcox
