#pragma once

// Invariants of closed type-B braids: the Kauffman-type invariant
// x^(n-1) lambda^e tr(beta) through a Markov trace on B*B_3, and the
// Temperley-Lieb route through blob diagrams.  Plus a randomized check of
// invariance under relation shuffles, conjugation and stabilization.

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bcox/algebra.hpp"
#include "bcox/braid.hpp"
#include "bcox/markov.hpp"
#include "bcox/tlb.hpp"

namespace bcox {

/// L(beta, n) = x^(n-1) lambda^e(beta) tr(beta) with tr the Markov trace of
/// the tower B*B_1 < B*B_2 < B*B_3 (words on fewer strands are read in
/// B*B_3, where the trace restricts consistently).
class KauffmanInvariant {
 public:
  static constexpr int kMaxStrands = 3;

  explicit KauffmanInvariant(Registry& reg) : reg_(&reg), par_(BmwParameters::symbolic(reg)) {
    for (int n = 1; n <= kMaxStrands; ++n) tables_.push_back(std::make_unique<BasisTable>(compute_basis(present_bmwB(n, par_))));
    std::vector<const BasisTable*> tower;
    for (int n = kMaxStrands - 1; n >= 1; --n) tower.push_back(tables_[static_cast<std::size_t>(n - 1)].get());
    trace_ = std::make_unique<MarkovTrace>(solve_markov_trace(*tables_.back(), tower, reg));
  }

  const MarkovTrace& trace() const { return *trace_; }
  const BasisTable& table(int n) const { return *tables_.at(static_cast<std::size_t>(n - 1)); }
  const BmwParameters& parameters() const { return par_; }

  RationalFn operator()(const BraidWord& w) const {
    if (w.strands() > kMaxStrands)
      throw CapabilityError("kauffman_B handles at most 3 strands; use the jones route for larger braids");
    const BasisTable& top = *tables_.back();
    const RationalFn tr = (*trace_)(element_of_word(top, BraidWord(kMaxStrands, w.letters())));
    return par_.x().pow(w.strands() - 1) * par_.lambda.pow(exponent_sum(w)) * tr;
  }

 private:
  Registry* reg_;
  BmwParameters par_;
  std::vector<std::unique_ptr<BasisTable>> tables_;
  std::unique_ptr<MarkovTrace> trace_;
};

/// Temperley-Lieb route: c^(n-1) (-b/a^2)^e tr(image), where image is the
/// blob-algebra image of the word and tr the closure trace with winding
/// weights zw = c, zb = c'.  With those weights the closure is planar,
/// and stabilization multiplies the trace by (a + b/c) = -a^2/(b c).
class JonesInvariant {
 public:
  static constexpr int kMaxStrands = 6;

  /// a = A, b = A^-1 with alpha, beta, d symbolic.
  explicit JonesInvariant(Registry& reg)
      : JonesInvariant(solve_skein(reg, RationalFn::variable(reg["A"]), RationalFn::variable(reg["A"], -1),
                                   RationalFn::variable(reg["alpha"]), RationalFn::variable(reg["beta"]),
                                   RationalFn::variable(reg["d"]))) {}

  explicit JonesInvariant(SkeinParameters s) : s_(std::move(s)) {
    if (!skein_relations_hold(s_)) throw UsageError("jones_B: parameters do not solve the skein relations");
    writhe_factor_ = -(s_.b / (s_.a * s_.a));
  }

  const SkeinParameters& skein() const { return s_; }

  RationalFn operator()(const BraidWord& w) const {
    if (w.strands() > kMaxStrands) throw CapabilityError("jones_B handles at most 6 strands");
    const TlbElement img = detail::image_of_word(w, s_);
    const TlbAlgebra alg(w.strands(), {s_.c, s_.cp, s_.d});
    const RationalFn tr = alg.trace(img, {s_.c, s_.cp});
    return s_.c.pow(w.strands() - 1) * writhe_factor_.pow(exponent_sum(w)) * tr;
  }

 private:
  SkeinParameters s_;
  RationalFn writhe_factor_;
};

struct InvarianceTrial {
  int index = 0;
  std::string original, moved, moves;
  bool kauffman_equal = false, jones_equal = false;
};

struct InvarianceReport {
  int trials = 0;
  int kauffman_passes = 0, jones_passes = 0;
  std::vector<InvarianceTrial> results;  // ordered by trial index

  std::optional<InvarianceTrial> first_counterexample() const {
    for (const auto& r : results)
      if (!r.kauffman_equal || !r.jones_equal) return r;
    return std::nullopt;
  }
};

struct InvarianceOptions {
  int trials = 200;
  std::uint64_t seed = 1;
  int jobs = 1;
  int max_strands = 3;
  /// Replace the last move by appending X_{n-1} (or Y on one strand)
  /// without stabilizing: a non-move whose invariants should differ.
  bool negative_control = false;
};

namespace detail {

inline InvarianceTrial run_trial(int index, const InvarianceOptions& opt, const KauffmanInvariant& kauffman,
                                 const JonesInvariant& jones) {
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uniform(1, opt.max_strands);
  const BraidWord w = random_braid(n, static_cast<std::size_t>(uniform(0, 5)), rng);
  BraidWord v = w;
  std::string moves;
  const int count = uniform(1, 3);
  for (int m = 0; m < count; ++m) {
    std::vector<int> kinds{0, 1};  // shuffle, conjugate
    if (v.strands() < opt.max_strands) kinds.push_back(2);
    if (can_destabilize(v)) kinds.push_back(3);
    const int kind = kinds[static_cast<std::size_t>(uniform(0, static_cast<int>(kinds.size()) - 1))];
    if (!moves.empty()) moves += ", ";
    if (kind == 0) {
      const int steps = uniform(1, 20);
      v = relation_shuffle(v, steps, rng());
      moves += "shuffle " + std::to_string(steps);
    } else if (kind == 1) {
      const BraidWord by = random_braid(v.strands(), static_cast<std::size_t>(uniform(1, 2)), rng);
      v = markov_move(v, MarkovMove::conjugate(by));
      moves += "conjugate by [" + by.to_string() + "]";
    } else if (kind == 2) {
      const bool pos = uniform(0, 1) == 1;
      v = markov_move(v, pos ? MarkovMove::stabilize_pos() : MarkovMove::stabilize_neg());
      moves += pos ? "stabilize +" : "stabilize -";
    } else {
      v = markov_move(v, MarkovMove::destabilize());
      moves += "destabilize";
    }
  }
  if (opt.negative_control) {
    v.push_back({v.strands() >= 2 ? v.strands() - 1 : 0, 1});
    moves += ", append without stabilizing";
  }
  InvarianceTrial t;
  t.index = index;
  t.original = std::to_string(w.strands()) + ":[" + w.to_string() + "]";
  t.moved = std::to_string(v.strands()) + ":[" + v.to_string() + "]";
  t.moves = moves;
  t.kauffman_equal = rf_equal(kauffman(w), kauffman(v));
  t.jones_equal = rf_equal(jones(w), jones(v));
  return t;
}

}  // namespace detail

/// Random words on at most 3 strands, random sequences of Markov moves
/// and relation shuffles; both invariants compared exactly.  Trials are
/// independent (per-trial seeds), so `jobs` threads give the same report.
inline InvarianceReport invariance_suite(const InvarianceOptions& opt, const KauffmanInvariant& kauffman,
                                         const JonesInvariant& jones) {
  InvarianceReport rep;
  rep.trials = std::max(opt.trials, 0);
  rep.results.resize(static_cast<std::size_t>(rep.trials));
  const int jobs = std::clamp(opt.jobs, 1, std::max(rep.trials, 1));
  auto worker = [&](int first) {
    for (int i = first; i < rep.trials; i += jobs)
      rep.results[static_cast<std::size_t>(i)] = detail::run_trial(i, opt, kauffman, jones);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : rep.results) {
    rep.kauffman_passes += r.kauffman_equal;
    rep.jones_passes += r.jones_equal;
  }
  return rep;
}

}  // namespace bcox
