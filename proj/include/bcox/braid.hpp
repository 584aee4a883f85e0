#pragma once

// Words in the type-B braid group on n strands.  Generator 0 is the
// boundary generator Y (the strand-1 loop around the fixed line);
// generators 1..n-1 are the ordinary crossings.

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bcox/errors.hpp"

namespace bcox {

struct BraidLetter {
  int index = 0;  // 0 = Y, k >= 1 = X_k
  int power = 1;  // +1 or -1

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
  BraidLetter inverse() const { return {index, -power}; }
};

class BraidWord {
 public:
  BraidWord() = default;
  explicit BraidWord(int strands, std::vector<BraidLetter> letters = {}) : strands_(strands), letters_(std::move(letters)) {
    if (strands_ < 1) throw UsageError("a braid needs at least one strand");
    for (const auto& l : letters_) check(l);
  }

  int strands() const { return strands_; }
  const std::vector<BraidLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  void push_back(BraidLetter l) {
    check(l);
    letters_.push_back(l);
  }

  BraidWord inverse() const {
    BraidWord r(strands_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(it->inverse());
    return r;
  }

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.strands_ != b.strands_) throw UsageError("braid words on different strand counts");
    BraidWord r = a;
    r.letters_.insert(r.letters_.end(), b.letters_.begin(), b.letters_.end());
    return r;
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

  /// Same token syntax as parse_braid: `y`, `y'`, `k`, `-k`.
  std::string to_string() const {
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += ' ';
      if (l.index == 0)
        s += l.power > 0 ? "y" : "y'";
      else
        s += std::to_string(l.power * l.index);
    }
    return s;
  }

 private:
  void check(const BraidLetter& l) const {
    if (l.index < 0 || l.index >= strands_) throw UsageError("generator index out of range for strand count");
    if (l.power != 1 && l.power != -1) throw UsageError("letter powers must be +1 or -1");
  }

  int strands_ = 1;
  std::vector<BraidLetter> letters_;
};

/// Tokens: `y`, `y'` (Y and its inverse) and signed integers
/// +-1..+-(n-1) (X_k and inverses), separated by whitespace.
inline BraidWord parse_braid(std::string_view text, int strands) {
  BraidWord w(strands);
  std::istringstream in{std::string(text)};
  std::string tok;
  std::size_t pos = 0;
  while (in >> tok) {
    if (tok == "y" || tok == "Y") {
      w.push_back({0, 1});
    } else if (tok == "y'" || tok == "Y'") {
      w.push_back({0, -1});
    } else {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0' || v == 0) throw ParseError("unrecognized braid token '" + tok + "'", pos);
      if (std::labs(v) >= strands)
        throw ParseError("generator " + tok + " out of range for " + std::to_string(strands) + " strands", pos);
      w.push_back({static_cast<int>(std::labs(v)), v > 0 ? 1 : -1});
    }
    ++pos;
  }
  return w;
}

/// Smallest strand count that accommodates every token of `text`.
inline int min_strands(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  long top = 0;
  while (in >> tok) {
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() && *end == '\0') top = std::max(top, std::labs(v));
  }
  return static_cast<int>(top) + 1;
}

/// Braid file: `#` starts a comment, an optional `strands <n>` line fixes
/// the strand count, every other token is a braid letter.  `strands`
/// overrides the file's count; without either the smallest fitting count
/// is used.
inline BraidWord read_braid(std::istream& in, std::optional<int> strands = std::nullopt) {
  std::string line, body;
  std::optional<int> declared;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "strands") {
      int n = 0;
      std::string extra;
      if (!(ls >> n) || (ls >> extra) || n < 1) throw ParseError("expected 'strands <n>' with n >= 1", 0);
      if (declared) throw ParseError("repeated strands line", 0);
      declared = n;
      continue;
    }
    body += line;
    body += ' ';
  }
  const int n = strands ? *strands : declared ? *declared : min_strands(body);
  if (n < 1) throw UsageError("braid: at least one strand required");
  return parse_braid(body, n);
}

inline BraidWord free_reduce(const BraidWord& w) {
  std::vector<BraidLetter> stack;
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back() == l.inverse())
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return BraidWord(w.strands(), std::move(stack));
}

/// e(X_k) = 1 for k >= 1, e(Y) = 0.
inline int exponent_sum(const BraidWord& w) {
  int e = 0;
  for (const auto& l : w.letters())
    if (l.index >= 1) e += l.power;
  return e;
}

/// Element of the hyperoctahedral group: images[k-1] is the signed image
/// of strand k.
class SignedPermutation {
 public:
  explicit SignedPermutation(int n = 0) : images_(static_cast<std::size_t>(n)) {
    for (int k = 0; k < n; ++k) images_[static_cast<std::size_t>(k)] = k + 1;
  }
  explicit SignedPermutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      const auto a = static_cast<std::size_t>(std::abs(v));
      if (a == 0 || a > images_.size() || seen[a - 1]) throw UsageError("not a signed permutation");
      seen[a - 1] = true;
    }
  }

  int size() const { return static_cast<int>(images_.size()); }
  const std::vector<int>& images() const { return images_; }

  int operator()(int k) const {
    const int v = images_.at(static_cast<std::size_t>(std::abs(k) - 1));
    return k > 0 ? v : -v;
  }

  /// Composition applying `a` first, then `b`: word order reads left to right.
  friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.size() != b.size()) throw UsageError("signed permutations of different degree");
    std::vector<int> r(a.images_.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = b(a.images_[k]);
    return SignedPermutation(std::move(r));
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

  bool is_identity() const { return *this == SignedPermutation(size()); }

  static SignedPermutation generator(int n, int index) {
    SignedPermutation p(n);
    if (index == 0)
      p.images_[0] = -1;
    else
      std::swap(p.images_[static_cast<std::size_t>(index - 1)], p.images_[static_cast<std::size_t>(index)]);
    return p;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < images_.size(); ++k) s += (k ? ", " : "") + std::to_string(images_[k]);
    return s + ")";
  }

 private:
  std::vector<int> images_;
};

/// Image in the Coxeter group of type B: Y flips the sign of strand 1,
/// X_k swaps strands k and k+1.  Generators are involutions there, so the
/// sign of a letter's power is irrelevant.
inline SignedPermutation signed_permutation(const BraidWord& w) {
  SignedPermutation p(w.strands());
  for (const auto& l : w.letters()) p = p * SignedPermutation::generator(w.strands(), l.index);
  return p;
}

/// All elements generated by the type-B Coxeter generators on n strands.
inline std::set<SignedPermutation> coxeter_group_closure(int n) {
  std::set<SignedPermutation> seen{SignedPermutation(n)};
  std::vector<SignedPermutation> frontier{SignedPermutation(n)};
  while (!frontier.empty()) {
    std::vector<SignedPermutation> next;
    for (const auto& p : frontier)
      for (int g = 0; g < n; ++g) {
        auto r = p * SignedPermutation::generator(n, g);
        if (seen.insert(r).second) next.push_back(r);
      }
    frontier = std::move(next);
  }
  return seen;
}

struct MarkovMove {
  enum class Kind { Conjugate, StabilizePos, StabilizeNeg, Destabilize };
  Kind kind = Kind::Conjugate;
  BraidWord by;  // conjugating word for Kind::Conjugate

  static MarkovMove conjugate(BraidWord by) { return {Kind::Conjugate, std::move(by)}; }
  static MarkovMove stabilize_pos() { return {Kind::StabilizePos, {}}; }
  static MarkovMove stabilize_neg() { return {Kind::StabilizeNeg, {}}; }
  static MarkovMove destabilize() { return {Kind::Destabilize, {}}; }
};

inline bool can_destabilize(const BraidWord& w) {
  const int top = w.strands() - 1;
  if (top < 1 || w.empty() || w.letters().back().index != top) return false;
  return std::count_if(w.letters().begin(), w.letters().end(), [&](const BraidLetter& l) { return l.index == top; }) == 1;
}

inline BraidWord markov_move(const BraidWord& w, const MarkovMove& move) {
  switch (move.kind) {
    case MarkovMove::Kind::Conjugate:
      return move.by * w * move.by.inverse();
    case MarkovMove::Kind::StabilizePos:
    case MarkovMove::Kind::StabilizeNeg: {
      BraidWord r(w.strands() + 1, w.letters());
      r.push_back({w.strands(), move.kind == MarkovMove::Kind::StabilizePos ? 1 : -1});
      return r;
    }
    case MarkovMove::Kind::Destabilize: {
      if (!can_destabilize(w))
        throw UsageError("destabilize needs a final X_{n-1}^{+-1} that is the only letter of index n-1");
      std::vector<BraidLetter> letters = w.letters();
      letters.pop_back();
      return BraidWord(w.strands() - 1, std::move(letters));
    }
  }
  throw UsageError("unknown Markov move");
}

namespace detail {

inline bool commute(int i, int j) {
  return std::abs(i - j) > 1;
}

inline bool same_sign_run(const std::vector<BraidLetter>& v, std::size_t at, std::size_t len) {
  if (at + len > v.size()) return false;
  for (std::size_t k = 1; k < len; ++k)
    if (v[at + k].power != v[at].power) return false;
  return true;
}

// Every position where a defining-relation rewrite applies, as
// (kind, position) pairs.  Kinds: 0 commute, 1 braid, 2 four-term,
// 3 cancel.  Insertion is always possible and handled separately.
inline std::vector<std::pair<int, std::size_t>> rewrite_sites(const std::vector<BraidLetter>& v) {
  std::vector<std::pair<int, std::size_t>> sites;
  for (std::size_t p = 0; p + 1 < v.size(); ++p) {
    if (commute(v[p].index, v[p + 1].index)) sites.emplace_back(0, p);
    if (v[p] == v[p + 1].inverse()) sites.emplace_back(3, p);
  }
  for (std::size_t p = 0; p + 2 < v.size(); ++p) {
    const int i = v[p].index, j = v[p + 1].index;
    if (i >= 1 && j >= 1 && std::abs(i - j) == 1 && v[p + 2].index == i && same_sign_run(v, p, 3)) sites.emplace_back(1, p);
  }
  for (std::size_t p = 0; p + 3 < v.size(); ++p) {
    const int i = v[p].index, j = v[p + 1].index;
    if (((i == 0 && j == 1) || (i == 1 && j == 0)) && v[p + 2].index == i && v[p + 3].index == j && same_sign_run(v, p, 4))
      sites.emplace_back(2, p);
  }
  return sites;
}

}  // namespace detail

/// Applies `steps` random rewrites drawn from the defining relations
/// (far commutation, the braid relation, the four-term boundary relation,
/// and free insertion or cancellation of g g^-1).  The result represents
/// the same group element.
inline BraidWord relation_shuffle(const BraidWord& w, int steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BraidLetter> v = w.letters();
  const int n = w.strands();
  for (int s = 0; s < steps; ++s) {
    auto sites = detail::rewrite_sites(v);
    // Insertions keep the word from collapsing; they are drawn less often
    // as the word grows so lengths stay bounded in expectation.
    const double insert_p = sites.empty() ? 1.0 : 4.0 / (4.0 + static_cast<double>(v.size()));
    if (std::uniform_real_distribution<double>(0, 1)(rng) < insert_p) {
      const int idx = std::uniform_int_distribution<int>(0, n - 1)(rng);
      const int pw = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
      const auto at = std::uniform_int_distribution<std::size_t>(0, v.size())(rng);
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(at), {BraidLetter{idx, pw}, BraidLetter{idx, -pw}});
      continue;
    }
    const auto [kind, p] = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    switch (kind) {
      case 0:
        std::swap(v[p], v[p + 1]);
        break;
      case 1: {  // X_i X_j X_i -> X_j X_i X_j
        const int i = v[p].index, j = v[p + 1].index;
        v[p].index = j;
        v[p + 1].index = i;
        v[p + 2].index = j;
        break;
      }
      case 2: {  // X_0 X_1 X_0 X_1 <-> X_1 X_0 X_1 X_0
        for (std::size_t k = 0; k < 4; ++k) v[p + k].index = 1 - v[p + k].index;
        break;
      }
      case 3:
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(p), v.begin() + static_cast<std::ptrdiff_t>(p + 2));
        break;
      default:
        break;
    }
  }
  return BraidWord(n, std::move(v));
}

/// Uniformly random word of the given length.
inline BraidWord random_braid(int strands, std::size_t length, std::mt19937_64& rng) {
  BraidWord w(strands);
  for (std::size_t k = 0; k < length; ++k) {
    const int idx = std::uniform_int_distribution<int>(0, strands - 1)(rng);
    w.push_back({idx, std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
  }
  return w;
}

}  // namespace bcox
