#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "bcox/links.hpp"
#include "support.hpp"

using namespace bcox;
using test::num;
using test::var;

namespace {

const KauffmanInvariant& kauffman() {
  static const KauffmanInvariant k(standard_registry());
  return k;
}

const JonesInvariant& jones() {
  static const JonesInvariant j(standard_registry());
  return j;
}

// Kauffman bracket of the ordinary closure of a Y-free word, by summing
// over all 2^crossings smoothings and counting loops with union-find.
// X_i^{+1} smooths to the identity with weight A and to the cap-cup with
// weight A^-1; X_i^{-1} the other way round.  Returns the Jones-normalized
// value (-A^3)^-writhe <L> / <O>.
RationalFn bracket_oracle(const BraidWord& w) {
  const int n = w.strands(), len = static_cast<int>(w.size());
  const RationalFn A = var("A");
  const RationalFn delta = -(A * A) - A.pow(-2);
  RationalFn sum = num(0);
  auto id = [n](int level, int strand) { return level * n + strand; };
  for (std::uint32_t state = 0; state < (1u << len); ++state) {
    std::vector<int> parent(static_cast<std::size_t>((len + 1) * n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
    };
    auto join = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    int a_count = 0;
    for (int k = 0; k < len; ++k) {
      const BraidLetter l = w.letters()[static_cast<std::size_t>(k)];
      const int i = l.index - 1;  // 0-based left strand
      const bool cup = (state >> k) & 1u;
      a_count += (cup == (l.power < 0)) ? 1 : -1;
      for (int j = 0; j < n; ++j)
        if (j != i && j != i + 1) join(id(k, j), id(k + 1, j));
      if (cup) {
        join(id(k, i), id(k, i + 1));
        join(id(k + 1, i), id(k + 1, i + 1));
      } else {
        join(id(k, i), id(k + 1, i));
        join(id(k, i + 1), id(k + 1, i + 1));
      }
    }
    for (int j = 0; j < n; ++j) join(id(len, j), id(0, j));
    int loops = 0;
    for (int x = 0; x < (len + 1) * n; ++x) loops += find(x) == x;
    sum = sum + A.pow(a_count) * delta.pow(loops - 1);
  }
  return (-(A.pow(3))).pow(-exponent_sum(w)) * sum;
}

}  // namespace

TEST(Links, KauffmanNormalization) {
  EXPECT_TRUE(rf_equal(kauffman()(BraidWord(1)), num(1)));
  EXPECT_TRUE(rf_equal(kauffman()(parse_braid("1", 2)), num(1)));
  EXPECT_TRUE(rf_equal(kauffman()(parse_braid("-1", 2)), num(1)));
  EXPECT_TRUE(rf_equal(kauffman()(parse_braid("1 -2", 3)), num(1)));
  // Two-component unlink.
  EXPECT_TRUE(rf_equal(kauffman()(BraidWord(2)), kauffman().parameters().x()));
}

// With three-strand stabilization imposed, tr(Y) is fixed by the relations
// rather than being free.
TEST(Links, KauffmanAxisLoop) {
  const RationalFn q = var("q"), q1 = var("q1"), lambda = var("lambda");
  EXPECT_TRUE(rf_equal(kauffman()(parse_braid("y", 1)), q * q1 / (q - lambda)));
}

TEST(Links, KauffmanStrandBound) {
  EXPECT_THROW(kauffman()(BraidWord(4)), CapabilityError);
}

TEST(Links, KauffmanFourTerm) {
  EXPECT_TRUE(rf_equal(kauffman()(parse_braid("y 1 y 1", 2)), kauffman()(parse_braid("1 y 1 y", 2))));
}

TEST(Links, JonesEmptyWord) {
  EXPECT_TRUE(rf_equal(jones()(BraidWord(1)), num(1)));
  EXPECT_THROW(jones()(BraidWord(7)), CapabilityError);
}

TEST(Links, JonesTrefoil) {
  const RationalFn A = var("A");
  EXPECT_TRUE(rf_equal(jones()(parse_braid("1 1 1", 2)), A.pow(-4) + A.pow(-12) - A.pow(-16)));
}

TEST(Links, JonesMatchesBracketStateSum) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 40; ++k) {
    const int n = 2 + k % 4;
    BraidWord w(n);
    for (int m = 0; m < 7; ++m)
      w.push_back({std::uniform_int_distribution<int>(1, n - 1)(rng), std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
    ASSERT_TRUE(rf_equal(jones()(w), bracket_oracle(w))) << w.to_string();
  }
  EXPECT_TRUE(rf_equal(jones()(parse_braid("1 -2 1 -2", 3)), bracket_oracle(parse_braid("1 -2 1 -2", 3))));
}

TEST(Links, JonesRejectsBadSkein) {
  SkeinParameters s = jones().skein();
  s.cp = s.cp + num(1);
  EXPECT_THROW(JonesInvariant{s}, UsageError);
}

TEST(Links, InvarianceSuite) {
  InvarianceOptions opt;
  opt.trials = 60;
  opt.seed = 2026;
  const auto rep = invariance_suite(opt, kauffman(), jones());
  EXPECT_EQ(rep.trials, 60);
  EXPECT_EQ(rep.kauffman_passes, 60);
  EXPECT_EQ(rep.jones_passes, 60);
  EXPECT_FALSE(rep.first_counterexample().has_value());
}

TEST(Links, InvarianceSuiteIsDeterministicAcrossThreads) {
  InvarianceOptions opt;
  opt.trials = 24;
  opt.seed = 5;
  const auto one = invariance_suite(opt, kauffman(), jones());
  opt.jobs = 3;
  const auto three = invariance_suite(opt, kauffman(), jones());
  ASSERT_EQ(one.results.size(), three.results.size());
  for (std::size_t i = 0; i < one.results.size(); ++i) {
    EXPECT_EQ(one.results[i].original, three.results[i].original);
    EXPECT_EQ(one.results[i].moved, three.results[i].moved);
  }
}

TEST(Links, ZeroTrials) {
  InvarianceOptions opt;
  opt.trials = 0;
  const auto rep = invariance_suite(opt, kauffman(), jones());
  EXPECT_EQ(rep.trials, 0);
  EXPECT_TRUE(rep.results.empty());
}

TEST(Links, NegativeControlChangesTheInvariants) {
  InvarianceOptions opt;
  opt.trials = 20;
  opt.seed = 77;
  opt.negative_control = true;
  const auto rep = invariance_suite(opt, kauffman(), jones());
  EXPECT_LT(rep.kauffman_passes, 3);
  EXPECT_LT(rep.jones_passes, 3);
  EXPECT_TRUE(rep.first_counterexample().has_value());
}
