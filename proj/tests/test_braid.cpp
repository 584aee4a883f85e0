#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bcox/braid.hpp"

using namespace bcox;

TEST(Braid, ParseLetters) {
  const BraidWord w = parse_braid("y 1 -1", 2);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.letters()[0], (BraidLetter{0, 1}));
  EXPECT_EQ(w.letters()[1], (BraidLetter{1, 1}));
  EXPECT_EQ(w.letters()[2], (BraidLetter{1, -1}));
  EXPECT_EQ(w.to_string(), "y 1 -1");
  EXPECT_EQ(parse_braid("y'", 1).letters()[0], (BraidLetter{0, -1}));
}

TEST(Braid, ParseErrorsCarryTokenPosition) {
  try {
    parse_braid("1 2 3", 3);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_braid("x", 2), ParseError);
  EXPECT_THROW(parse_braid("0", 2), ParseError);
  EXPECT_THROW(parse_braid("1.5", 3), ParseError);
}

TEST(Braid, FreeReduce) {
  EXPECT_TRUE(free_reduce(parse_braid("y y y' y'", 1)).empty());
  EXPECT_TRUE(free_reduce(parse_braid("1 -1", 2)).empty());
  const BraidWord w = parse_braid("y 1", 2);
  EXPECT_EQ(free_reduce(w), w);
  EXPECT_EQ(free_reduce(parse_braid("2 1 y y' -1 1", 3)).to_string(), "2 1");
}

TEST(Braid, ExponentSum) {
  EXPECT_EQ(exponent_sum(parse_braid("1 2 -1", 3)), 1);
  EXPECT_EQ(exponent_sum(parse_braid("y", 1)), 0);
  EXPECT_EQ(exponent_sum(parse_braid("y 1 y 1", 2)), 2);
  EXPECT_EQ(exponent_sum(parse_braid("y' -1", 2)), -1);
}

TEST(Braid, SignedPermutationImage) {
  EXPECT_TRUE(signed_permutation(BraidWord(3)).is_identity());
  const SignedPermutation y = signed_permutation(parse_braid("y", 2));
  EXPECT_EQ(y.images(), (std::vector<int>{-1, 2}));
  EXPECT_EQ(y.to_string(), "(-1, 2)");
  EXPECT_EQ(signed_permutation(parse_braid("y'", 2)), y);
}

// The assignment Y -> sign flip of strand 1, X_k -> transposition must
// satisfy every defining relation before the group count means anything.
TEST(Braid, SignedPermutationsSatisfyTheRelations) {
  for (int n = 1; n <= 5; ++n) {
    auto g = [n](int i) { return SignedPermutation::generator(n, i); };
    for (int i = 0; i < n; ++i) EXPECT_TRUE((g(i) * g(i)).is_identity());
    for (int i = 1; i + 1 < n; ++i) EXPECT_EQ(g(i) * g(i + 1) * g(i), g(i + 1) * g(i) * g(i + 1));
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) EXPECT_EQ(g(i) * g(j), g(j) * g(i));
    if (n >= 2) {
      EXPECT_EQ(g(0) * g(1) * g(0) * g(1), g(1) * g(0) * g(1) * g(0));
      const SignedPermutation yx = g(0) * g(1);
      EXPECT_TRUE((yx * yx * yx * yx).is_identity());
      EXPECT_FALSE((yx * yx).is_identity());
    }
  }
}

TEST(Braid, CoxeterGroupOrders) {
  const std::size_t expected[] = {1, 2, 8, 48, 384};
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(coxeter_group_closure(n).size(), expected[n]) << n;
}

TEST(Braid, SignedPermutationValidation) {
  EXPECT_THROW(SignedPermutation(std::vector<int>{1, 1}), UsageError);
  EXPECT_THROW(SignedPermutation(std::vector<int>{0, 2}), UsageError);
  EXPECT_THROW(SignedPermutation(2) * SignedPermutation(3), UsageError);
}

TEST(Braid, MarkovMoves) {
  const BraidWord s = markov_move(BraidWord(1), MarkovMove::stabilize_pos());
  EXPECT_EQ(s.strands(), 2);
  EXPECT_EQ(s.to_string(), "1");
  const BraidWord w = parse_braid("y 1 y' -1", 2);
  EXPECT_EQ(markov_move(markov_move(w, MarkovMove::stabilize_pos()), MarkovMove::destabilize()), w);
  EXPECT_EQ(markov_move(markov_move(w, MarkovMove::stabilize_neg()), MarkovMove::destabilize()), w);
  const BraidWord by = parse_braid("1", 2);
  EXPECT_EQ(markov_move(parse_braid("y", 2), MarkovMove::conjugate(by)).to_string(), "1 y -1");
}

TEST(Braid, DestabilizePrecondition) {
  EXPECT_FALSE(can_destabilize(parse_braid("1 y", 2)));
  EXPECT_FALSE(can_destabilize(parse_braid("1 1", 2)));
  EXPECT_FALSE(can_destabilize(BraidWord(1)));
  EXPECT_FALSE(can_destabilize(parse_braid("y 2 1 -2", 3)));
  EXPECT_TRUE(can_destabilize(parse_braid("y 1 -2", 3)));
  EXPECT_THROW(markov_move(parse_braid("1 y", 2), MarkovMove::destabilize()), UsageError);
}

TEST(Braid, ShuffleWithNoStepsIsIdentity) {
  const BraidWord w = parse_braid("y 1 2 -1 y'", 3);
  EXPECT_EQ(relation_shuffle(w, 0, 99), w);
}

TEST(Braid, ShufflePreservesTheGroupImage) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const BraidWord w = random_braid(n, 8, rng);
    const BraidWord v = relation_shuffle(w, 30, rng());
    ASSERT_EQ(v.strands(), n);
    ASSERT_EQ(signed_permutation(v), signed_permutation(w));
    ASSERT_EQ(exponent_sum(v), exponent_sum(w));
  }
}

TEST(Braid, ShuffleReachesTheFourTermRewrite) {
  const BraidWord w = parse_braid("y 1 y 1", 2);
  bool found = false;
  for (std::uint64_t seed = 0; seed < 64 && !found; ++seed) found = relation_shuffle(w, 1, seed).to_string() == "1 y 1 y";
  EXPECT_TRUE(found);
}

TEST(Braid, ReadBraidFile) {
  std::istringstream a("# comment\nstrands 3\n1 y # trailing\n-2\n");
  const BraidWord w = read_braid(a);
  EXPECT_EQ(w.strands(), 3);
  EXPECT_EQ(w.to_string(), "1 y -2");

  std::istringstream b("2 1");
  EXPECT_EQ(read_braid(b).strands(), 3);

  std::istringstream c("strands 2\n1");
  EXPECT_EQ(read_braid(c, 4).strands(), 4);

  std::istringstream d("strands 2\n2");
  EXPECT_THROW(read_braid(d), ParseError);

  std::istringstream e("strands zero\n");
  EXPECT_THROW(read_braid(e), ParseError);

  std::istringstream empty("");
  const BraidWord none = read_braid(empty);
  EXPECT_EQ(none.strands(), 1);
  EXPECT_TRUE(none.empty());
}
