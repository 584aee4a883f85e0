#include <gtest/gtest.h>

#include <random>

#include "bcox/markov.hpp"
#include "support.hpp"

using namespace bcox;
using test::num;
using test::var;

namespace {

struct Tower {
  BmwParameters par = BmwParameters::symbolic(standard_registry());
  BasisTable b1 = compute_basis(present_bmwB(1, par));
  BasisTable b2 = compute_basis(present_bmwB(2, par));
  MarkovTrace tr2 = solve_markov_trace(b2, {&b1}, standard_registry());
};

const Tower& tower() {
  static const Tower t;
  return t;
}

Element lift(const BasisTable& to, const BasisTable& from, const Word& w) {
  return to.word_element(detail::transfer_word(w, from.presentation(), to.presentation()));
}

}  // namespace

TEST(Markov, SingleStrandHasOneFreeParameter) {
  const Tower& t = tower();
  const MarkovTrace tr1 = solve_markov_trace(t.b1, {}, standard_registry());
  ASSERT_EQ(tr1.parameters().size(), 1u);
  EXPECT_EQ(standard_registry().name(tr1.parameters()[0].first), "s_Y");
  EXPECT_TRUE(rf_equal(tr1(t.b1.unit()), num(1)));
  EXPECT_TRUE(rf_equal(tr1(t.b1.generator("Y")), RationalFn::variable(tr1.parameters()[0].first)));
}

TEST(Markov, TwoStrandFamilyIsNonempty) {
  const Tower& t = tower();
  EXPECT_EQ(t.tr2.values().size(), 12u);
  EXPECT_FALSE(t.tr2.parameters().empty());
  EXPECT_TRUE(rf_equal(t.tr2(t.b2.unit()), num(1)));
}

TEST(Markov, StabilizationRules) {
  const Tower& t = tower();
  const RationalFn x = t.par.x(), lambda = t.par.lambda;
  const int x1 = t.b2.generator_index("X1");
  for (const Word& w : t.b1.basis()) {
    const Element a = lift(t.b2, t.b1, w);
    EXPECT_TRUE(rf_equal(t.tr2(t.b2.right_multiply(a, x1)), t.tr2(a) / (x * lambda)));
    EXPECT_TRUE(rf_equal(t.tr2(t.b2.right_multiply_inverse(a, x1)), t.tr2(a) * lambda / x));
  }
}

// Derived from the two stabilization rules and the definition of e_1.
TEST(Markov, ETraceDividesByX) {
  const Tower& t = tower();
  const Element e1 = t.b2.generator("e1");
  for (const Word& w : t.b1.basis()) {
    const Element a = lift(t.b2, t.b1, w);
    EXPECT_TRUE(rf_equal(t.tr2(multiply(t.b2, a, e1)), t.tr2(a) / t.par.x())) << t.b1.presentation().render(w);
  }
}

TEST(Markov, TraceIsCentral) {
  const Tower& t = tower();
  for (std::size_t i = 0; i < t.b2.dimension(); ++i)
    for (std::size_t j = 0; j < t.b2.dimension(); ++j) {
      const Element a = t.b2.word_element(t.b2.basis_word(i)), b = t.b2.word_element(t.b2.basis_word(j));
      ASSERT_TRUE(rf_equal(t.tr2(multiply(t.b2, a, b)), t.tr2(multiply(t.b2, b, a)))) << i << "," << j;
    }
}

TEST(Markov, TraceFormIsNondegenerate) {
  const Tower& t = tower();
  auto& reg = standard_registry();
  std::vector<Variable> vars{reg["q"], reg["lambda"], reg["q1"]};
  for (const auto& [v, w] : t.tr2.parameters()) vars.push_back(v);
  std::mt19937_64 rng(42);
  EXPECT_EQ(trace_form_rank(t.tr2, random_point(vars, rng, &reg)), 12u);
}

TEST(Markov, RankNeedsAFullSpecialization) {
  const Tower& t = tower();
  auto& reg = standard_registry();
  EXPECT_THROW(trace_form_rank(t.tr2, {{reg["q"], num(2)}}), UsageError);
}

TEST(Markov, ThreeStrandTower) {
  const Tower& t = tower();
  auto& reg = standard_registry();
  const BasisTable b3 = compute_basis(present_bmwB(3, t.par));
  const MarkovTrace tr3 = solve_markov_trace(b3, {&t.b2, &t.b1}, reg);
  EXPECT_FALSE(tr3.parameters().empty());
  // Restricted to B*B_2 words, the two-strand trace is reproduced once its
  // free parameter is read off the three-strand family.
  const Element e2 = b3.generator("e2");
  for (const Word& w : t.b2.basis()) {
    const Element a = lift(b3, t.b2, w);
    ASSERT_TRUE(rf_equal(tr3(multiply(b3, a, e2)), tr3(a) / t.par.x()));
  }
  std::vector<Variable> vars{reg["q"], reg["lambda"], reg["q1"]};
  for (const auto& [v, w] : tr3.parameters()) vars.push_back(v);
  std::mt19937_64 rng(9);
  EXPECT_EQ(trace_form_rank(tr3, random_point(vars, rng, &reg)), 120u);
}

TEST(Markov, InconsistentConditionsAreReported) {
  const Tower& t = tower();
  const BasisTable b3 = compute_basis(present_bmwB(3, t.par));
  // On two strands any pair of stabilization coefficients can be met; the
  // three-strand tower pins them down.
  EXPECT_NO_THROW(solve_markov_trace(t.b2, {&t.b1}, standard_registry(), StabilizationCoefficients{num(2), num(3)}));
  EXPECT_THROW(solve_markov_trace(b3, {&t.b2, &t.b1}, standard_registry(), StabilizationCoefficients{num(2), num(3)}),
               InconsistentSystemError);
  const auto k = StabilizationCoefficients::kauffman(b3.presentation());
  EXPECT_THROW(solve_markov_trace(b3, {&t.b2, &t.b1}, standard_registry(), StabilizationCoefficients{k.negative, k.positive}),
               InconsistentSystemError);
}

TEST(Markov, AffineSystemDetectsContradictions) {
  AffineSystem sys(2, &standard_registry());
  sys.add({{0, num(1)}, {1, num(1)}}, num(1));
  sys.add({{1, num(1)}}, num(3));
  EXPECT_EQ(sys.rank(), 2u);
  const auto sol = sys.solve([](std::size_t) { return num(0); });
  EXPECT_TRUE(rf_equal(sol[0], num(-2)));
  EXPECT_TRUE(rf_equal(sol[1], num(3)));
  EXPECT_THROW(sys.add({{0, num(2)}, {1, num(2)}}, num(5)), InconsistentSystemError);
  EXPECT_NO_THROW(sys.add({{0, num(2)}, {1, num(2)}}, num(2)));
}
