#include <gtest/gtest.h>

#include <random>

#include "bcox/baxter.hpp"
#include "bcox/markov.hpp"
#include "support.hpp"

using namespace bcox;
using test::num;
using test::var;

namespace {

const BmwParameters& par() {
  static const BmwParameters p = BmwParameters::symbolic(standard_registry());
  return p;
}

const BasisTable& bmwA3() {
  static const BasisTable t = compute_basis(present_bmwA(3, par()));
  return t;
}

const BasisTable& bmwB2() {
  static const BasisTable t = compute_basis(present_bmwB(2, par()));
  return t;
}

const RationalFn& coefficient(const Element& e, const std::string& gen) {
  const BasisTable& t = *e.table();
  const Word w = gen.empty() ? Word{} : Word{t.generator_index(gen)};
  const auto it = std::find(t.basis().begin(), t.basis().end(), w);
  return e[static_cast<std::size_t>(it - t.basis().begin())];
}

}  // namespace

TEST(Baxter, RAtOne) {
  const Element r = baxterized_R(bmwA3(), 1, num(1));
  EXPECT_TRUE(coefficient(r, "X1").is_zero());
  EXPECT_TRUE(coefficient(r, "e1").is_zero());
  const RationalFn q = var("q"), lambda = var("lambda");
  EXPECT_TRUE(rf_equal(coefficient(r, ""), -(par().delta() * (num(1) + q / lambda))));
}

TEST(Baxter, RNeedsItsGenerators) {
  EXPECT_THROW(baxterized_R(bmwA3(), 3, var("t")), UsageError);
}

TEST(Baxter, KCoefficients) {
  const RationalFn t = var("t"), q1 = var("q1");
  const Element k = boundary_K(bmwB2(), t, num(1));
  EXPECT_TRUE(rf_equal(coefficient(k, "Y"), num(1)));
  EXPECT_TRUE(rf_equal(coefficient(k, ""), t * t * q1 / (num(1) - t * t)));

  const Element kp = boundary_K(bmwB2(), t, num(1) - t * t);
  EXPECT_TRUE(coefficient(kp, "").is_polynomial());
  EXPECT_TRUE(rf_equal(coefficient(kp, ""), t * t * q1));
}

TEST(Baxter, KWithoutQ1) {
  auto& reg = standard_registry();
  const BasisTable reduced = bmwB2().specialize({{reg["q1"], num(0)}});
  const RationalFn t = var("t"), f1 = var("f1");
  const Element k = boundary_K(reduced, t, f1);
  EXPECT_TRUE(k == f1 * reduced.generator("Y"));
}

TEST(Baxter, KPole) {
  EXPECT_THROW(boundary_K(bmwB2(), num(1), num(1)), DomainError);
  EXPECT_THROW(boundary_K(bmwB2(), num(-1), num(1)), DomainError);
  EXPECT_THROW(boundary_K(bmwA3(), var("t"), num(1)), UsageError);
}

TEST(Baxter, YangBaxter) {
  const auto r = check_ybe(bmwA3(), var("t1"), var("t2"));
  EXPECT_TRUE(r.holds) << r.basis_word << ": " << r.lhs << " vs " << r.rhs;
}

TEST(Baxter, YangBaxterInBmwB3) {
  static const BasisTable b3 = compute_basis(present_bmwB(3, par()));
  EXPECT_TRUE(check_ybe(b3, var("t1"), var("t2")).holds);
}

TEST(Baxter, YangBaxterScalarR) {
  const BasisTable& t = bmwA3();
  const auto r = check_ybe(t, var("t1"), var("t2"), [&](int, const RationalFn& s) { return (s + num(3)) * t.unit(); });
  EXPECT_TRUE(r.holds);
}

TEST(Baxter, YangBaxterNegativeControl) {
  const BasisTable& t = bmwA3();
  const auto r = check_ybe(t, var("t1"), var("t2"), [&](int i, const RationalFn& s) {
    return t.unit() + s * t.generator("X" + std::to_string(i));
  });
  EXPECT_FALSE(r.holds);
  EXPECT_GE(r.basis_index, 0);
  EXPECT_NE(r.lhs, r.rhs);
}

TEST(Baxter, Reflection) {
  const BasisTable& t = bmwB2();
  const auto one = check_re(t, var("t1"), var("t2"), [&](const RationalFn& s) { return boundary_K(t, s, num(1)); });
  EXPECT_TRUE(one.holds) << one.basis_word;
  // f1 an arbitrary function of t: here a fresh symbol times a polynomial in t.
  const auto sym = check_re(t, var("t1"), var("t2"),
                            [&](const RationalFn& s) { return boundary_K(t, s, var("f1") * (num(2) + s)); });
  EXPECT_TRUE(sym.holds) << sym.basis_word;
}

TEST(Baxter, ReflectionTrivialK) {
  const BasisTable& t = bmwB2();
  EXPECT_TRUE(check_re(t, var("t1"), var("t2"), [&](const RationalFn&) { return t.unit(); }).holds);
}

TEST(Baxter, ReflectionNegativeControl) {
  const BasisTable& t = bmwB2();
  const auto r = check_re(t, var("t1"), var("t2"),
                          [&](const RationalFn& s) { return boundary_K(t, s, num(1)) + s * t.generator("e1"); });
  EXPECT_FALSE(r.holds);
}

TEST(Baxter, RandomSpecializations) {
  auto& reg = standard_registry();
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    Bindings point = random_point({reg["q"], reg["lambda"], reg["q1"]}, rng, &reg);
    // Skip degenerate draws (delta or x vanishing).
    const RationalFn q = point[0].second, lambda = point[1].second;
    if ((q - q.inverse()).is_zero() || (num(1) - (lambda - lambda.inverse()) / (q - q.inverse())).is_zero()) continue;
    const BasisTable a3 = bmwA3().specialize(point);
    const BasisTable b2 = bmwB2().specialize(point);
    const Bindings spectral = random_point({reg["t1"], reg["t2"]}, rng, &reg);
    const RationalFn t1 = spectral[0].second, t2 = spectral[1].second;
    if (rf_equal(t1 * t1, num(1)) || rf_equal(t2 * t2, num(1))) continue;
    EXPECT_TRUE(check_ybe(a3, t1, t2).holds);
    EXPECT_TRUE(check_re(b2, t1, t2, [&](const RationalFn& s) { return boundary_K(b2, s, num(1)); }).holds);
  }
}
