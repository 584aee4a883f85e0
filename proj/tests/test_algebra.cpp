#include <gtest/gtest.h>

#include <random>

#include "bcox/algebra.hpp"
#include "support.hpp"

using namespace bcox;
using test::num;
using test::var;

namespace {

const BasisTable& bmwB(int n) {
  static std::vector<std::unique_ptr<BasisTable>> cache;
  static const BmwParameters par = BmwParameters::symbolic(standard_registry());
  while (static_cast<int>(cache.size()) < n)
    cache.push_back(std::make_unique<BasisTable>(compute_basis(present_bmwB(static_cast<int>(cache.size()) + 1, par))));
  return *cache[static_cast<std::size_t>(n - 1)];
}

Element random_element(const BasisTable& t, std::mt19937_64& rng, int nonzero) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<std::size_t> pick(0, t.dimension() - 1);
  Element e = t.zero();
  for (int k = 0; k < nonzero; ++k) e[pick(rng)] = num(coef(rng));
  return e;
}

}  // namespace

TEST(Algebra, BmwBDimensions) {
  EXPECT_EQ(bmwB(1).dimension(), 2u);
  EXPECT_EQ(bmwB(2).dimension(), 12u);
  EXPECT_EQ(bmwB(3).dimension(), 120u);
  EXPECT_EQ(bmwB(1).presentation().render(bmwB(1).basis_word(1)), "Y");
}

TEST(Algebra, BmwADimensions) {
  const auto par = BmwParameters::symbolic(standard_registry());
  const BasisTable a2 = compute_basis(present_bmwA(2, par));
  EXPECT_EQ(a2.dimension(), 3u);
  EXPECT_EQ(compute_basis(present_bmwA(3, par)).dimension(), 15u);
  EXPECT_EQ(compute_basis(present_bmwA(4, par)).dimension(), 105u);
  EXPECT_THROW(present_bmwA(1, par), UsageError);
}

TEST(Algebra, HeckeDimensions) {
  const auto par = HeckeParameters::symbolic(standard_registry());
  const std::size_t expected[] = {0, 2, 8, 48, 384};
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(compute_basis(present_heckeB(n, par)).dimension(), expected[n]) << n;
}

TEST(Algebra, TlbPresentationDimensions) {
  const auto par = TlbParameters::symbolic(standard_registry());
  const std::size_t expected[] = {0, 2, 6, 20, 70};
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(compute_basis(present_tlb(n, par)).dimension(), expected[n]) << n;
}

TEST(Algebra, TrivialIdempotent) {
  Presentation p;
  p.name = "idem";
  p.strands = 1;
  p.registry = &standard_registry();
  p.generators.push_back({"g", std::nullopt});
  p.add_relation(detail::single({0, 0}, num(1)), detail::single({0}, num(1)));
  const BasisTable t = compute_basis(p);
  EXPECT_EQ(t.dimension(), 2u);
  const Element g = t.generator("g");
  EXPECT_TRUE(multiply(t, g, g) == g);
}

TEST(Algebra, RunawayClosureIsNonConfluence) {
  Presentation p;
  p.name = "free";
  p.strands = 1;
  p.registry = &standard_registry();
  p.generators.push_back({"g", std::nullopt});
  p.expected_dim = 1;
  EXPECT_THROW(compute_basis(p), NonConfluenceError);
}

TEST(Algebra, DegenerateParameters) {
  auto& reg = standard_registry();
  BmwParameters par = BmwParameters::symbolic(reg);
  par.q = num(1);
  EXPECT_THROW(present_bmwB(2, par), DegeneracyError);
  par = BmwParameters::symbolic(reg);
  par.q1 = num(0);
  EXPECT_THROW(present_bmwB(2, par), DegeneracyError);
  EXPECT_THROW(present_bmwB(4, BmwParameters::symbolic(reg)), CapabilityError);
}

TEST(Algebra, EmptyWordIsTheUnit) {
  const BasisTable& t = bmwB(2);
  EXPECT_TRUE(element_of_word(t, BraidWord(2)) == t.unit());
  EXPECT_TRUE(element_of_word(t, parse_braid("1 -1 y y'", 2)) == t.unit());
}

TEST(Algebra, YSquared) {
  const BasisTable& t = bmwB(2);
  const Element y = t.generator("Y");
  const Element expected = var("q1") * y + var("q", -1) * t.unit();
  EXPECT_TRUE(element_of_word(t, parse_braid("y y", 2)) == expected);
}

TEST(Algebra, EAbsorbsX) {
  const BasisTable& t = bmwB(2);
  const Element e = t.generator("e1"), x = t.generator("X1");
  const RationalFn lambda = var("lambda");
  EXPECT_TRUE(multiply(t, e, x) == lambda * e);
  EXPECT_TRUE(multiply(t, x, e) == lambda * e);
  const auto par = BmwParameters::symbolic(standard_registry());
  EXPECT_TRUE(multiply(t, e, e) == par.x() * e);
}

TEST(Algebra, DefiningRelationsHold) {
  auto& reg = standard_registry();
  const auto bmw = BmwParameters::symbolic(reg);
  for (int n = 1; n <= 3; ++n)
    for (const auto& rc : defining_relation_checks(bmwB(n), bmw)) EXPECT_TRUE(rc.holds()) << "bmwB" << n << ": " << rc.name;
  const auto hp = HeckeParameters::symbolic(reg);
  for (int n = 1; n <= 3; ++n) {
    const BasisTable t = compute_basis(present_heckeB(n, hp));
    for (const auto& rc : defining_relation_checks(t, hp)) EXPECT_TRUE(rc.holds()) << "heckeB" << n << ": " << rc.name;
  }
}

TEST(Algebra, MultiplicationIsAssociative) {
  std::mt19937_64 rng(11);
  for (int n : {1, 2, 3}) {
    const BasisTable& t = bmwB(n);
    const int trials = n == 3 ? 3 : 15;
    for (int k = 0; k < trials; ++k) {
      const Element a = random_element(t, rng, 3), b = random_element(t, rng, 3), c = random_element(t, rng, 3);
      ASSERT_TRUE(multiply(t, multiply(t, a, b), c) == multiply(t, a, multiply(t, b, c))) << "n=" << n << " trial " << k;
    }
  }
}

TEST(Algebra, UnitIsNeutral) {
  std::mt19937_64 rng(2);
  const BasisTable& t = bmwB(2);
  for (int k = 0; k < 10; ++k) {
    const Element a = random_element(t, rng, 4);
    EXPECT_TRUE(multiply(t, a, t.unit()) == a);
    EXPECT_TRUE(multiply(t, t.unit(), a) == a);
  }
}

TEST(Algebra, InverseGenerators) {
  const BasisTable& t = bmwB(2);
  for (const char* g : {"Y", "X1"}) {
    const int idx = t.generator_index(g);
    EXPECT_TRUE(multiply(t, t.generator(idx), t.generator_inverse(idx)) == t.unit()) << g;
  }
  EXPECT_THROW(t.generator_inverse(t.generator_index("e1")), DomainError);
  EXPECT_THROW(t.generator_index("X7"), UsageError);
}

// Words related by the defining braid relations give the same element.
TEST(Algebra, RelationShuffleKeepsTheElement) {
  std::mt19937_64 rng(5);
  const auto hp = HeckeParameters::symbolic(standard_registry());
  const BasisTable h3 = compute_basis(present_heckeB(3, hp));
  for (int k = 0; k < 20; ++k) {
    const BraidWord w = random_braid(3, 6, rng);
    const BraidWord v = relation_shuffle(w, 25, rng());
    ASSERT_TRUE(element_of_word(h3, w) == element_of_word(h3, v)) << w.to_string() << " vs " << v.to_string();
    ASSERT_TRUE(element_of_word(bmwB(3), w) == element_of_word(bmwB(3), v)) << w.to_string() << " vs " << v.to_string();
  }
}

TEST(Algebra, SpecializationMatchesSubstitution) {
  auto& reg = standard_registry();
  const BasisTable& t = bmwB(2);
  const Bindings point{{reg["q"], num(3)}, {reg["lambda"], num(5, 2)}, {reg["q1"], num(-2)}};
  const BasisTable s = t.specialize(point);
  const BraidWord w = parse_braid("y 1 y -1 1", 2);
  const Element sym = element_of_word(t, w), num_el = element_of_word(s, w);
  ASSERT_EQ(sym.size(), num_el.size());
  for (std::size_t i = 0; i < sym.size(); ++i) EXPECT_TRUE(rf_equal(substitute(sym[i], point), num_el[i])) << i;
}
