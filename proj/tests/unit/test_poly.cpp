#include <gtest/gtest.h>

#include <random>

#include "utvar/errors.hpp"
#include "utvar/poly.hpp"

using namespace utvar;

namespace {

Var v(char c, int vertex) { return Var{c, vertex}; }

FormalPoly var(const SemiringHandle& s, char c, int vertex, std::uint32_t e = 1) {
  return FormalPoly::monomial(s, Monomial::variable(v(c, vertex), e));
}

FormalPoly random_poly(const SemiringHandle& s, std::mt19937_64& rng) {
  FormalPoly p(s);
  std::uniform_int_distribution<int> terms(0, 4), exp(0, 2), vert(1, 3);
  const int k = terms(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<Monomial::Factor> f;
    for (char c : {'a', 'b'}) f.emplace_back(v(c, vert(rng)), exp(rng));
    p.add_term(Monomial(f), s->sample(rng));
  }
  return p;
}

Assignment random_point(const SemiringHandle& s, std::mt19937_64& rng) {
  Assignment x;
  for (int vertex = 1; vertex <= 3; ++vertex)
    for (char c : {'a', 'b'}) x.emplace(v(c, vertex), s->sample(rng));
  return x;
}

}  // namespace

TEST(Poly, ArithmeticExamples) {
  auto t = tropical();
  auto lhs = (var(t, 'a', 1) + var(t, 'a', 2)) * var(t, 'b', 1);
  EXPECT_EQ(to_string(lhs), "a_1*b_1 + b_1*a_2");
  EXPECT_EQ(lhs, var(t, 'a', 1) * var(t, 'b', 1) + var(t, 'a', 2) * var(t, 'b', 1));

  auto b = boolean();
  EXPECT_EQ(var(b, 'x', 1) + var(b, 'x', 1), var(b, 'x', 1));
  EXPECT_EQ(var(t, 'a', 1) * var(t, 'a', 1), var(t, 'a', 1, 2));
  EXPECT_EQ(to_string(var(t, 'a', 1, 2)), "a_1^2");

  auto n = naturals();
  auto two_x = var(n, 'x', 1) + var(n, 'x', 1);
  EXPECT_EQ(to_string(two_x), "2*x_1");
  auto z2 = zmod(2);
  EXPECT_TRUE((var(z2, 'x', 1) + var(z2, 'x', 1)).is_zero());
}

TEST(Poly, Evaluate) {
  auto t = tropical();
  Assignment x{{v('a', 1), TropicalVal{Rational(2)}}, {v('b', 1), TropicalVal{Rational(3)}}};
  EXPECT_EQ(evaluate(var(t, 'a', 1) + var(t, 'b', 1), x), Elem(TropicalVal{Rational(3)}));

  auto b = boolean();
  Assignment y{{v('x', 1), BoolVal{true}}, {v('y', 1), BoolVal{false}}};
  EXPECT_EQ(evaluate(var(b, 'x', 1) * var(b, 'y', 1), y), Elem(BoolVal{false}));

  auto n = naturals();
  auto p = var(n, 'x', 1, 2) + FormalPoly::constant(n, n->one());
  EXPECT_EQ(evaluate(p, {{v('x', 1), NatVal{Natural(2)}}}), Elem(NatVal{Natural(5)}));
  EXPECT_THROW(evaluate(p, {}), Error);
}

TEST(Poly, Delta) {
  auto t = tropical();
  auto ab3 = var(t, 'a', 3) * var(t, 'b', 3);
  EXPECT_EQ(delta(ab3, 3), FormalPoly::constant(t, t->one()));
  auto ab1 = var(t, 'a', 1) * var(t, 'b', 1);
  EXPECT_EQ(delta(ab1, 3), ab1);
  EXPECT_EQ(delta(var(t, 'a', 3) + var(t, 'a', 2), 3), var(t, 'a', 2) + FormalPoly::constant(t, t->one()));
  auto n = naturals();
  EXPECT_EQ(to_string(delta(var(n, 'a', 3) + FormalPoly::constant(n, n->one()), 3)), "2");
}

TEST(Poly, Abelianize) {
  EXPECT_EQ(to_string(abelianize("abba", 1)), "a_1^2*b_1^2");
  EXPECT_TRUE(abelianize("", 2).is_one());
  EXPECT_EQ(abelianize("a", 3), Monomial::variable(v('a', 3)));
}

TEST(Poly, MismatchedSemiringsThrow) {
  EXPECT_THROW(var(tropical(), 'a', 1) + var(boolean(), 'a', 1), CarrierMismatch);
  EXPECT_THROW(var(tropical(), 'a', 1) * var(naturals(), 'a', 1), CarrierMismatch);
}

TEST(Poly, RingLawsAndMorphismsOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (const char* sel : {"tropical", "boolean", "nat", "zmod:3", "interval"}) {
    auto s = make_semiring(sel);
    for (int k = 0; k < 200; ++k) {
      auto p = random_poly(s, rng), q = random_poly(s, rng), r = random_poly(s, rng);
      EXPECT_EQ(p * q, q * p);
      EXPECT_EQ((p * q) * r, p * (q * r));
      EXPECT_EQ(p * (q + r), p * q + p * r);
      EXPECT_EQ(p + p == p, s->idempotent() || p.is_zero());
      auto x = random_point(s, rng);
      EXPECT_EQ(evaluate(p + q, x), s->add(evaluate(p, x), evaluate(q, x)));
      EXPECT_EQ(evaluate(p * q, x), s->mul(evaluate(p, x), evaluate(q, x)));
      EXPECT_EQ(delta(p * q, 3), delta(p, 3) * delta(q, 3));
      EXPECT_EQ(delta(p + q, 3), delta(p, 3) + delta(q, 3));
    }
  }
}

TEST(Poly, CountPolyMapsThroughNat) {
  CountPoly c;
  c.add_term(abelianize("ab", 1), 3);
  c.add_term(Monomial{}, 2);
  EXPECT_EQ(to_string(c), "3*a_1*b_1 + 2");
  EXPECT_EQ(c.total_count(), 5u);
  auto z3 = zmod(3);
  EXPECT_EQ(FormalPoly::from_counts(z3, c).size(), 1u);  // 3 = 0 in Z_3
  EXPECT_EQ(to_string(FormalPoly::from_counts(tropical(), c)), "a_1*b_1 + 1");
}
