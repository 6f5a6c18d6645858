#include <gtest/gtest.h>

#include "oracles.hpp"
#include "utvar/errors.hpp"
#include "utvar/semidirect.hpp"

using namespace utvar;

namespace {

GElem image(const Word& w, const SemiringHandle& s, const std::string& alphabet = "ab") {
  return alpha(lambda_reduce(rho(w, 2, s)), alphabet);
}

}  // namespace

TEST(Semidirect, GoldenValues) {
  auto t = tropical();
  EXPECT_EQ(to_string(image("a", t)), "((a -> 1, b -> 0), a)");
  EXPECT_EQ(to_string(image("b", t)), "((a -> 0, b -> 1), b)");
  EXPECT_EQ(to_string(image("ab", t)), "((a -> 1, b -> a), ab)");
  EXPECT_EQ(to_string(image("aa", t)), "((a -> a+1, b -> 0), aa)");
  EXPECT_EQ(to_string(image("aa", t), true), "((a ↦ a+1, b ↦ 0), aa)");
  EXPECT_EQ(to_string(image("", t)), "((a -> 0, b -> 0), 1)");
}

TEST(Semidirect, AlphaIsAMorphismOnTheImage) {
  for (const char* sel : {"tropical", "boolean", "nat", "zmod:3"}) {
    auto s = make_semiring(sel);
    EXPECT_EQ(image("", s), GElem::identity(s, "ab"));
    for (const auto& u : oracle::words("ab", 0, 3))
      for (const auto& v : oracle::words("ab", 0, 3))
        ASSERT_EQ(g_mul(image(u, s), image(v, s)), image(u + v, s)) << sel << " " << u << "|" << v;
  }
}

TEST(Semidirect, MultiplicationIsAssociative) {
  std::mt19937_64 rng(5);
  auto s = naturals();
  auto words = oracle::words("ab", 0, 4);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int k = 0; k < 200; ++k) {
    auto x = image(words[pick(rng)], s), y = image(words[pick(rng)], s), z = image(words[pick(rng)], s);
    EXPECT_EQ(g_mul(g_mul(x, y), z), g_mul(x, g_mul(y, z)));
  }
}

TEST(Semidirect, RecoveryInvertsAlpha) {
  auto s = tropical();
  for (const auto& w : oracle::words("ab", 0, 5)) {
    auto q = lambda_reduce(rho(w, 2, s));
    EXPECT_EQ(alpha_recover(alpha(q, "ab")), q) << w;
  }
}

// Over an idempotent semiring the coordinate monoid B is a semilattice.
TEST(Semidirect, IdempotentCoordinates) {
  for (const char* sel : {"tropical", "boolean"}) {
    auto s = make_semiring(sel);
    for (const auto& w : oracle::words("ab", 0, 4)) {
      auto g = image(w, s);
      for (const auto& [c, f] : g.b) EXPECT_EQ(f + f, f);
    }
  }
  auto n = naturals();
  auto g = image("a", n);
  EXPECT_FALSE(g.b.at('a') + g.b.at('a') == g.b.at('a'));
}

TEST(Semidirect, EquivalenceIsFunctional) {
  auto b = boolean();
  // over B, a + a^2 = a as functions while the formal polynomials differ
  auto g = image("aa", b), h = image("aa", b);
  h.b.insert_or_assign('a', h.b.at('a') + FormalPoly::monomial(b, Monomial::variable({'a', 1}, 2)));
  EXPECT_FALSE(g == h);
  EXPECT_TRUE(equivalent(g, h));
}

TEST(Semidirect, AlphaRejectsOutsideTheImage) {
  auto s = tropical();
  EXPECT_THROW(alpha(rho("a", 3, s), "a"), Error);
  EXPECT_THROW(alpha(rho("aa", 2, s), "a"), NotInImage);  // a_2 survives without lambda
  EXPECT_THROW(alpha(lambda_reduce(rho("ab", 2, s)), "a"), Error);
}
