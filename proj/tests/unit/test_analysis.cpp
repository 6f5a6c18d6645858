#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "utvar/analysis.hpp"
#include "utvar/errors.hpp"

using namespace utvar;

namespace {

// Size of the free monoid of the given rank in the variety generated by
// UT_n(S), as the number of distinct word functions (UT_n(S))^rank -> UT_n(S).
std::size_t brute_free_size(const Semiring& s, int n, int rank) {
  const auto mats = oracle::all_upper(s, n);
  std::vector<std::vector<std::size_t>> tuples{{}};
  for (int r = 0; r < rank; ++r) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : tuples)
      for (std::size_t k = 0; k < mats.size(); ++k) {
        next.push_back(t);
        next.back().push_back(k);
      }
    tuples = std::move(next);
  }
  oracle::Mat id{std::vector<Elem>(static_cast<std::size_t>(n) * n, s.zero())};
  for (int i = 0; i < n; ++i) id.a[i * n + i] = s.one();
  auto sig = [&](const std::vector<oracle::Mat>& f) {
    std::string out;
    for (const auto& m : f)
      for (const auto& e : m.a) out += s.format(e) + ",";
    return out;
  };
  std::vector<std::vector<oracle::Mat>> frontier{std::vector<oracle::Mat>(tuples.size(), id)};
  std::set<std::string> seen{sig(frontier[0])};
  while (!frontier.empty()) {
    std::vector<std::vector<oracle::Mat>> next;
    for (const auto& f : frontier)
      for (int g = 0; g < rank; ++g) {
        std::vector<oracle::Mat> h(f.size());
        for (std::size_t t = 0; t < tuples.size(); ++t) h[t] = oracle::mat_mul(s, n, f[t], mats[tuples[t][g]]);
        if (seen.insert(sig(h)).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST(Analysis, TorsionSearch) {
  auto b = torsion_search(boolean());
  EXPECT_TRUE(b.found);
  EXPECT_EQ(std::pair(b.i, b.j), std::pair(1u, 2u));
  auto z3 = torsion_search(zmod(3));
  EXPECT_EQ(std::pair(z3.i, z3.j), std::pair(1u, 3u));
  auto z7 = torsion_search(zmod(7));
  EXPECT_EQ(std::pair(z7.i, z7.j), std::pair(1u, 7u));
  for (const char* sel : {"tropical", "nat", "interval", "freeidpt:2"}) {
    auto t = torsion_search(make_semiring(sel), 6);
    EXPECT_FALSE(t.found) << sel;
    EXPECT_EQ(t.falsifiers.size(), 15u);
  }
}

TEST(Analysis, TorsionAgreesWithElementwiseSearch) {
  for (const char* sel : {"boolean", "zmod:2", "zmod:3", "zmod:5"}) {
    auto s = make_semiring(sel);
    auto t = torsion_search(s);
    auto m = multiplicative_torsion(*s);
    ASSERT_TRUE(m);
    EXPECT_EQ(std::pair(t.i, t.j), *m) << sel;
  }
}

TEST(Analysis, FinitenessReports) {
  auto r = local_finiteness_report(boolean(), 2);
  EXPECT_EQ(r.verdict, Finiteness::LocallyFinite);
  EXPECT_EQ(r.summary(), "torsion (1,2); locally finite");
  EXPECT_EQ(r.certified, "(iii)");

  auto z = local_finiteness_report(zmod(2), 3);
  EXPECT_EQ(z.summary(), "torsion (1,2); locally finite");

  // torsion beyond the search bound is still found for finite carriers
  auto z13 = local_finiteness_report(zmod(13), 1, 5);
  EXPECT_EQ(z13.verdict, Finiteness::LocallyFinite);
  EXPECT_EQ(std::pair(z13.torsion.i, z13.torsion.j), std::pair(1u, 13u));

  for (const char* sel : {"tropical", "nat", "interval", "freeidpt:1"}) {
    auto s = make_semiring(sel);
    auto t = local_finiteness_report(s, 2);
    EXPECT_EQ(t.verdict, Finiteness::NotLocallyFinite) << sel;
    EXPECT_EQ(t.summary(), "no torsion identity up to 12; not locally finite for any n ≥ 1");
    EXPECT_FALSE(t.falsifier_family.empty());
    ASSERT_TRUE(t.distinct_powers);
    EXPECT_EQ(*t.distinct_powers, 13u);
    auto j = nlohmann::json::parse(t.to_json());
    EXPECT_EQ(j["verdict"], "not locally finite");
    EXPECT_TRUE(j["torsion"].is_null());
  }
}

TEST(Analysis, FreeMonoidSizesMatchBruteForce) {
  for (const char* sel : {"boolean", "zmod:2"}) {
    auto s = make_semiring(sel);
    for (int n = 1; n <= 3; ++n) {
      auto t = enumerate_free(n, s, 1, 1000);
      EXPECT_EQ(t.size(), oracle::distinct_power_functions(*s, n, 64)) << sel << " n=" << n;
    }
    for (int n = 1; n <= 2; ++n)
      EXPECT_EQ(enumerate_free(n, s, 2, 10000).size(), brute_free_size(*s, n, 2)) << sel << " n=" << n;
  }
  EXPECT_EQ(enumerate_free(2, boolean(), 2, 1000).size(), 19u);
  EXPECT_EQ(enumerate_free(2, boolean(), 2, 1000, false).size(), 18u);
}

TEST(Analysis, CayleyTableIsConsistent) {
  auto t = enumerate_free(2, boolean(), 2, 1000);
  ASSERT_EQ(t.table.size(), t.size());
  EXPECT_EQ(t.words[0], "");
  for (std::size_t e = 0; e < t.size(); ++e)
    for (std::size_t g = 0; g < 2; ++g) {
      auto target = t.table[e][g];
      ASSERT_LT(target, t.size());
      auto lhs = free_elem(t.words[e] + t.alphabet[g], 2, boolean(), t.alphabet);
      auto rhs = free_elem(t.words[target], 2, boolean(), t.alphabet);
      EXPECT_TRUE(free_eq(lhs, rhs));
    }
  auto csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "element,word,a,b");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 20);
  auto j = nlohmann::json::parse(t.to_json());
  EXPECT_EQ(j["size"], 19);
  EXPECT_THROW(enumerate_free(2, tropical(), 1, 50), LimitExceeded);
}

TEST(Analysis, QuiverAlgebraClosure) {
  auto s = boolean();
  EXPECT_EQ(qa_closure({rho("a", 2, s), rho("b", 2, s)}, 1000),
            enumerate_free(2, s, 2, 1000, false).size());
  // Over B the lambda images collapse: delta(a_1 + a_2) = a_1 + 1 = 1 as a
  // function, so lambda(rho(aa)) = lambda(rho(a)) while rho(aa) != rho(a).
  std::vector<QAElem> lambdas{lambda_reduce(rho("a", 2, s)), lambda_reduce(rho("b", 2, s))};
  EXPECT_EQ(qa_closure(lambdas, 1000), 4u);
  EXPECT_TRUE(free_eq(make_free_elem(lambda_reduce(rho("aa", 2, s)), "a"),
                      make_free_elem(lambda_reduce(rho("a", 2, s)), "a")));
  EXPECT_FALSE(free_eq(free_elem("aa", 2, s), free_elem("a", 2, s)));
  EXPECT_THROW(qa_closure({rho("a", 2, tropical())}, 30), LimitExceeded);
}

TEST(Analysis, MultiplicativeIdentitiesGiveTorsion) {
  struct Case {
    const char* semiring;
    const char* identity;
  };
  for (const auto& c : {Case{"boolean", "xxy = xy"}, Case{"zmod:3", "xxx = x"}, Case{"zmod:2", "xyx = xy"},
                        Case{"zmod:5", "xxxxxy = xy"}}) {
    auto s = make_semiring(c.semiring);
    auto id = Identity::parse(c.identity);
    ASSERT_TRUE(multiplicative_identity_holds(id, s)) << c.identity;
    auto t = torsion_from_identity(id);
    ASSERT_TRUE(t) << c.identity;
    EXPECT_LT(t->first, t->second);
    const Var x{'x', 1};
    EXPECT_TRUE(func_equal(FormalPoly::monomial(s, Monomial::variable(x, t->first)),
                           FormalPoly::monomial(s, Monomial::variable(x, t->second)))
                    .equal)
        << c.semiring << " " << c.identity;
  }
  EXPECT_FALSE(multiplicative_identity_holds(Identity::parse("xx = x"), zmod(3)));
  EXPECT_FALSE(torsion_from_identity(Identity::parse("xy = yx")));
}

TEST(Analysis, BicyclicProduct) {
  EXPECT_EQ(bicyclic_mul({2, 1}, {3, 4}), (BicyclicElem{4, 4}));
  for (std::uint64_t i = 0; i <= 5; ++i)
    for (std::uint64_t j = 0; j <= 5; ++j)
      for (std::uint64_t k = 0; k <= 5; ++k)
        for (std::uint64_t l = 0; l <= 5; ++l) {
          auto [a, b] = oracle::bicyclic_rewrite(i, j, k, l);
          EXPECT_EQ(bicyclic_mul({i, j}, {k, l}), (BicyclicElem{a, b}));
        }
}

TEST(Analysis, BicyclicEmbedding) {
  auto check = verify_embedding(12);
  EXPECT_TRUE(check.ok()) << check.failure;
  EXPECT_EQ(check.products_checked, 13u * 13u * 13u * 13u);
  EXPECT_EQ(to_string(bicyclic_embed({2, 1})), "[[1, 3], [-inf, -1]]");
}

TEST(Analysis, AdjanHoldsInTheBicyclicMonoid) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> d(0, 30);
  auto eval = [](const Word& w, BicyclicElem x, BicyclicElem y) {
    BicyclicElem acc;
    for (char c : w) acc = bicyclic_mul(acc, c == 'x' ? x : y);
    return acc;
  };
  const auto id = adjan_identity();
  for (int k = 0; k < 10000; ++k) {
    BicyclicElem x{d(rng), d(rng)}, y{d(rng), d(rng)};
    ASSERT_EQ(eval(id.lhs, x, y), eval(id.rhs, x, y));
  }
  // and a shorter identity fails
  EXPECT_NE(eval("xy", {0, 1}, {1, 0}), eval("yx", {0, 1}, {1, 0}));
}

TEST(Analysis, PrefixAbelianization) {
  EXPECT_EQ(to_string(prefix_abelianization_embed("ab")), "({a, ab}, ab)");
  EXPECT_THROW(prefix_abelianization_embed(""), Error);
  for (const auto& u : oracle::words("ab", 1, 4))
    for (const auto& v : oracle::words("ab", 1, 3))
      EXPECT_EQ(h_mul(prefix_abelianization_embed(u), prefix_abelianization_embed(v)),
                prefix_abelianization_embed(u + v));
  // the free semigroup embeds: distinct words have distinct images
  std::set<std::string> images;
  auto ws = oracle::words("ab", 1, 6);
  for (const auto& w : ws) images.insert(to_string(prefix_abelianization_embed(w)));
  EXPECT_EQ(images.size(), ws.size());
}
