#include <benchmark/benchmark.h>

#include <random>

#include "utvar/analysis.hpp"
#include "utvar/lp.hpp"

using namespace utvar;

static void BM_Rho(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  auto s = naturals();
  for (auto _ : state) benchmark::DoNotOptimize(rho("abbaabab", n, s));
}
BENCHMARK(BM_Rho)->DenseRange(2, 5);

static void BM_QAMul(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  auto s = naturals();
  auto x = rho("abba", n, s), y = rho("baab", n, s);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_QAMul)->DenseRange(2, 5);

static void BM_CheckAdjan(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  auto s = tropical();
  const auto id = adjan_identity();
  for (auto _ : state) benchmark::DoNotOptimize(check_identity(id, n, s));
}
BENCHMARK(BM_CheckAdjan)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ExhaustiveOracle(benchmark::State& state) {
  auto s = boolean();
  const auto id = Identity::parse("xyxy = yxyx");
  for (auto _ : state) benchmark::DoNotOptimize(oracle_check(id, 2, s));
}
BENCHMARK(BM_ExhaustiveOracle);

static void BM_TropicalFuncEqual(benchmark::State& state) {
  auto t = tropical();
  std::mt19937_64 rng(3);
  const Var vars[] = {{'x', 1}, {'y', 1}, {'z', 1}};
  auto random_poly = [&] {
    FormalPoly p(t);
    for (int k = 0; k < state.range(0); ++k) {
      std::vector<Monomial::Factor> f;
      for (const auto& v : vars) f.emplace_back(v, rng() % 4);
      p.add_term(Monomial(f), TropicalVal{Rational(static_cast<long>(rng() % 9) - 4)});
    }
    return p;
  };
  auto f = random_poly();
  auto g = canonicalize(f);
  for (auto _ : state) benchmark::DoNotOptimize(func_equal(f, g));
}
BENCHMARK(BM_TropicalFuncEqual)->Arg(4)->Arg(8)->Arg(16);

static void BM_Simplex(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  lp::Problem p;
  p.num_vars = m;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Rational> row(m);
    for (auto& c : row) c = static_cast<long>(rng() % 7);
    p.add_row(row, lp::Relation::LessEqual, static_cast<long>(10 + rng() % 20));
  }
  p.objective.assign(m, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(lp::maximize(p));
}
BENCHMARK(BM_Simplex)->RangeMultiplier(2)->Range(4, 16);

static void BM_EnumerateFree(benchmark::State& state) {
  auto s = zmod(2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_free(2, s, 2, 100000));
}
BENCHMARK(BM_EnumerateFree)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
