#include <benchmark/benchmark.h>

#include "khtangle/algebra_a.hpp"
#include "khtangle/bimodule.hpp"
#include "khtangle/functor.hpp"
#include "khtangle/tangle.hpp"

using namespace kht;

static void BM_AInfty(benchmark::State& state) {
  const auto table = AProductTable::shipped();
  for (auto _ : state) benchmark::DoNotOptimize(verify_ainfty(table, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AInfty)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_Functor(benchmark::State& state) {
  const auto a = AProductTable::shipped();
  const auto f = FunctorTable::shipped();
  for (auto _ : state) benchmark::DoNotOptimize(verify_functor(a, f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Functor)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

static void BM_Equivalence(benchmark::State& state) {
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_equivalence(bound, bound / 2));
}
BENCHMARK(BM_Equivalence)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_CompareTwists(benchmark::State& state) {
  std::string word;
  for (int i = 0; i < state.range(0); ++i) word += i ? " x1" : "x1";
  const auto w = parse_tangle(word);
  for (auto _ : state) benchmark::DoNotOptimize(compare(w));
}
BENCHMARK(BM_CompareTwists)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_Deloop(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<TangleWord> words;
  for (int i = 0; i < 16; ++i) words.push_back(random_word(rng, static_cast<int>(state.range(0))));
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(reduce(complex_of(w)));
}
BENCHMARK(BM_Deloop)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
