#include <benchmark/benchmark.h>

#include <vector>

#include "polymax/expectation.hpp"
#include "polymax/random.hpp"

namespace {

struct Setup {
  polymax::PolymatrixGame game;
  polymax::ProductDistribution x;
};

Setup make_setup(int n, int m, const polymax::Aggregator& aggregator) {
  const std::vector<int> counts(n, m);
  Setup s{polymax::random_game(n, counts, -1.0, 1.0, aggregator, 7),
          polymax::random_product_distribution(counts, 8)};
  return s;
}

void bench_max_expectation(benchmark::State& state) {
  const Setup s = make_setup(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                             polymax::MaxAggregator{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(polymax::expected_utility(s.game, 0, s.x));
  }
}

void bench_sum_expectation(benchmark::State& state) {
  const Setup s = make_setup(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                             polymax::SumAggregator{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(polymax::expected_utility(s.game, 0, s.x));
  }
}

void bench_min_conditionals(benchmark::State& state) {
  const Setup s = make_setup(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                             polymax::MinAggregator{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(polymax::conditional_action_expectations(s.game, 0, s.x));
  }
}

}  // namespace

BENCHMARK(bench_max_expectation)
    ->Args({4, 8})
    ->Args({8, 16})
    ->Args({16, 16})
    ->Args({32, 32})
    ->Args({50, 50});
BENCHMARK(bench_sum_expectation)->Args({4, 8})->Args({16, 16})->Args({50, 50});
BENCHMARK(bench_min_conditionals)->Args({8, 16})->Args({16, 16});

BENCHMARK_MAIN();
