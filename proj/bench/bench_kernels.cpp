#include <benchmark/benchmark.h>

#include "randnil/experiments.hpp"
#include "randnil/oracle.hpp"

using namespace randnil;

namespace {

TrialOptions abelian_only() {
  TrialOptions o;
  o.abelian = true;
  return o;
}

TrialOptions full_step_only() {
  TrialOptions o;
  o.full_step = true;
  return o;
}

// args: n, ell, trials
void BM_TrialsSerial(benchmark::State& state) {
  const auto o = state.range(0) <= 16 ? full_step_only() : abelian_only();
  for (auto _ : state)
    benchmark::DoNotOptimize(run_trials_serial(static_cast<int>(state.range(0)), state.range(1), state.range(2), 7, o));
  state.SetItemsProcessed(state.iterations() * state.range(2));
}

void BM_TrialsParallel(benchmark::State& state) {
  const auto o = state.range(0) <= 16 ? full_step_only() : abelian_only();
  for (auto _ : state)
    benchmark::DoNotOptimize(run_trials(static_cast<int>(state.range(0)), state.range(1), state.range(2), 7, o));
  state.SetItemsProcessed(state.iterations() * state.range(2));
}

void BM_OracleSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_all_serial(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
}

void BM_OracleParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_all(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Args({2500, 50, 2000})->Args({10, 1000, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Args({2500, 50, 2000})->Args({10, 1000, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Args({3, 2})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Args({3, 2})->Args({4, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
