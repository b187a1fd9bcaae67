#include <benchmark/benchmark.h>

#include "qha/kernels.hpp"
#include "qha/scenarios.hpp"

namespace {

struct Fixture {
  qha::BuiltScenario scenario;
  qha::AlgebraElement x, y;
  std::vector<qha::cplx> coeffs;

  explicit Fixture(const std::string& id) : scenario(qha::build_scenario(qha::builtin(id))) {
    std::mt19937_64 rng(7);
    x = qha::random_positive(scenario.action->shape(), rng);
    y = qha::random_positive(scenario.action->shape(), rng);
    const auto& g = scenario.action->group();
    coeffs.assign(g.weights().begin(), g.weights().end());
  }
};

Fixture& fixture(int which) {
  static Fixture wh("wh:8");
  static Fixture affine("affine-wavelet:1");
  return which == 0 ? wh : affine;
}

void BM_BracketSerial(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qha::bracket_values_serial(*f.scenario.action, f.x, f.y));
}

void BM_BracketParallel(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qha::bracket_values_parallel(*f.scenario.action, f.x, f.y));
}

void BM_HaarSumSerial(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qha::haar_sum_serial(*f.scenario.action, f.coeffs, f.x));
}

void BM_HaarSumParallel(benchmark::State& state) {
  auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qha::haar_sum_parallel(*f.scenario.action, f.coeffs, f.x));
}

}  // namespace

// argument 0: wh:8 (64 nodes), 1: affine-wavelet:1
BENCHMARK(BM_BracketSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BracketParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HaarSumSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HaarSumParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
