#include <benchmark/benchmark.h>

#include "virtmod/oracle.hpp"

using namespace virtmod;

namespace {

void BM_EnumerateSubmodules(benchmark::State& state) {
  std::vector<int> orders(static_cast<std::size_t>(state.range(0)), 2);
  oracle::FiniteModule g(orders);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::enumerate_submodules(g));
  }
}
BENCHMARK(BM_EnumerateSubmodules)->Arg(3)->Arg(4)->Arg(5);

void BM_VssBruteforce(benchmark::State& state) {
  oracle::FiniteModule g({2, 4, 8});
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::is_vss_bruteforce(g));
  }
}
BENCHMARK(BM_VssBruteforce);

void BM_QuasiInjectiveCounting(benchmark::State& state) {
  oracle::FiniteModule g({2, 2, 4, 4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::quasi_injective_by_hom_counting(g));
  }
}
BENCHMARK(BM_QuasiInjectiveCounting);

void BM_ValidateVss(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::validate("virtually_semisimple",
                         static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ValidateVss)->Arg(32)->Arg(64);

void BM_EmbedsBruteforce(benchmark::State& state) {
  oracle::FiniteModule g({2, 2, 2, 2}), h({4, 4, 2, 2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::embeds_bruteforce(g, h));
  }
}
BENCHMARK(BM_EmbedsBruteforce);

}  // namespace
