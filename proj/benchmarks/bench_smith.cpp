#include <benchmark/benchmark.h>

#include <random>

#include "virtmod/smith.hpp"

using namespace virtmod;

namespace {

MatrixOverDomain random_int_matrix(std::mt19937_64& rng, std::size_t n,
                                   long long mag) {
  std::uniform_int_distribution<long long> d(-mag, mag);
  MatrixOverDomain m(RingTag::integers(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = Element::integer(Int(d(rng)));
  return m;
}

MatrixOverDomain random_fp_matrix(std::mt19937_64& rng, std::size_t n,
                                  std::uint64_t p, int deg) {
  std::uniform_int_distribution<long long> c(0, static_cast<long long>(p) - 1);
  std::uniform_int_distribution<int> d(0, deg);
  MatrixOverDomain m(RingTag::poly_over_fp(p), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> coeffs(static_cast<std::size_t>(d(rng)) + 1);
      for (auto& x : coeffs) x = c(rng);
      m.at(i, j) = Element::poly_fp(p, std::move(coeffs));
    }
  return m;
}

void BM_SnfInt(benchmark::State& state) {
  std::mt19937_64 rng(42);
  MatrixOverDomain a =
      random_int_matrix(rng, static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(a));
  }
}
BENCHMARK(BM_SnfInt)->Arg(4)->Arg(6)->Arg(8);

void BM_SnfDiagonalInt(benchmark::State& state) {
  std::mt19937_64 rng(42);
  MatrixOverDomain a =
      random_int_matrix(rng, static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_diagonal(a));
  }
}
BENCHMARK(BM_SnfDiagonalInt)->Arg(4)->Arg(6)->Arg(8);

void BM_SnfFp(benchmark::State& state) {
  std::mt19937_64 rng(42);
  MatrixOverDomain a =
      random_fp_matrix(rng, static_cast<std::size_t>(state.range(0)), 5, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(a));
  }
}
BENCHMARK(BM_SnfFp)->Arg(4)->Arg(6);

void BM_VerifySnfInt(benchmark::State& state) {
  std::mt19937_64 rng(42);
  MatrixOverDomain a =
      random_int_matrix(rng, static_cast<std::size_t>(state.range(0)), 100);
  SNFResult r = smith_normal_form(a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_snf(a, r));
  }
}
BENCHMARK(BM_VerifySnfInt)->Arg(4)->Arg(8);

}  // namespace
