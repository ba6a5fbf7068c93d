#include <benchmark/benchmark.h>

#include <random>

#include "qubols/annealer.hpp"
#include "qubols/qubo.hpp"

using namespace qubols;

namespace {

QuboModel dense_model(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<long long> coeff(-50, 50);
  QuboBuilder b(n);
  for (std::size_t i = 0; i < n; ++i) b.add_linear(i, Rational(coeff(g)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.add_quadratic(i, j, Rational(coeff(g)));
  return b.build();
}

void BM_Evaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuboModel m = dense_model(n, 1);
  std::mt19937_64 g(2);
  BitString x = BitString::random(n, g);
  for (auto _ : state) benchmark::DoNotOptimize(m.evaluate(x));
}
BENCHMARK(BM_Evaluate)->Arg(64)->Arg(256);

void BM_DeltaFlip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuboModel m = dense_model(n, 3);
  std::mt19937_64 g(4);
  BitString x = BitString::random(n, g);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.delta_flip(x, i));
    i = (i + 1) % n;
  }
}
BENCHMARK(BM_DeltaFlip)->Arg(64)->Arg(256)->Arg(1024);

void BM_MetropolisSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuboModel m = dense_model(n, 5);
  std::mt19937_64 g(6);
  AnnealState s(m, BitString::random(n, g));
  auto rng = std::mt19937_64(7);
  for (auto _ : state) metropolis_sweep(s, 5.0, rng);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_MetropolisSweep)->Arg(64)->Arg(256)->Arg(1024);

void BM_Solve(benchmark::State& state) {
  QuboModel m = dense_model(64, 8);
  AnnealerConfig cfg;
  cfg.mc_steps = 10000;
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(solve(m, cfg).best_energy);
  }
}
BENCHMARK(BM_Solve);

void BM_BruteForce(benchmark::State& state) {
  QuboModel m = dense_model(static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve(m).best_energy);
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
