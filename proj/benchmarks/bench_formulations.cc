#include <benchmark/benchmark.h>

#include <random>

#include "qubols/m2sp.hpp"
#include "qubols/partition.hpp"
#include "qubols/qap.hpp"

using namespace qubols;

namespace {

QapInstance random_qap(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<long long> entry(0, 99);
  std::vector<Rational> flow(n * n), dist(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    flow[i] = Rational(entry(g));
    dist[i] = Rational(entry(g));
  }
  return QapInstance(n, std::move(flow), std::move(dist));
}

void BM_GreedyPairScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QapInstance inst = random_qap(n, 11);
  Permutation pi = Permutation::identity(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_select_pairs(inst, pi, n / 2).pairs.size());
}
BENCHMARK(BM_GreedyPairScan)->Arg(50)->Arg(100);

void BM_BuildExchangeQubo(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QapInstance inst = random_qap(n, 12);
  Permutation pi = Permutation::identity(n);
  ExchangePlan plan = greedy_select_pairs(inst, pi, n / 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_uqubols_qubo(inst, plan).num_quadratic());
}
BENCHMARK(BM_BuildExchangeQubo)->Arg(50)->Arg(100);

void BM_BuildRestrictedQubo(benchmark::State& state) {
  QapInstance inst = random_qap(50, 13);
  Permutation pi = Permutation::identity(50);
  const auto k = static_cast<std::size_t>(state.range(0));
  SubsetFamily family = make_subset_family(inst, pi, k, 1);
  for (auto _ : state) {
    QuboModel objective = build_cqubols_objective(inst, family, pi);
    benchmark::DoNotOptimize(objective.num_quadratic());
  }
}
BENCHMARK(BM_BuildRestrictedQubo)->Arg(8)->Arg(32);

void BM_SpectralOrdering(benchmark::State& state) {
  WeightedGraph g = circular_ladder_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_ordering(g).size());
}
BENCHMARK(BM_SpectralOrdering)->Arg(60)->Arg(200);

void BM_SelectSwapMatching(benchmark::State& state) {
  std::mt19937_64 g(14);
  WeightedGraph graph = gnp_random_graph(static_cast<std::size_t>(state.range(0)), 0.1, g);
  Partition p = Partition::random_balanced(graph.num_vertices(), 4, g);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        select_swap_matching(graph, p, graph.num_vertices() / 2).pairs.size());
}
BENCHMARK(BM_SelectSwapMatching)->Arg(120)->Arg(240);

}  // namespace
