// Shared test fixtures: seeded random instances and naive reference oracles.
// The oracles deliberately re-derive quantities with plain loops so they stay
// independent of the library's incremental/expanded computation paths.
#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qubols/graph.hpp"
#include "qubols/partition.hpp"
#include "qubols/qap.hpp"
#include "qubols/qubo.hpp"
#include "qubols/tsp.hpp"

namespace testsupport {

using qubols::BitString;
using qubols::QuboModel;
using qubols::Rational;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long long rand_int(std::mt19937_64& g, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(g);
}

inline QuboModel random_qubo(std::size_t n, std::mt19937_64& g, long long coeff_max = 10,
                             double density = 0.7) {
  qubols::QuboBuilder b(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  b.add_offset(Rational(rand_int(g, -coeff_max, coeff_max)));
  for (std::size_t i = 0; i < n; ++i) b.add_linear(i, Rational(rand_int(g, -coeff_max, coeff_max)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(g) < density) b.add_quadratic(i, j, Rational(rand_int(g, -coeff_max, coeff_max)));
  return b.build();
}

/// Plain double-loop evaluation over a dense coefficient matrix.
inline Rational naive_evaluate(const QuboModel& m, const BitString& x) {
  const std::size_t n = m.num_vars();
  std::vector<Rational> dense(n * n, Rational(0));
  for (const auto& t : m.quadratic_terms()) dense[t.i * n + t.j] = t.coeff;
  Rational e = m.offset();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i]) e += m.linear(i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[i] && x[j]) e += dense[i * n + j];
  }
  return e;
}

inline qubols::QapInstance random_qap(std::size_t n, std::mt19937_64& g, long long max_val = 9,
                                      bool zero_diagonal = true) {
  std::vector<Rational> flow(n * n), dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      flow[i * n + j] = Rational(i == j && zero_diagonal ? 0 : rand_int(g, 0, max_val));
      dist[i * n + j] = Rational(i == j && zero_diagonal ? 0 : rand_int(g, 0, max_val));
    }
  return qubols::QapInstance(n, std::move(flow), std::move(dist));
}

inline qubols::TspInstance random_tsp(std::size_t n, std::mt19937_64& g, long long max_val = 20) {
  std::vector<Rational> dist(n * n, Rational(0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      dist[u * n + v] = dist[v * n + u] = Rational(rand_int(g, 1, max_val));
  return qubols::TspInstance(n, std::move(dist));
}

inline qubols::WeightedGraph random_graph(std::size_t n, double p, std::mt19937_64& g,
                                          long long max_w = 3) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<qubols::Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (coin(g) < p) edges.push_back({u, v, Rational(rand_int(g, 1, max_w))});
  return qubols::WeightedGraph(n, std::move(edges));
}

/// Objective recomputed the obvious way (used against incremental deltas).
inline Rational naive_qap_objective(const qubols::QapInstance& inst,
                                    const qubols::Permutation& pi) {
  Rational total(0);
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (std::size_t j = 0; j < inst.size(); ++j)
      total += inst.flow(i, j) * inst.dist(pi(i), pi(j));
  return total;
}

/// Cut recomputed from the degree-sum identity: cut = (1/2) sum_u E_u.
inline Rational degree_sum_cut(const qubols::WeightedGraph& g, const qubols::Partition& p) {
  Rational twice(0);
  for (std::size_t u = 0; u < g.num_vertices(); ++u)
    for (const auto& [v, w] : g.neighbors(u))
      if (p.part(u) != p.part(v)) twice += w;
  return twice / Rational(2);
}

struct CoupledSwapInstance {
  qubols::WeightedGraph graph;
  qubols::Partition partition;
  std::pair<std::uint32_t, std::uint32_t> pair1;
  std::pair<std::uint32_t, std::uint32_t> pair2;
};

/// 15 vertices in 3 balanced parts. Swapping (1,5) or (3,10) alone leaves
/// the cut at 6; applying both drops it to 5 because 5 and 10 land in the
/// same part and their crossing edge stops being cut. Both pairs carry the
/// top swap gain, so greedy ranking selects exactly them.
inline CoupledSwapInstance coupled_swap_instance() {
  using qubols::Edge;
  std::vector<Edge> edges = {
      {5, 10, Rational(1)},                        // the coupling edge
      {0, 2, Rational(3)},  {2, 4, Rational(2)},   // ballast inside part 0
      {6, 7, Rational(2)},  {7, 8, Rational(2)},  {8, 9, Rational(2)},
      {11, 12, Rational(2)}, {12, 13, Rational(2)}, {13, 14, Rational(2)},
      {0, 6, Rational(1)},  {4, 9, Rational(1)},  {8, 13, Rational(1)},
      {0, 11, Rational(1)}, {9, 14, Rational(1)},  // background cut edges
  };
  qubols::WeightedGraph graph(15, std::move(edges));
  std::vector<std::uint32_t> assignment(15);
  for (std::uint32_t v = 0; v < 15; ++v) assignment[v] = v / 5;
  auto partition = qubols::Partition::balanced(std::move(assignment), 3);
  return {std::move(graph), std::move(partition), {1, 5}, {3, 10}};
}

}  // namespace testsupport
