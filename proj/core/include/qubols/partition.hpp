#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qubols/graph.hpp"
#include "qubols/qubo.hpp"

namespace qubols {

/// K-way vertex assignment. Balanced construction enforces equal part sizes;
/// pairwise swaps preserve that, so balanced stays balanced.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<std::uint32_t> assignment, std::uint32_t num_parts);

  /// Like the constructor but additionally requires |V_l| = |V|/K for all l.
  static Partition balanced(std::vector<std::uint32_t> assignment, std::uint32_t num_parts);

  /// Vertices shuffled and dealt into K equal parts; requires K | n.
  static Partition random_balanced(std::size_t n, std::uint32_t num_parts,
                                   std::mt19937_64& rng);

  std::size_t size() const { return assignment_.size(); }
  std::uint32_t num_parts() const { return num_parts_; }
  std::uint32_t part(std::size_t u) const { return assignment_[u]; }
  const std::vector<std::uint32_t>& assignment() const { return assignment_; }

  std::vector<std::size_t> part_sizes() const;
  bool is_balanced() const;

  void swap_parts(std::size_t u, std::size_t v);

  /// One part index per vertex per line.
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> assignment_;
  std::uint32_t num_parts_ = 0;
};

/// Lines of part indices, one vertex per line; K = max index + 1 unless a
/// larger K is forced.
Partition parse_partition(std::string_view text, std::uint32_t min_parts = 0);

/// Total weight of edges whose endpoints lie in different parts.
Rational cut_value(const WeightedGraph& g, const Partition& p);

/// Kernighan-Lin swap gain g_uv = D_u + D_v - 2 w_uv with D = external -
/// internal degree. Exact cut reduction for bisections; for K > 2 it is the
/// ranking heuristic (external counts all foreign parts, not just v's).
Rational kl_gain(const WeightedGraph& g, const Partition& p, std::size_t u, std::size_t v);

/// Pairwise-disjoint cross-part vertex pairs considered for swapping.
struct SwapMatching {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

/// Ranks cross-part pairs by descending gain (ties by pair order) and keeps
/// disjoint pairs up to m_max, filling capacity with non-improving pairs.
SwapMatching select_swap_matching(const WeightedGraph& g, const Partition& p,
                                  std::size_t m_max);

/// One bit per matched pair (1 = swap). Exact identity, all bit vectors:
/// energy(y) = 2 * cut_value(apply_swaps(p, matching, y)); so energy deltas
/// are twice cut deltas. Each edge's cut status depends only on its
/// endpoints' pair bits, which keeps the model quadratic and exact for any K.
QuboModel build_swap_qubo(const WeightedGraph& g, const Partition& p,
                          const SwapMatching& matching);

/// Exchanges part labels of every pair with y = 1; balance is preserved.
Partition apply_swaps(const Partition& p, const SwapMatching& matching, const BitString& y);

/// Penalized full K-way formulation over |V|*K variables x_{vl} at v*K + l.
/// Feasible balanced assignments score exactly twice the cut; penalty group
/// order is |V| vertex constraints then K balance constraints.
QuboModel full_gp_qubo(const WeightedGraph& g, std::uint32_t num_parts,
                       const PenaltyConfig& penalties);

}  // namespace qubols
