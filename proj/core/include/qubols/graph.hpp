#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qubols/rational.hpp"

namespace qubols {

/// Undirected weighted edge, canonicalized to u < v.
struct Edge {
  std::uint32_t u;
  std::uint32_t v;
  Rational weight;
};

/// Simple undirected graph with non-negative edge weights, no self-loops and
/// at most one edge per vertex pair.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const std::pair<std::uint32_t, Rational>> neighbors(std::size_t u) const {
    return {adj_.data() + adj_offsets_[u], adj_.data() + adj_offsets_[u + 1]};
  }
  std::size_t degree(std::size_t u) const { return adj_offsets_[u + 1] - adj_offsets_[u]; }
  Rational weighted_degree(std::size_t u) const;

  /// Weight of {u, v}, zero if absent. O(min degree).
  Rational weight(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<std::pair<std::uint32_t, Rational>> adj_;
};

struct EdgeListParseResult {
  WeightedGraph graph;
  std::size_t self_loops_dropped = 0;
};

/// Text lines "u v [w]" with 0-based vertices and default weight 1; '#'
/// starts a comment. Repeated unordered pairs sum their weights; self-loops
/// are dropped and counted. Vertex count is max endpoint + 1.
EdgeListParseResult parse_edge_list(std::string_view text);

std::string write_edge_list(const WeightedGraph& g);

// Generator families used by the experiment harness and tests.
WeightedGraph path_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
WeightedGraph complete_graph(std::size_t n);
/// 2 x n grid: two n-paths joined by rungs (2n vertices, 3n-2 edges).
WeightedGraph ladder_graph(std::size_t n);
/// Ladder with both paths closed into cycles (2n vertices, 3n edges).
WeightedGraph circular_ladder_graph(std::size_t n);
/// Perfect r-ary tree of the given height.
WeightedGraph balanced_tree(std::size_t branching, std::size_t height);
/// r-ary tree filled level by level up to n vertices.
WeightedGraph full_rary_tree(std::size_t branching, std::size_t n);
/// Complete multipartite graph on n vertices split into r near-equal parts.
WeightedGraph turan_graph(std::size_t n, std::size_t parts);
/// Erdos-Renyi G(n, p) with unit weights.
WeightedGraph gnp_random_graph(std::size_t n, double p, std::mt19937_64& rng);

}  // namespace qubols
