#pragma once

#include <string>
#include <string_view>

#include "qubols/driver.hpp"
#include "qubols/m2sp.hpp"
#include "qubols/partition.hpp"
#include "qubols/qap.hpp"
#include "qubols/tsp.hpp"

namespace qubols {

/// QAP adapter: pair-exchange moves. Unconstrained moves bind one bit per
/// greedy-ranked disjoint pair (min(n/2, capacity) of them); constrained
/// moves restrict the full formulation to m disjoint size-k subsets.
class QapProblem {
 public:
  using Solution = Permutation;

  explicit QapProblem(QapInstance inst) : inst_(std::move(inst)) {}
  const QapInstance& instance() const { return inst_; }

  Rational objective(const Solution& s) const { return qap_objective(inst_, s); }
  Solution random_solution(std::mt19937_64& rng) const {
    return Permutation::random(inst_.size(), rng);
  }
  Solution neighbor(const Solution& s, std::mt19937_64& rng) const;

  UnconstrainedMove<Solution> unconstrained_move(const Solution& s, const SubproblemParams& p,
                                                 std::mt19937_64& rng) const;
  ConstrainedMove<Solution> constrained_move(const Solution& s, const SubproblemParams& p,
                                             std::mt19937_64& rng) const;

  std::string serialize(const Solution& s) const { return s.str(); }
  Solution parse_solution(std::string_view text) const;

 private:
  QapInstance inst_;
};

/// Minimum 2-sum adapter: local search runs on the exact QAP reduction
/// (Laplacian flow, position-product distances); the reported objective is
/// the 2-sum itself. Supports spectral initialization.
class M2spProblem {
 public:
  using Solution = Permutation;

  explicit M2spProblem(WeightedGraph g) : graph_(std::move(g)), reduced_(m2sp_to_qap(graph_)) {}
  const WeightedGraph& graph() const { return graph_; }
  const QapInstance& reduced_qap() const { return reduced_; }

  Rational objective(const Solution& s) const { return two_sum_objective(graph_, s); }
  Solution random_solution(std::mt19937_64& rng) const {
    return Permutation::random(graph_.num_vertices(), rng);
  }
  Solution spectral_solution() const { return spectral_ordering(graph_); }
  Solution neighbor(const Solution& s, std::mt19937_64& rng) const;

  UnconstrainedMove<Solution> unconstrained_move(const Solution& s, const SubproblemParams& p,
                                                 std::mt19937_64& rng) const;
  ConstrainedMove<Solution> constrained_move(const Solution& s, const SubproblemParams& p,
                                             std::mt19937_64& rng) const;

  std::string serialize(const Solution& s) const { return s.str(); }
  Solution parse_solution(std::string_view text) const;

 private:
  WeightedGraph graph_;
  QapInstance reduced_;
};

/// TSP adapter: k-reversal moves on random segment decompositions. The move
/// model carries the internal segment weight in its offset, so sub-QUBO
/// energies are tour lengths. Constrained variants are not defined for tours.
class TspProblem {
 public:
  using Solution = Tour;

  explicit TspProblem(TspInstance inst) : inst_(std::move(inst)) {}
  const TspInstance& instance() const { return inst_; }

  Rational objective(const Solution& s) const { return tour_length(inst_, s); }
  Solution random_solution(std::mt19937_64& rng) const {
    return Tour::random(inst_.size(), rng);
  }
  Solution neighbor(const Solution& s, std::mt19937_64& rng) const;

  UnconstrainedMove<Solution> unconstrained_move(const Solution& s, const SubproblemParams& p,
                                                 std::mt19937_64& rng) const;
  ConstrainedMove<Solution> constrained_move(const Solution&, const SubproblemParams&,
                                             std::mt19937_64&) const;

  std::string serialize(const Solution& s) const { return s.str(); }
  Solution parse_solution(std::string_view text) const;

 private:
  TspInstance inst_;
};

/// Balanced K-way partition adapter: gain-ranked disjoint cross-part swaps.
/// Sub-QUBO energies are exactly twice the cut. Constrained variants are not
/// defined for partitions.
class GpProblem {
 public:
  using Solution = Partition;

  GpProblem(WeightedGraph g, std::uint32_t num_parts);
  const WeightedGraph& graph() const { return graph_; }
  std::uint32_t num_parts() const { return num_parts_; }

  Rational objective(const Solution& s) const { return cut_value(graph_, s); }
  Solution random_solution(std::mt19937_64& rng) const {
    return Partition::random_balanced(graph_.num_vertices(), num_parts_, rng);
  }
  Solution neighbor(const Solution& s, std::mt19937_64& rng) const;

  UnconstrainedMove<Solution> unconstrained_move(const Solution& s, const SubproblemParams& p,
                                                 std::mt19937_64& rng) const;
  ConstrainedMove<Solution> constrained_move(const Solution&, const SubproblemParams&,
                                             std::mt19937_64&) const;

  std::string serialize(const Solution& s) const { return s.str(); }
  Solution parse_solution(std::string_view text) const;

 private:
  WeightedGraph graph_;
  std::uint32_t num_parts_;
};

}  // namespace qubols
