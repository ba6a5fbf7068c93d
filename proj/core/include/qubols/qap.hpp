#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qubols/permutation.hpp"
#include "qubols/qubo.hpp"

namespace qubols {

/// Quadratic assignment instance: flow weights between facilities and
/// distances between locations. Objective of an assignment pi is
/// sum_{i,j} flow(i,j) * dist(pi(i), pi(j)) over ordered pairs, diagonal
/// included (the diagonal matters for Laplacian-style reductions).
class QapInstance {
 public:
  QapInstance(std::size_t n, std::vector<Rational> flow_row_major,
              std::vector<Rational> dist_row_major);

  std::size_t size() const { return n_; }
  const Rational& flow(std::size_t i, std::size_t j) const { return flow_[i * n_ + j]; }
  const Rational& dist(std::size_t k, std::size_t l) const { return dist_[k * n_ + l]; }

 private:
  std::size_t n_;
  std::vector<Rational> flow_;
  std::vector<Rational> dist_;
};

/// QAPLIB plain text: n, then n^2 flow entries row-major, then n^2 distance
/// entries, all whitespace-separated integers.
QapInstance parse_qaplib(std::string_view text);

/// Inverse of parse_qaplib for integral instances.
std::string write_qaplib(const QapInstance& inst);

Rational qap_objective(const QapInstance& inst, const Permutation& pi);

/// Objective-only QUBO over n^2 variables x_{ik} at flat index i*n + k.
QuboModel qap_objective_qubo(const QapInstance& inst);

/// Exactly-one groups of the assignment polytope: n facility rows, then n
/// location columns (the group order expected by per-constraint penalties).
std::vector<std::vector<std::uint32_t>> qap_one_hot_groups(std::size_t n);

/// Penalized formulation over n^2 variables: permutation encodings score
/// qap_objective exactly, everything else pays row/column penalties.
QuboModel full_qubo(const QapInstance& inst, const PenaltyConfig& penalties);

/// Objective change from swapping the images of a and b, in O(n).
Rational pair_exchange_delta(const QapInstance& inst, const Permutation& pi, std::size_t a,
                             std::size_t b);

/// Pairwise-disjoint facility pairs with designated pairwise exchanges,
/// anchored at a base permutation; bit j of a decode applies exchange j.
struct ExchangePlan {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  Permutation base;

  ExchangePlan(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_, Permutation base_);
};

/// Scans all pair exchanges, ranks ascending by delta (ties by pair order),
/// and greedily keeps disjoint pairs up to min(m_max, n/2). Non-improving
/// pairs fill remaining capacity; the QUBO decides which swaps apply.
ExchangePlan greedy_select_pairs(const QapInstance& inst, const Permutation& pi,
                                 std::size_t m_max);

/// Unconstrained pairwise-exchange QUBO over m = |pairs| variables:
/// energy(y) == qap_objective(decode_uqubols(plan, y)) for every y, exactly.
QuboModel build_uqubols_qubo(const QapInstance& inst, const ExchangePlan& plan);

/// Applies exchange j wherever y_j = 1. Always a valid permutation.
Permutation decode_uqubols(const ExchangePlan& plan, const BitString& y);

/// m pairwise-disjoint facility subsets of common size k.
struct SubsetFamily {
  std::vector<std::vector<std::uint32_t>> subsets;
  std::size_t k = 0;

  SubsetFamily(std::vector<std::vector<std::uint32_t>> subsets_, std::size_t k_);
  std::size_t m() const { return subsets.size(); }
};

/// Blocks of size k formed by chunking the greedy pair ranking (pairs in rank
/// order, then leftover facilities ascending). Requires m*k <= n.
SubsetFamily make_subset_family(const QapInstance& inst, const Permutation& pi, std::size_t k,
                                std::size_t m);

/// m random disjoint subsets of size k (facility sample without replacement).
SubsetFamily random_subset_family(std::size_t n, std::size_t k, std::size_t m,
                                  std::mt19937_64& rng);

/// Variable layout of the restricted formulation: block-major, facilities and
/// locations ascending inside a block; var (b, a, l) sits at b*k^2 + a*k + l.
struct CquboLayout {
  std::vector<std::vector<std::uint32_t>> facilities;  ///< per block, ascending
  std::vector<std::vector<std::uint32_t>> locations;   ///< per block, ascending
  std::size_t k = 0;

  std::size_t num_vars() const { return facilities.size() * k * k; }
  std::size_t var(std::size_t block, std::size_t fac_pos, std::size_t loc_pos) const {
    return block * k * k + fac_pos * k + loc_pos;
  }
};
CquboLayout cqubols_layout(const SubsetFamily& family, const Permutation& pi);

/// Objective part of the restricted formulation: the full-QUBO objective with
/// every variable outside the blocks fixed (to the current encoding), built
/// directly over the m*k^2 free variables.
QuboModel build_cqubols_objective(const QapInstance& inst, const SubsetFamily& family,
                                  const Permutation& pi);

/// Per-block 2-way exactly-one groups in layout terms (block 0 facility rows,
/// block 0 location columns, block 1 rows, ...).
std::vector<std::vector<std::uint32_t>> cqubols_one_hot_groups(const CquboLayout& layout);

/// Bits encoding the current permutation in the layout (the feasible seed).
BitString encode_cqubols(const SubsetFamily& family, const Permutation& pi);

/// Restricted formulation plus the per-block 2-way exactly-one penalties
/// (group order: block 0 facility rows, block 0 location columns, block 1
/// rows, ...).
QuboModel build_cqubols_qubo(const QapInstance& inst, const SubsetFamily& family,
                             const Permutation& pi, const PenaltyConfig& penalties);

/// Reads block assignment matrices back into a permutation, or nullopt if any
/// block violates its exactly-one constraints.
std::optional<Permutation> decode_cqubols(const SubsetFamily& family, const Permutation& pi,
                                          const BitString& bits);

}  // namespace qubols
