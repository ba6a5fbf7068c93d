#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qubols/qubo.hpp"

namespace qubols {

/// Symmetric TSP distances with zero diagonal. Symmetry is required: segment
/// reversal must leave within-segment weight unchanged, which is what makes
/// the k-reversal QUBO's internal weight a constant.
class TspInstance {
 public:
  TspInstance(std::size_t n, std::vector<Rational> dist_row_major);

  std::size_t size() const { return n_; }
  const Rational& dist(std::size_t u, std::size_t v) const { return dist_[u * n_ + v]; }

 private:
  std::size_t n_;
  std::vector<Rational> dist_;
};

/// "n" then n^2 row-major entries, whitespace-separated (integers, decimals
/// or fractions). Asymmetric matrices are rejected.
TspInstance parse_tsp_matrix(std::string_view text);
std::string write_tsp_matrix(const TspInstance& inst);

enum class DistanceRounding { none, nearest_integer };

/// One city per line "x y"; Euclidean distances, optionally rounded to the
/// nearest integer. Unrounded distances are stored exactly as the dyadic
/// rationals the doubles are.
TspInstance parse_tsp_coords(std::string_view text, DistanceRounding rounding);

/// Cyclic visiting order of all cities.
class Tour {
 public:
  Tour() = default;
  explicit Tour(std::vector<std::uint32_t> order);

  static Tour random(std::size_t n, std::mt19937_64& rng);

  std::size_t size() const { return order_.size(); }
  std::uint32_t city(std::size_t t) const { return order_[t]; }
  const std::vector<std::uint32_t>& order() const { return order_; }

  /// Same directed cyclic sequence, any rotation.
  bool cyclically_equal(const Tour& other) const;

  /// Rotation- and direction-normalized order; equal iff same undirected tour.
  std::vector<std::uint32_t> canonical_cycle() const;

  std::string str() const;

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  std::vector<std::uint32_t> order_;
};

Rational tour_length(const TspInstance& inst, const Tour& tour);

/// k directed segments covering the tour in order; segment i runs from
/// head(i) to tail(i).
struct SegmentDecomposition {
  std::vector<std::vector<std::uint32_t>> segments;

  std::size_t k() const { return segments.size(); }
  std::uint32_t head(std::size_t i) const { return segments[i].front(); }
  std::uint32_t tail(std::size_t i) const { return segments[i].back(); }
};

/// Cuts the tour's edges at the given positions (cutting position p removes
/// the edge between order[p] and order[p+1 mod n]). Needs k >= 2 distinct
/// positions.
SegmentDecomposition decompose(const Tour& tour, std::vector<std::size_t> cut_positions);

/// k distinct cut positions drawn uniformly without replacement.
std::vector<std::size_t> random_cut_positions(std::size_t n, std::size_t k,
                                              std::mt19937_64& rng);

struct KReversalQubo {
  QuboModel model;          ///< energy(y) = sum of the k connecting edges after reversals
  Rational internal_weight; ///< constant within-segment weight
};

/// Pairwise connecting-edge QUBO over k reversal bits:
/// energy(y) + internal_weight == tour_length(apply_reversals(decomp, y)).
KReversalQubo build_k_reversal_qubo(const TspInstance& inst,
                                    const SegmentDecomposition& decomp);

/// Reverses every segment with y_i = 1 and concatenates in segment order.
/// Every bit vector yields a valid tour.
Tour apply_reversals(const SegmentDecomposition& decomp, const BitString& y);

}  // namespace qubols
