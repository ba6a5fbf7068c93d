#pragma once

#include <cstdint>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "qubols/bitstring.hpp"
#include "qubols/rational.hpp"

namespace qubols {

/// One upper-triangular quadratic coefficient (i < j).
struct QuadTerm {
  std::uint32_t i;
  std::uint32_t j;
  Rational coeff;
};

/// Immutable quadratic binary model
///
///   E(x) = offset + sum_i linear_i x_i + sum_{i<j} quad_ij x_i x_j.
///
/// Diagonal quadratic mass is folded into the linear terms on construction
/// (x^2 = x for binary x), so equal formulations compare equal term-by-term.
/// Models are safe to share across threads; evaluation is pure.
class QuboModel {
 public:
  QuboModel() : QuboModel(0, {}, {}, Rational(0)) {}
  QuboModel(std::size_t n, std::vector<Rational> linear, std::vector<QuadTerm> quadratic,
            Rational offset);

  std::size_t num_vars() const { return n_; }
  const Rational& offset() const { return offset_; }
  const Rational& linear(std::size_t i) const { return linear_[i]; }
  const std::vector<Rational>& linear_terms() const { return linear_; }
  /// Sorted by (i, j); zero coefficients are dropped.
  const std::vector<QuadTerm>& quadratic_terms() const { return quad_; }
  std::size_t num_quadratic() const { return quad_.size(); }

  /// Neighbors of variable i with their coupling coefficients.
  std::span<const std::pair<std::uint32_t, Rational>> neighbors(std::size_t i) const {
    return {adj_.data() + adj_offsets_[i], adj_.data() + adj_offsets_[i + 1]};
  }
  std::size_t degree(std::size_t i) const { return adj_offsets_[i + 1] - adj_offsets_[i]; }

  /// Exact energy of an assignment.
  Rational evaluate(const BitString& x) const;

  /// Energy change from flipping bit i, in O(degree(i)).
  Rational delta_flip(const BitString& x, std::size_t i) const;

 private:
  std::size_t n_;
  std::vector<Rational> linear_;
  std::vector<QuadTerm> quad_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<std::pair<std::uint32_t, Rational>> adj_;
  Rational offset_;
};

/// Accumulates coefficients and freezes them into a canonical QuboModel.
/// Repeated (i, j) contributions sum; (i, i) folds into the linear term.
class QuboBuilder {
 public:
  explicit QuboBuilder(std::size_t n) : n_(n), linear_(n, Rational(0)) {}

  void add_offset(const Rational& c) { offset_ += c; }
  void add_linear(std::size_t i, const Rational& c);
  void add_quadratic(std::size_t i, std::size_t j, const Rational& c);

  std::size_t num_vars() const { return n_; }

  QuboModel build();

 private:
  std::size_t n_;
  std::vector<Rational> linear_;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Rational>> entries_;
  Rational offset_;
};

/// Penalty weights for exactly-one (and related) constraint groups.
/// Uniform mode applies one lambda to every group; per-constraint mode
/// supplies one positive weight per group, in group order.
class PenaltyConfig {
 public:
  static PenaltyConfig uniform(const Rational& lambda);
  static PenaltyConfig per_constraint(std::vector<Rational> values);

  bool is_uniform() const { return uniform_; }
  /// Weight for group g out of `group_count`; validates counts and positivity.
  Rational weight(std::size_t g, std::size_t group_count) const;

 private:
  PenaltyConfig() = default;
  bool uniform_ = true;
  Rational value_;
  std::vector<Rational> values_;
};

/// Adds lambda_g * (sum_{i in group} x_i - 1)^2 for each group.
/// The result equals `model` on assignments satisfying every group
/// exactly-one. Empty groups are unsatisfiable and rejected.
QuboModel add_one_hot_penalties(const QuboModel& model,
                                const std::vector<std::vector<std::uint32_t>>& groups,
                                const PenaltyConfig& penalties);

/// Substitutes fixed bits and returns the reduced model over the remaining
/// variables (original index order preserved). The reduced energy at any
/// completion equals the original energy at the merged assignment.
QuboModel fix_variables(const QuboModel& model,
                        const std::vector<std::pair<std::size_t, bool>>& assignments);

/// Indices left free by `assignments`, ascending; position = reduced index.
std::vector<std::size_t> remaining_indices(
    std::size_t n, const std::vector<std::pair<std::size_t, bool>>& assignments);

/// Full-length assignment from fixed bits plus reduced-model bits.
BitString merge_assignment(std::size_t n,
                           const std::vector<std::pair<std::size_t, bool>>& assignments,
                           const BitString& reduced);

/// 1 + max_i (|linear_i| + sum_j |quad_ij|): exceeds any single-flip change
/// of the objective, the usual lower bound for constraint penalties.
Rational default_penalty(const QuboModel& objective_part);

struct QuantizedQubo {
  QuboModel model;    ///< coefficients are integers representable in `bits` bits
  Rational scale;     ///< original energy ~= quantized energy / scale
};

/// Rounds coefficients onto a signed b-bit integer grid, emulating
/// fixed-precision hardware weight matrices. Off by default everywhere;
/// precision truncation changes optima.
QuantizedQubo quantize_coefficients(const QuboModel& model, unsigned bits);

}  // namespace qubols
