#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qubols/qubo.hpp"

namespace qubols {

/// Behavioral parameters of the annealer emulator. mc_steps counts single-flip
/// attempts summed over all replicas (the budget a hardware run would spend).
/// The capacity limit mirrors the per-QUBO variable cap of the emulated
/// hardware and is enforced, not advisory.
struct AnnealerConfig {
  std::uint64_t mc_steps = 100000;
  std::size_t num_replicas = 8;
  double temp_min = 0.0;  ///< 0 = derive from the model's coefficient scale
  double temp_max = 0.0;  ///< 0 = derive from the model's coefficient scale
  std::uint64_t exchange_interval = 0;  ///< proposals per replica between exchanges; 0 = one sweep
  std::uint64_t seed = 0;
  std::size_t capacity = 1024;
  std::optional<BitString> initial;  ///< nullopt = fresh random start per replica
};

struct AnnealResult {
  BitString best;
  Rational best_energy;
  /// (step, best-so-far energy) at every improvement; non-increasing.
  std::vector<std::pair<std::uint64_t, Rational>> energy_trace;
  std::uint64_t steps_used = 0;
};

/// One replica's assignment with cached local fields and energy.
/// field_i = linear_i + sum_j q_ij x_j, so a flip delta is O(1) to read and
/// O(degree) to commit.
class AnnealState {
 public:
  AnnealState(const QuboModel& model, BitString x);

  const QuboModel& model() const { return *model_; }
  const BitString& bits() const { return x_; }
  const Rational& energy() const { return energy_; }

  Rational flip_delta(std::size_t i) const { return x_[i] ? -field_[i] : field_[i]; }

  void apply_flip(std::size_t i);

 private:
  const QuboModel* model_;
  BitString x_;
  std::vector<Rational> field_;
  Rational energy_;
};

/// n sequential single-flip proposals at the given temperature, each accepted
/// with probability min(1, exp(-delta/T)).
void metropolis_sweep(AnnealState& state, double temperature, std::mt19937_64& rng);

struct Replica {
  AnnealState state;
  double temperature;
};

/// One pass of adjacent-pair exchanges. Replicas must be ordered by
/// temperature; configurations move, temperatures stay fixed to their slots.
void replica_exchange(std::vector<Replica>& replicas, std::mt19937_64& rng);

/// Metropolis simulated annealing with parallel tempering under the step
/// budget. Deterministic for fixed (model, config). Rejects models above
/// config.capacity with a CapacityError.
AnnealResult solve(const QuboModel& model, const AnnealerConfig& config);

/// Exact optimum by exhaustive enumeration; ties go to the lexicographically
/// smallest assignment. Refuses models with more than 24 variables.
AnnealResult brute_force_solve(const QuboModel& model);

}  // namespace qubols
