#pragma once

#include <cstdint>
#include <vector>

#include "qubols/qubo.hpp"
#include "qubols/rational.hpp"

namespace qubols {

/// Spin (+1/-1) coupling term, i < j.
struct IsingCoupling {
  std::uint32_t i;
  std::uint32_t j;
  Rational strength;
};

/// Ising model: E(s) = offset + sum_{i<j} J_ij s_i s_j + sum_i h_i s_i,
/// spins in {-1, +1}. Equivalent to a QUBO under s_i = 2 x_i - 1.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(std::size_t n, std::vector<Rational> h, std::vector<IsingCoupling> couplings,
             Rational offset);

  std::size_t num_spins() const { return n_; }
  const Rational& offset() const { return offset_; }
  const Rational& field(std::size_t i) const { return h_[i]; }
  const std::vector<Rational>& fields() const { return h_; }
  const std::vector<IsingCoupling>& couplings() const { return couplings_; }

  /// Exact energy; spins must be +1 or -1.
  Rational evaluate(const std::vector<int>& spins) const;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> h_;
  std::vector<IsingCoupling> couplings_;
  Rational offset_;
};

/// Change of variables s = 2x - 1; energies agree configuration-wise.
QuboModel ising_to_qubo(const IsingModel& m);
IsingModel qubo_to_ising(const QuboModel& m);

/// Spin vector corresponding to a bit string (0 -> -1, 1 -> +1).
std::vector<int> bits_to_spins(const BitString& x);

}  // namespace qubols
