#include "qubols/ising.hpp"

#include <algorithm>
#include <tuple>

#include "qubols/errors.hpp"

namespace qubols {

IsingModel::IsingModel(std::size_t n, std::vector<Rational> h,
                       std::vector<IsingCoupling> couplings, Rational offset)
    : n_(n), h_(std::move(h)), couplings_(std::move(couplings)), offset_(std::move(offset)) {
  if (h_.size() != n_) throw DimensionError("IsingModel: field count != n");
  for (const auto& c : couplings_)
    if (!(c.i < c.j && c.j < n_))
      throw FormulationError("IsingModel: coupling key must satisfy i < j < n");
  std::sort(couplings_.begin(), couplings_.end(), [](const IsingCoupling& a, const IsingCoupling& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
}

Rational IsingModel::evaluate(const std::vector<int>& spins) const {
  if (spins.size() != n_) throw DimensionError("IsingModel::evaluate: spin count != n");
  for (int s : spins)
    if (s != 1 && s != -1) throw Error("IsingModel::evaluate: spins must be +1 or -1");
  Rational e = offset_;
  for (std::size_t i = 0; i < n_; ++i) e += h_[i] * Rational(spins[i]);
  for (const auto& c : couplings_) e += c.strength * Rational(spins[c.i] * spins[c.j]);
  return e;
}

QuboModel ising_to_qubo(const IsingModel& m) {
  // J s_i s_j = 4J x_i x_j - 2J x_i - 2J x_j + J;  h s_i = 2h x_i - h.
  QuboBuilder b(m.num_spins());
  Rational offset = m.offset();
  for (std::size_t i = 0; i < m.num_spins(); ++i) {
    b.add_linear(i, m.field(i) * Rational(2));
    offset -= m.field(i);
  }
  for (const auto& c : m.couplings()) {
    b.add_quadratic(c.i, c.j, c.strength * Rational(4));
    b.add_linear(c.i, c.strength * Rational(-2));
    b.add_linear(c.j, c.strength * Rational(-2));
    offset += c.strength;
  }
  b.add_offset(offset);
  return b.build();
}

IsingModel qubo_to_ising(const QuboModel& m) {
  // x_i = (s_i + 1)/2:  l x_i = l/2 s_i + l/2;  q x_i x_j = q/4 (s_i s_j + s_i + s_j + 1).
  const Rational half(1, 2), quarter(1, 4);
  std::vector<Rational> h(m.num_vars(), Rational(0));
  std::vector<IsingCoupling> couplings;
  couplings.reserve(m.num_quadratic());
  Rational offset = m.offset();
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    h[i] += m.linear(i) * half;
    offset += m.linear(i) * half;
  }
  for (const auto& t : m.quadratic_terms()) {
    Rational q4 = t.coeff * quarter;
    couplings.push_back({t.i, t.j, q4});
    h[t.i] += q4;
    h[t.j] += q4;
    offset += q4;
  }
  return IsingModel(m.num_vars(), std::move(h), std::move(couplings), offset);
}

std::vector<int> bits_to_spins(const BitString& x) {
  std::vector<int> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
  return s;
}

}  // namespace qubols
