#include "qubols/qubo.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "qubols/errors.hpp"

namespace qubols {

QuboModel::QuboModel(std::size_t n, std::vector<Rational> linear, std::vector<QuadTerm> quadratic,
                     Rational offset)
    : n_(n), linear_(std::move(linear)), quad_(std::move(quadratic)), offset_(std::move(offset)) {
  if (linear_.size() != n_) throw DimensionError("QuboModel: linear term count != n");
  for (const auto& t : quad_) {
    if (!(t.i < t.j && t.j < n_))
      throw FormulationError("QuboModel: quadratic key must satisfy i < j < n");
  }
  std::sort(quad_.begin(), quad_.end(),
            [](const QuadTerm& a, const QuadTerm& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t t = 1; t < quad_.size(); ++t) {
    if (quad_[t - 1].i == quad_[t].i && quad_[t - 1].j == quad_[t].j)
      throw FormulationError("QuboModel: duplicate quadratic key");
  }

  adj_offsets_.assign(n_ + 1, 0);
  for (const auto& t : quad_) {
    ++adj_offsets_[t.i + 1];
    ++adj_offsets_[t.j + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) adj_offsets_[i + 1] += adj_offsets_[i];
  adj_.resize(quad_.size() * 2);
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& t : quad_) {
    adj_[cursor[t.i]++] = {t.j, t.coeff};
    adj_[cursor[t.j]++] = {t.i, t.coeff};
  }
}

Rational QuboModel::evaluate(const BitString& x) const {
  if (x.size() != n_) throw DimensionError("evaluate: assignment length != model size");
  Rational e = offset_;
  for (std::size_t i = 0; i < n_; ++i)
    if (x[i]) e += linear_[i];
  for (const auto& t : quad_)
    if (x[t.i] && x[t.j]) e += t.coeff;
  return e;
}

Rational QuboModel::delta_flip(const BitString& x, std::size_t i) const {
  if (x.size() != n_) throw DimensionError("delta_flip: assignment length != model size");
  if (i >= n_) throw DimensionError("delta_flip: index out of range");
  Rational field = linear_[i];
  for (const auto& [j, c] : neighbors(i))
    if (x[j]) field += c;
  return x[i] ? -field : field;
}

void QuboBuilder::add_linear(std::size_t i, const Rational& c) {
  if (i >= n_) throw DimensionError("QuboBuilder: linear index out of range");
  linear_[i] += c;
}

void QuboBuilder::add_quadratic(std::size_t i, std::size_t j, const Rational& c) {
  if (i >= n_ || j >= n_) throw DimensionError("QuboBuilder: quadratic index out of range");
  if (i == j) {
    linear_[i] += c;  // x^2 = x
    return;
  }
  if (i > j) std::swap(i, j);
  entries_.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), c);
}

QuboModel QuboBuilder::build() {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::vector<QuadTerm> quad;
  quad.reserve(entries_.size());
  for (std::size_t t = 0; t < entries_.size();) {
    auto [i, j, c] = entries_[t];
    std::size_t u = t + 1;
    while (u < entries_.size() && std::get<0>(entries_[u]) == i && std::get<1>(entries_[u]) == j) {
      c += std::get<2>(entries_[u]);
      ++u;
    }
    if (!c.is_zero()) quad.push_back({i, j, c});
    t = u;
  }
  entries_.clear();
  return QuboModel(n_, linear_, std::move(quad), offset_);
}

PenaltyConfig PenaltyConfig::uniform(const Rational& lambda) {
  if (!lambda.is_positive()) throw ConfigError("penalty weights must be strictly positive");
  PenaltyConfig p;
  p.uniform_ = true;
  p.value_ = lambda;
  return p;
}

PenaltyConfig PenaltyConfig::per_constraint(std::vector<Rational> values) {
  for (const auto& v : values)
    if (!v.is_positive()) throw ConfigError("penalty weights must be strictly positive");
  PenaltyConfig p;
  p.uniform_ = false;
  p.values_ = std::move(values);
  return p;
}

Rational PenaltyConfig::weight(std::size_t g, std::size_t group_count) const {
  if (uniform_) return value_;
  if (values_.size() != group_count)
    throw ConfigError("per-constraint penalties: expected " + std::to_string(group_count) +
                      " values, got " + std::to_string(values_.size()));
  return values_[g];
}

QuboModel add_one_hot_penalties(const QuboModel& model,
                                const std::vector<std::vector<std::uint32_t>>& groups,
                                const PenaltyConfig& penalties) {
  QuboBuilder b(model.num_vars());
  b.add_offset(model.offset());
  for (std::size_t i = 0; i < model.num_vars(); ++i) b.add_linear(i, model.linear(i));
  for (const auto& t : model.quadratic_terms()) b.add_quadratic(t.i, t.j, t.coeff);

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    if (group.empty()) throw FormulationError("one-hot group is empty (unsatisfiable)");
    Rational lambda = penalties.weight(g, groups.size());
    // (sum x - 1)^2 = 1 - sum x + 2 sum_{i<j} x_i x_j   (using x^2 = x)
    b.add_offset(lambda);
    for (std::size_t a = 0; a < group.size(); ++a) {
      if (group[a] >= model.num_vars())
        throw DimensionError("one-hot group index out of range");
      b.add_linear(group[a], -lambda);
      for (std::size_t c = a + 1; c < group.size(); ++c) {
        if (group[a] == group[c]) throw FormulationError("one-hot group repeats an index");
        b.add_quadratic(group[a], group[c], lambda + lambda);
      }
    }
  }
  return b.build();
}

std::vector<std::size_t> remaining_indices(
    std::size_t n, const std::vector<std::pair<std::size_t, bool>>& assignments) {
  std::vector<bool> fixed(n, false);
  for (const auto& [i, bit] : assignments) {
    (void)bit;
    if (i >= n) throw DimensionError("fix_variables: index out of range");
    if (fixed[i]) throw FormulationError("fix_variables: duplicate index");
    fixed[i] = true;
  }
  std::vector<std::size_t> rest;
  rest.reserve(n - assignments.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed[i]) rest.push_back(i);
  return rest;
}

QuboModel fix_variables(const QuboModel& model,
                        const std::vector<std::pair<std::size_t, bool>>& assignments) {
  const std::size_t n = model.num_vars();
  auto rest = remaining_indices(n, assignments);
  std::vector<int> value(n, -1);  // -1 = free
  for (const auto& [i, bit] : assignments) value[i] = bit ? 1 : 0;
  std::vector<std::size_t> new_index(n, 0);
  for (std::size_t r = 0; r < rest.size(); ++r) new_index[rest[r]] = r;

  QuboBuilder b(rest.size());
  Rational offset = model.offset();
  for (std::size_t i = 0; i < n; ++i) {
    if (value[i] == 1)
      offset += model.linear(i);
    else if (value[i] == -1)
      b.add_linear(new_index[i], model.linear(i));
  }
  for (const auto& t : model.quadratic_terms()) {
    int vi = value[t.i], vj = value[t.j];
    if (vi == -1 && vj == -1)
      b.add_quadratic(new_index[t.i], new_index[t.j], t.coeff);
    else if (vi == -1 && vj == 1)
      b.add_linear(new_index[t.i], t.coeff);
    else if (vi == 1 && vj == -1)
      b.add_linear(new_index[t.j], t.coeff);
    else if (vi == 1 && vj == 1)
      offset += t.coeff;
    // any arm with a fixed 0 vanishes
  }
  b.add_offset(offset);
  return b.build();
}

BitString merge_assignment(std::size_t n,
                           const std::vector<std::pair<std::size_t, bool>>& assignments,
                           const BitString& reduced) {
  auto rest = remaining_indices(n, assignments);
  if (reduced.size() != rest.size())
    throw DimensionError("merge_assignment: reduced length mismatch");
  BitString full = BitString::zeros(n);
  for (const auto& [i, bit] : assignments) full.set(i, bit);
  for (std::size_t r = 0; r < rest.size(); ++r) full.set(rest[r], reduced[r]);
  return full;
}

Rational default_penalty(const QuboModel& objective_part) {
  Rational best(0);
  for (std::size_t i = 0; i < objective_part.num_vars(); ++i) {
    Rational mass = objective_part.linear(i).abs();
    for (const auto& [j, c] : objective_part.neighbors(i)) {
      (void)j;
      mass += c.abs();
    }
    if (mass > best) best = mass;
  }
  return best + Rational(1);
}

QuantizedQubo quantize_coefficients(const QuboModel& model, unsigned bits) {
  if (bits < 2 || bits > 62) throw ConfigError("quantize_coefficients: bits must be in [2, 62]");
  Rational max_abs(0);
  for (std::size_t i = 0; i < model.num_vars(); ++i)
    if (model.linear(i).abs() > max_abs) max_abs = model.linear(i).abs();
  for (const auto& t : model.quadratic_terms())
    if (t.coeff.abs() > max_abs) max_abs = t.coeff.abs();
  if (max_abs.is_zero()) return {model, Rational(1)};

  const long long limit = (1LL << (bits - 1)) - 1;
  Rational scale = Rational(limit) / max_abs;
  auto snap = [&](const Rational& c) -> Rational {
    Rational scaled = c * scale;
    // round half away from zero
    long long q = scaled.numerator() / scaled.denominator();
    Rational rem = scaled - Rational(q);
    if (rem * Rational(2) >= Rational(1)) q += 1;
    if (rem * Rational(2) < Rational(-1) || rem * Rational(2) == Rational(-1)) q -= 1;
    return Rational(q);
  };

  QuboBuilder b(model.num_vars());
  b.add_offset(model.offset() * scale);
  for (std::size_t i = 0; i < model.num_vars(); ++i) b.add_linear(i, snap(model.linear(i)));
  for (const auto& t : model.quadratic_terms()) b.add_quadratic(t.i, t.j, snap(t.coeff));
  return {b.build(), scale};
}

}  // namespace qubols
