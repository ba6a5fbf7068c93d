#include "qubols/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qubols/errors.hpp"
#include "qubols/rng.hpp"

namespace qubols {

namespace {

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Single Metropolis proposal on variable i; returns true if the flip landed.
bool propose_flip(AnnealState& state, std::size_t i, double temperature, std::mt19937_64& rng) {
  Rational delta = state.flip_delta(i);
  bool accept;
  if (delta <= Rational(0)) {
    accept = true;
  } else {
    double p = std::exp(-delta.to_double() / temperature);
    accept = uniform01(rng) < p;
  }
  if (accept) state.apply_flip(i);
  return accept;
}

/// Largest possible single-flip energy change; anchors the default ladder.
double coefficient_scale(const QuboModel& model) {
  Rational bound = default_penalty(model) - Rational(1);
  double b = bound.to_double();
  return b > 0.0 ? b : 1.0;
}

struct Ladder {
  double tmin, tmax;
};

Ladder resolve_ladder(const QuboModel& model, const AnnealerConfig& cfg) {
  double tmin = cfg.temp_min, tmax = cfg.temp_max;
  if (tmin == 0.0 && tmax == 0.0) {
    double scale = coefficient_scale(model);
    tmax = scale;
    tmin = std::max(scale * 1e-3, 1e-9);
  }
  if (!(tmin > 0.0) || !(tmax > 0.0) || tmin > tmax)
    throw ConfigError("annealer: need 0 < temp_min <= temp_max");
  return {tmin, tmax};
}

double ladder_temperature(const Ladder& ladder, std::size_t r, std::size_t count) {
  if (count == 1) return ladder.tmin;
  double t = static_cast<double>(r) / static_cast<double>(count - 1);
  return ladder.tmin * std::pow(ladder.tmax / ladder.tmin, t);
}

}  // namespace

AnnealState::AnnealState(const QuboModel& model, BitString x)
    : model_(&model), x_(std::move(x)), field_(model.num_vars(), Rational(0)) {
  if (x_.size() != model.num_vars())
    throw DimensionError("AnnealState: assignment length != model size");
  for (std::size_t i = 0; i < model.num_vars(); ++i) {
    field_[i] = model.linear(i);
    for (const auto& [j, c] : model.neighbors(i))
      if (x_[j]) field_[i] += c;
  }
  energy_ = model.evaluate(x_);
}

void AnnealState::apply_flip(std::size_t i) {
  energy_ += flip_delta(i);
  const bool now_one = x_[i] == 0;
  x_.flip(i);
  for (const auto& [j, c] : model_->neighbors(i)) {
    if (now_one)
      field_[j] += c;
    else
      field_[j] -= c;
  }
}

void metropolis_sweep(AnnealState& state, double temperature, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < state.model().num_vars(); ++i)
    propose_flip(state, i, temperature, rng);
}

void replica_exchange(std::vector<Replica>& replicas, std::mt19937_64& rng) {
  for (std::size_t r = 0; r + 1 < replicas.size(); ++r) {
    const double bi = 1.0 / replicas[r].temperature;
    const double bj = 1.0 / replicas[r + 1].temperature;
    const double de = replicas[r].state.energy().to_double() -
                      replicas[r + 1].state.energy().to_double();
    const double exponent = (bi - bj) * de;
    bool swap = exponent >= 0.0 || uniform01(rng) < std::exp(exponent);
    if (swap) std::swap(replicas[r].state, replicas[r + 1].state);
  }
}

AnnealResult solve(const QuboModel& model, const AnnealerConfig& cfg) {
  if (cfg.capacity < 1) throw ConfigError("annealer: capacity must be >= 1");
  if (cfg.num_replicas < 1) throw ConfigError("annealer: need at least one replica");
  if (model.num_vars() > cfg.capacity)
    throw CapacityError("annealer: model has " + std::to_string(model.num_vars()) +
                        " variables, capacity is " + std::to_string(cfg.capacity));
  if (cfg.initial && cfg.initial->size() != model.num_vars())
    throw DimensionError("annealer: initial assignment length != model size");
  Ladder ladder = resolve_ladder(model, cfg);

  AnnealResult result;
  if (model.num_vars() == 0) {
    result.best = BitString();
    result.best_energy = model.offset();
    result.energy_trace.emplace_back(0, result.best_energy);
    return result;
  }

  const std::size_t n = model.num_vars();
  std::vector<Replica> replicas;
  std::vector<std::mt19937_64> rngs;
  replicas.reserve(cfg.num_replicas);
  rngs.reserve(cfg.num_replicas);
  for (std::size_t r = 0; r < cfg.num_replicas; ++r) {
    rngs.push_back(make_rng(cfg.seed, r + 1));
    BitString start = cfg.initial ? *cfg.initial : BitString::random(n, rngs.back());
    replicas.push_back({AnnealState(model, std::move(start)),
                        ladder_temperature(ladder, r, cfg.num_replicas)});
  }
  std::mt19937_64 exchange_rng = make_rng(cfg.seed, 0);

  std::size_t best_replica = 0;
  for (std::size_t r = 1; r < replicas.size(); ++r)
    if (replicas[r].state.energy() < replicas[best_replica].state.energy()) best_replica = r;
  result.best = replicas[best_replica].state.bits();
  result.best_energy = replicas[best_replica].state.energy();
  result.energy_trace.emplace_back(0, result.best_energy);

  const std::uint64_t interval =
      cfg.exchange_interval > 0 ? cfg.exchange_interval : static_cast<std::uint64_t>(n);
  std::uint64_t used = 0;
  std::vector<std::size_t> cursor(cfg.num_replicas, 0);

  while (used < cfg.mc_steps) {
    for (std::size_t r = 0; r < replicas.size() && used < cfg.mc_steps; ++r) {
      std::uint64_t block = std::min<std::uint64_t>(interval, cfg.mc_steps - used);
      for (std::uint64_t t = 0; t < block; ++t) {
        std::size_t i = cursor[r];
        cursor[r] = (cursor[r] + 1) % n;
        ++used;
        if (propose_flip(replicas[r].state, i, replicas[r].temperature, rngs[r]) &&
            replicas[r].state.energy() < result.best_energy) {
          result.best = replicas[r].state.bits();
          result.best_energy = replicas[r].state.energy();
          result.energy_trace.emplace_back(used, result.best_energy);
        }
      }
    }
    if (used < cfg.mc_steps) replica_exchange(replicas, exchange_rng);
  }
  result.steps_used = used;
  return result;
}

AnnealResult brute_force_solve(const QuboModel& model) {
  const std::size_t n = model.num_vars();
  if (n > 24) throw Error("brute_force_solve: refusing models with more than 24 variables");

  AnnealResult result;
  BitString x = BitString::zeros(n);
  Rational energy = model.offset();
  result.best = x;
  result.best_energy = energy;
  result.energy_trace.emplace_back(0, energy);
  if (n == 0) return result;

  // Gray-code walk: configuration v differs from v-1 in bit ctz(v).
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t v = 1; v < total; ++v) {
    std::size_t i = static_cast<std::size_t>(__builtin_ctzll(v));
    energy += model.delta_flip(x, i);
    x.flip(i);
    if (energy < result.best_energy ||
        (energy == result.best_energy && x < result.best)) {
      result.best = x;
      if (energy < result.best_energy) result.energy_trace.emplace_back(v, energy);
      result.best_energy = energy;
    }
  }
  result.steps_used = total;
  return result;
}

}  // namespace qubols
