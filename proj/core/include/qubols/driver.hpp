#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qubols/annealer.hpp"
#include "qubols/errors.hpp"
#include "qubols/rng.hpp"

namespace qubols {

enum class Method { uqubols, cqubols, qls, sa };

std::string method_name(Method m);
Method parse_method(std::string_view name);

enum class InitPolicy { random_init, spectral, given };

enum class SubsetSelection { greedy, random_pick };

/// One local-search run: method, outer budget, subset shape, and the
/// annealer serving the per-iteration sub-QUBOs.
struct RunConfig {
  Method method = Method::uqubols;
  std::size_t max_iters = 30;
  std::size_t k = 0;  ///< C-QUBO-LS subset size; 0 = method default (2 for cqubols, sqrt(capacity) for qls)
  std::size_t m = 1;  ///< C-QUBO-LS subset count
  AnnealerConfig annealer;
  std::uint64_t seed = 0;
  InitPolicy init = InitPolicy::random_init;
  bool seed_annealer_with_current = false;
  SubsetSelection selection = SubsetSelection::greedy;
  bool exact_subsolver = false;  ///< brute-force sub-QUBOs instead of annealing (test oracle)
  double sa_cooling = 0.995;     ///< geometric cooling ratio of the SA baseline
  Rational penalty_scale = Rational(1);  ///< multiplies the default penalty bound
  std::string label;             ///< harness display name; empty = method name
};

struct IterationRecord {
  std::size_t iteration = 0;
  Rational objective;            ///< incumbent objective after this iteration
  std::size_t sub_qubo_vars = 0;
  std::uint64_t annealer_steps = 0;
  bool accepted = false;
  bool feasible = true;          ///< decoded candidate was feasible (C-QUBO-LS may reject)
  Rational candidate_energy;     ///< best sub-QUBO energy the solver found
  Rational current_energy;       ///< sub-QUBO energy of the incumbent's encoding
  double wall_ms = 0.0;
};

struct RunTrace {
  std::vector<IterationRecord> records;  ///< record 0 is the initial solution
  Rational initial_objective;
  Rational final_objective;
  std::string final_solution;
  std::size_t infeasible_iterations = 0;
  std::size_t iterations_used = 0;  ///< outer iterations (SA: steps) consumed
};

/// One JSON object per record, newline separated.
std::string trace_to_jsonl(const RunTrace& trace);

/// Unconstrained move family: every decode is feasible by construction and
/// the all-zeros assignment encodes "keep the current solution".
template <class Solution>
struct UnconstrainedMove {
  QuboModel model;
  BitString current;
  std::function<Solution(const BitString&)> decode;
};

/// Penalized move family: decode reports infeasible assignments instead of
/// repairing them.
template <class Solution>
struct ConstrainedMove {
  QuboModel model;
  BitString current;
  std::function<std::optional<Solution>(const BitString&)> decode;
};

/// Knobs a problem adapter may use when shaping a sub-problem.
struct SubproblemParams {
  std::size_t capacity = 1024;
  std::size_t k = 0;
  std::size_t m = 1;
  SubsetSelection selection = SubsetSelection::greedy;
  Rational penalty_scale = Rational(1);
};

namespace driver_detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

inline AnnealResult solve_subqubo(const QuboModel& model, const RunConfig& cfg,
                                  const BitString& current, std::size_t iter) {
  if (cfg.exact_subsolver) return brute_force_solve(model);
  AnnealerConfig ac = cfg.annealer;
  ac.seed = derive_seed(cfg.seed, 0x51D0 + iter);
  if (cfg.seed_annealer_with_current)
    ac.initial = current;
  else
    ac.initial.reset();
  return solve(model, ac);
}

inline SubproblemParams subproblem_params(const RunConfig& cfg) {
  if (!cfg.penalty_scale.is_positive())
    throw ConfigError("run: penalty_scale must be positive");
  return {cfg.annealer.capacity, cfg.k, cfg.m, cfg.selection, cfg.penalty_scale};
}

}  // namespace driver_detail

/// Initial solution per policy. `spectral` requires the problem to provide a
/// spectral_solution() hook (the 2-sum problem does).
template <class Problem>
typename Problem::Solution make_initial_solution(const Problem& problem, const RunConfig& cfg) {
  switch (cfg.init) {
    case InitPolicy::random_init: {
      auto rng = make_rng(cfg.seed, 0x1217);
      return problem.random_solution(rng);
    }
    case InitPolicy::spectral:
      if constexpr (requires { problem.spectral_solution(); })
        return problem.spectral_solution();
      else
        throw ConfigError("spectral initialization is not defined for this problem");
    case InitPolicy::given:
      throw ConfigError("init policy 'given' needs an explicit initial solution");
  }
  throw ConfigError("unknown init policy");
}

/// Algorithm: repeatedly pick disjoint local changes, bind one decision bit
/// to each, solve the unconstrained sub-QUBO, accept strict improvements.
template <class Problem>
RunTrace run_uqubols(const Problem& problem, const RunConfig& cfg,
                     const typename Problem::Solution& initial) {
  auto solution = initial;
  Rational obj = problem.objective(solution);
  RunTrace trace;
  trace.initial_objective = obj;
  trace.records.push_back({0, obj, 0, 0, true, true, obj, obj, 0.0});
  const SubproblemParams params = driver_detail::subproblem_params(cfg);

  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rng = make_rng(cfg.seed, 0xA000 + iter);
    auto move = problem.unconstrained_move(solution, params, rng);

    IterationRecord rec;
    rec.iteration = iter;
    rec.sub_qubo_vars = move.model.num_vars();
    rec.current_energy = move.model.evaluate(move.current);
    auto result = driver_detail::solve_subqubo(move.model, cfg, move.current, iter);
    rec.annealer_steps = result.steps_used;
    rec.candidate_energy = result.best_energy;

    auto candidate = move.decode(result.best);
    Rational cand_obj = problem.objective(candidate);
    if (cand_obj < obj) {
      solution = std::move(candidate);
      obj = cand_obj;
      rec.accepted = true;
    }
    rec.objective = obj;
    rec.wall_ms = driver_detail::elapsed_ms(t0);
    trace.records.push_back(std::move(rec));
  }
  trace.iterations_used = cfg.max_iters;
  trace.final_objective = obj;
  trace.final_solution = problem.serialize(solution);
  return trace;
}

/// Penalty-carrying variant: infeasible solver output is rejected outright.
template <class Problem>
RunTrace run_cqubols(const Problem& problem, const RunConfig& cfg,
                     const typename Problem::Solution& initial) {
  auto solution = initial;
  Rational obj = problem.objective(solution);
  RunTrace trace;
  trace.initial_objective = obj;
  trace.records.push_back({0, obj, 0, 0, true, true, obj, obj, 0.0});
  SubproblemParams params = driver_detail::subproblem_params(cfg);
  if (params.k == 0) params.k = 2;

  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rng = make_rng(cfg.seed, 0xA000 + iter);
    auto move = problem.constrained_move(solution, params, rng);

    IterationRecord rec;
    rec.iteration = iter;
    rec.sub_qubo_vars = move.model.num_vars();
    rec.current_energy = move.model.evaluate(move.current);
    auto result = driver_detail::solve_subqubo(move.model, cfg, move.current, iter);
    rec.annealer_steps = result.steps_used;
    rec.candidate_energy = result.best_energy;

    auto candidate = move.decode(result.best);
    if (!candidate.has_value()) {
      rec.feasible = false;
      ++trace.infeasible_iterations;
    } else {
      Rational cand_obj = problem.objective(*candidate);
      if (cand_obj < obj) {
        solution = std::move(*candidate);
        obj = cand_obj;
        rec.accepted = true;
      }
    }
    rec.objective = obj;
    rec.wall_ms = driver_detail::elapsed_ms(t0);
    trace.records.push_back(std::move(rec));
  }
  trace.iterations_used = cfg.max_iters;
  trace.final_objective = obj;
  trace.final_solution = problem.serialize(solution);
  return trace;
}

/// The prior-work baseline: one subset sized to fill the annealer.
template <class Problem>
RunTrace run_qls(const Problem& problem, const RunConfig& cfg,
                 const typename Problem::Solution& initial) {
  RunConfig qls_cfg = cfg;
  qls_cfg.m = 1;
  if (qls_cfg.k == 0)
    qls_cfg.k = static_cast<std::size_t>(std::sqrt(static_cast<double>(cfg.annealer.capacity)));
  return run_cqubols(problem, qls_cfg, initial);
}

/// Classic simulated annealing over the problem's native solution space with
/// geometric cooling; records best-so-far improvements.
template <class Problem>
RunTrace run_sa_baseline(const Problem& problem, const RunConfig& cfg,
                         const typename Problem::Solution& initial) {
  auto current = initial;
  Rational cur_obj = problem.objective(current);
  auto best = current;
  Rational best_obj = cur_obj;

  RunTrace trace;
  trace.initial_objective = cur_obj;
  trace.records.push_back({0, cur_obj, 0, 0, true, true, cur_obj, cur_obj, 0.0});

  double temperature = cfg.annealer.temp_max;
  if (temperature <= 0.0) {
    // Calibrate the start temperature from a short random walk.
    auto crng = make_rng(cfg.seed, 0xC001);
    auto probe = current;
    Rational probe_obj = cur_obj;
    double max_delta = 0.0;
    for (int s = 0; s < 64; ++s) {
      auto next = problem.neighbor(probe, crng);
      Rational next_obj = problem.objective(next);
      max_delta = std::max(max_delta, std::abs((next_obj - probe_obj).to_double()));
      probe = std::move(next);
      probe_obj = next_obj;
    }
    temperature = max_delta > 0.0 ? max_delta : 1.0;
  }
  const double temp_floor = cfg.annealer.temp_min > 0.0 ? cfg.annealer.temp_min : 1e-12;

  auto rng = make_rng(cfg.seed, 0xB000);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t step = 1; step <= cfg.max_iters; ++step) {
    auto candidate = problem.neighbor(current, rng);
    Rational cand_obj = problem.objective(candidate);
    Rational delta = cand_obj - cur_obj;
    bool accept = delta <= Rational(0) ||
                  uniform(rng) < std::exp(-delta.to_double() / temperature);
    if (accept) {
      current = std::move(candidate);
      cur_obj = cand_obj;
      if (cur_obj < best_obj) {
        best = current;
        best_obj = cur_obj;
        trace.records.push_back({step, best_obj, 0, 0, true, true, best_obj, best_obj,
                                 driver_detail::elapsed_ms(t0)});
      }
    }
    temperature = std::max(temperature * cfg.sa_cooling, temp_floor);
  }
  trace.iterations_used = cfg.max_iters;
  trace.final_objective = best_obj;
  trace.final_solution = problem.serialize(best);
  return trace;
}

template <class Problem>
RunTrace run_method(const Problem& problem, const RunConfig& cfg,
                    const typename Problem::Solution& initial) {
  switch (cfg.method) {
    case Method::uqubols:
      return run_uqubols(problem, cfg, initial);
    case Method::cqubols:
      return run_cqubols(problem, cfg, initial);
    case Method::qls:
      return run_qls(problem, cfg, initial);
    case Method::sa:
      return run_sa_baseline(problem, cfg, initial);
  }
  throw ConfigError("unknown method");
}

template <class Problem>
RunTrace run_method(const Problem& problem, const RunConfig& cfg) {
  return run_method(problem, cfg, make_initial_solution(problem, cfg));
}

}  // namespace qubols
