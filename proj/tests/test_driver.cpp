#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "qubols/driver.hpp"
#include "qubols/problems.hpp"
#include "support.hpp"

using namespace qubols;
using testsupport::random_qap;

namespace {

RunConfig small_cfg(Method method, std::uint64_t seed) {
  RunConfig cfg;
  cfg.method = method;
  cfg.max_iters = 8;
  cfg.seed = seed;
  cfg.annealer.mc_steps = 2000;
  cfg.annealer.num_replicas = 4;
  return cfg;
}

void check_monotone(const RunTrace& trace) {
  Rational last = trace.records.front().objective;
  for (std::size_t t = 1; t < trace.records.size(); ++t) {
    const auto& rec = trace.records[t];
    if (rec.accepted) CHECK(rec.objective < last);
    CHECK(rec.objective <= last);
    last = rec.objective;
  }
  CHECK(trace.final_objective == trace.records.back().objective);
}

bool traces_equal_modulo_time(const RunTrace& a, const RunTrace& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t t = 0; t < a.records.size(); ++t) {
    const auto &ra = a.records[t], &rb = b.records[t];
    if (ra.iteration != rb.iteration || !(ra.objective == rb.objective) ||
        ra.sub_qubo_vars != rb.sub_qubo_vars || ra.annealer_steps != rb.annealer_steps ||
        ra.accepted != rb.accepted || ra.feasible != rb.feasible ||
        !(ra.candidate_energy == rb.candidate_energy) ||
        !(ra.current_energy == rb.current_energy))
      return false;
  }
  return a.final_solution == b.final_solution && a.final_objective == b.final_objective;
}

}  // namespace

TEST_CASE("zero iterations keep the initial solution") {
  auto g = testsupport::rng(81);
  QapProblem problem(random_qap(6, g));
  RunConfig cfg = small_cfg(Method::uqubols, 1);
  cfg.max_iters = 0;
  Permutation initial = Permutation::random(6, g);
  RunTrace trace = run_uqubols(problem, cfg, initial);
  REQUIRE(trace.records.size() == 1);
  CHECK(trace.final_objective == problem.objective(initial));
  CHECK(trace.final_solution == initial.str());

  RunTrace sa = run_sa_baseline(problem, cfg, initial);
  CHECK(sa.final_objective == problem.objective(initial));
}

TEST_CASE("accepted objectives strictly decrease for every method") {
  auto g = testsupport::rng(82);
  QapProblem problem(random_qap(8, g));
  Permutation initial = Permutation::random(8, g);
  for (Method method : {Method::uqubols, Method::cqubols, Method::qls, Method::sa}) {
    RunConfig cfg = small_cfg(method, 17);
    cfg.k = method == Method::qls ? 3 : 2;
    cfg.m = 2;
    cfg.max_iters = method == Method::sa ? 300 : 8;
    RunTrace trace = run_method(problem, cfg, initial);
    CAPTURE(method_name(method));
    check_monotone(trace);
  }
}

TEST_CASE("identical configs reproduce identical traces") {
  auto g = testsupport::rng(83);
  QapProblem problem(random_qap(7, g));
  Permutation initial = Permutation::random(7, g);
  for (Method method : {Method::uqubols, Method::cqubols, Method::sa}) {
    RunConfig cfg = small_cfg(method, 29);
    cfg.k = 2;
    RunTrace a = run_method(problem, cfg, initial);
    RunTrace b = run_method(problem, cfg, initial);
    CAPTURE(method_name(method));
    CHECK(traces_equal_modulo_time(a, b));
  }
}

TEST_CASE("with an exact sub-solver each accepted move is plan-optimal") {
  auto g = testsupport::rng(84);
  QapProblem problem(random_qap(6, g));
  RunConfig cfg = small_cfg(Method::uqubols, 5);
  cfg.exact_subsolver = true;
  cfg.max_iters = 1;

  Permutation current = Permutation::random(6, g);
  for (int iter = 0; iter < 5; ++iter) {
    RunTrace trace = run_uqubols(problem, cfg, current);
    // Recreate the (deterministic) greedy plan and enumerate its decodes.
    ExchangePlan plan = greedy_select_pairs(problem.instance(), current, cfg.annealer.capacity);
    Rational best = problem.objective(current);
    for (std::uint64_t v = 0; v < (1ULL << plan.pairs.size()); ++v) {
      Rational obj = problem.objective(
          decode_uqubols(plan, BitString::from_index(v, plan.pairs.size())));
      if (obj < best) best = obj;
    }
    CHECK(trace.final_objective == best);
    current = problem.parse_solution(trace.final_solution);
  }
}

TEST_CASE("qls with the whole problem in one subset solves small QAPs exactly") {
  auto g = testsupport::rng(85);
  QapInstance inst = random_qap(5, g);
  QapProblem problem(inst);

  // Exhaustive optimum over all 120 permutations.
  std::vector<std::uint32_t> image(5);
  std::iota(image.begin(), image.end(), 0u);
  Rational optimum = qap_objective(inst, Permutation(image));
  do {
    optimum = std::min(optimum, qap_objective(inst, Permutation(image)));
  } while (std::next_permutation(image.begin(), image.end()));

  RunConfig cfg = small_cfg(Method::qls, 3);
  cfg.k = 5;  // the whole problem in one block: 25 variables
  cfg.max_iters = 1;
  cfg.annealer.capacity = 25;
  cfg.annealer.mc_steps = 200000;
  cfg.annealer.num_replicas = 8;
  RunTrace trace = run_qls(problem, cfg, Permutation::random(5, g));
  CHECK(trace.final_objective == optimum);
  CHECK(trace.records.at(1).sub_qubo_vars == 25);
}

TEST_CASE("cqubols with an exact solver picks the better of keep and swap") {
  auto g = testsupport::rng(86);
  for (int t = 0; t < 10; ++t) {
    QapInstance inst = random_qap(6, g);
    QapProblem problem(inst);
    Permutation initial = Permutation::random(6, g);
    RunConfig cfg = small_cfg(Method::cqubols, static_cast<std::uint64_t>(t));
    cfg.k = 2;
    cfg.m = 1;
    cfg.exact_subsolver = true;
    cfg.max_iters = 1;
    RunTrace trace = run_cqubols(problem, cfg, initial);

    SubsetFamily family = make_subset_family(inst, initial, 2, 1);
    Permutation swapped = initial;
    swapped.swap_images(family.subsets[0][0], family.subsets[0][1]);
    Rational best = std::min(problem.objective(initial), problem.objective(swapped));
    CHECK(trace.final_objective == best);
  }
}

TEST_CASE("infeasible annealer output is rejected, objective unchanged") {
  auto g = testsupport::rng(87);
  QapProblem problem(random_qap(8, g));
  RunConfig cfg = small_cfg(Method::cqubols, 11);
  cfg.k = 2;
  cfg.m = 3;
  cfg.max_iters = 12;
  cfg.annealer.mc_steps = 0;  // the random start is returned untouched
  Permutation initial = Permutation::random(8, g);
  RunTrace trace = run_cqubols(problem, cfg, initial);
  CHECK(trace.infeasible_iterations > 0);
  for (const auto& rec : trace.records)
    if (!rec.feasible) {
      CHECK_FALSE(rec.accepted);
    }
  check_monotone(trace);
}

TEST_CASE("seeding the annealer bounds candidate energies by the incumbent's") {
  auto g = testsupport::rng(88);
  QapProblem problem(random_qap(9, g));
  Permutation initial = Permutation::random(9, g);
  for (Method method : {Method::uqubols, Method::cqubols}) {
    RunConfig cfg = small_cfg(method, 37);
    cfg.k = 2;
    cfg.m = 2;
    cfg.seed_annealer_with_current = true;
    RunTrace trace = run_method(problem, cfg, initial);
    CAPTURE(method_name(method));
    for (std::size_t t = 1; t < trace.records.size(); ++t)
      CHECK(trace.records[t].candidate_energy <= trace.records[t].current_energy);
  }
}

TEST_CASE("constrained sub-QUBO sizes follow min(m k^2, capacity)") {
  auto g = testsupport::rng(89);
  QapProblem problem(random_qap(12, g));
  Permutation initial = Permutation::random(12, g);

  RunConfig cfg = small_cfg(Method::cqubols, 2);
  cfg.k = 2;
  cfg.m = 3;
  cfg.max_iters = 2;
  RunTrace trace = run_cqubols(problem, cfg, initial);
  CHECK(trace.records.at(1).sub_qubo_vars == 12);

  cfg.annealer.capacity = 8;  // now only 2 blocks of 4 fit
  trace = run_cqubols(problem, cfg, initial);
  CHECK(trace.records.at(1).sub_qubo_vars == 8);

  cfg.annealer.capacity = 3;  // k^2 alone no longer fits
  CHECK_THROWS_AS(run_cqubols(problem, cfg, initial), ConfigError);
}

TEST_CASE("SA at zero temperature is hill climbing") {
  auto g = testsupport::rng(90);
  QapProblem problem(random_qap(7, g));
  RunConfig cfg = small_cfg(Method::sa, 19);
  cfg.max_iters = 500;
  cfg.annealer.temp_max = 1e-12;  // effectively zero: only improvements pass
  Permutation initial = Permutation::random(7, g);
  RunTrace trace = run_sa_baseline(problem, cfg, initial);
  check_monotone(trace);
  CHECK(trace.final_objective <= problem.objective(initial));
}

TEST_CASE("SA with a generous budget finds small optima most of the time") {
  int hits = 0;
  for (int t = 0; t < 10; ++t) {
    auto g = testsupport::rng(910 + static_cast<unsigned>(t));
    QapInstance inst = random_qap(5, g);
    QapProblem problem(inst);

    std::vector<std::uint32_t> image(5);
    std::iota(image.begin(), image.end(), 0u);
    Rational optimum = qap_objective(inst, Permutation(image));
    do {
      optimum = std::min(optimum, qap_objective(inst, Permutation(image)));
    } while (std::next_permutation(image.begin(), image.end()));

    RunConfig cfg = small_cfg(Method::sa, static_cast<std::uint64_t>(t));
    cfg.max_iters = 4000;
    auto init_rng = testsupport::rng(1000 + static_cast<unsigned>(t));
    Permutation initial = problem.random_solution(init_rng);
    if (run_sa_baseline(problem, cfg, initial).final_objective == optimum) ++hits;
  }
  CHECK(hits >= 8);
}

TEST_CASE("unsupported method/problem combinations fail loudly") {
  auto g = testsupport::rng(92);
  TspProblem tsp(testsupport::random_tsp(6, g));
  RunConfig cfg = small_cfg(Method::cqubols, 1);
  CHECK_THROWS_AS(run_cqubols(tsp, cfg, Tour::random(6, g)), ConfigError);

  GpProblem gp(testsupport::random_graph(6, 0.5, g), 2);
  CHECK_THROWS_AS(run_qls(gp, cfg, Partition::random_balanced(6, 2, g)), ConfigError);
}

TEST_CASE("uqubols drives all four problem families") {
  auto g = testsupport::rng(93);

  SUBCASE("tsp") {
    TspProblem problem(testsupport::random_tsp(10, g));
    RunConfig cfg = small_cfg(Method::uqubols, 21);
    cfg.k = 4;
    RunTrace trace = run_uqubols(problem, cfg, Tour::random(10, g));
    check_monotone(trace);
    CHECK(trace.records.at(1).sub_qubo_vars == 4);
  }

  SUBCASE("gp") {
    WeightedGraph graph = testsupport::random_graph(12, 0.5, g);
    GpProblem problem(graph, 3);
    RunConfig cfg = small_cfg(Method::uqubols, 22);
    RunTrace trace = run_uqubols(problem, cfg, Partition::random_balanced(12, 3, g));
    check_monotone(trace);
  }

  SUBCASE("m2sp with spectral initialization") {
    M2spProblem problem(circular_ladder_graph(6));
    RunConfig cfg = small_cfg(Method::uqubols, 23);
    cfg.init = InitPolicy::spectral;
    RunTrace trace = run_method(problem, cfg);
    check_monotone(trace);
    CHECK(trace.initial_objective ==
          two_sum_objective(problem.graph(), problem.spectral_solution()));
  }
}

TEST_CASE("trace JSONL has one record per line") {
  auto g = testsupport::rng(94);
  QapProblem problem(random_qap(5, g));
  RunConfig cfg = small_cfg(Method::uqubols, 31);
  cfg.max_iters = 3;
  RunTrace trace = run_uqubols(problem, cfg, Permutation::random(5, g));
  std::string jsonl = trace_to_jsonl(trace);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 4);
  CHECK(jsonl.find("\"iteration\":0") != std::string::npos);
  CHECK(jsonl.find("\"accepted\":") != std::string::npos);
}
