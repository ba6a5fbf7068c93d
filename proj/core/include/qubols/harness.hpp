#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qubols/driver.hpp"
#include "qubols/problems.hpp"

namespace qubols {

enum class ProblemKind { qap, m2sp, tsp, gp };

std::string problem_kind_name(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view name);

/// A run matrix: instances x methods x repetitions. Every method in a
/// repetition starts from the same shared initial solution; repetition seeds
/// are base_seed + rep.
struct BenchmarkSpec {
  struct Instance {
    std::string path;
    ProblemKind kind = ProblemKind::qap;
    std::string name;  ///< empty = file stem
  };

  std::vector<Instance> instances;
  std::vector<RunConfig> methods;
  std::size_t repetitions = 1;
  std::uint64_t base_seed = 0;
  InitPolicy init = InitPolicy::random_init;
  std::string given_init_path;  ///< initial-solution file for init = given
  std::map<std::string, Rational> best_known;
  std::string out_dir;  ///< empty = keep results in memory only
  std::uint32_t gp_parts = 2;
  DistanceRounding tsp_rounding = DistanceRounding::none;
  std::size_t jobs = 1;
};

/// Sidecar of best-known values, lines "instance-name value".
std::map<std::string, Rational> parse_best_known(std::string_view text);

struct SummaryRow {
  std::string instance;
  std::string method;
  std::uint64_t seed = 0;
  std::string status = "ok";
  std::optional<Rational> initial_objective;
  std::optional<Rational> final_objective;
  std::optional<double> ratio;  ///< final / best-known, when best-known > 0
  std::size_t iterations = 0;
  double wall_ms = 0.0;  ///< written to timings.csv, never to summary.csv
};

struct TracedRun {
  std::string instance;
  std::string method;
  std::uint64_t seed = 0;
  RunTrace trace;
};

struct BenchmarkResult {
  std::vector<SummaryRow> rows;
  std::vector<TracedRun> traces;
  int exit_code = 0;
};

/// Executes the matrix; when out_dir is set, writes summary.csv, timings.csv,
/// run-metadata.json, trace-<instance>-<method>-<seed>.jsonl per run and
/// plot-<instance>.csv per instance. summary.csv and the plot files are
/// byte-reproducible for identical specs; wall times and timestamps live in
/// the sidecar files.
BenchmarkResult run_benchmark(const BenchmarkSpec& spec);

/// Deterministic CSV body (no wall times).
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

/// Long-format per-iteration series for one instance:
/// method,seed,iteration,objective[,ratio]. Mixing instances is an error; the
/// ratio column appears iff a positive best-known value is supplied.
std::string emit_plot_data(const std::vector<TracedRun>& runs,
                           const std::optional<Rational>& best_known);

}  // namespace qubols
