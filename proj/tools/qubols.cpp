// Command line front end: single runs per problem family plus a benchmark
// matrix runner emitting summary/trace/plot files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qubols/harness.hpp"

namespace {

struct CommonOptions {
  std::string method = "uqubols";
  std::size_t k = 0;
  std::size_t m = 1;
  std::size_t iters = 30;
  std::uint64_t mc_steps = 100000;
  std::size_t replicas = 8;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string init = "random";
  bool seed_annealer = false;
  std::size_t capacity = 1024;
  std::string best_known_path;
  std::string out_dir = "qubols-out";
  std::string selection = "greedy";
  std::uint32_t parts = 2;
  std::string rounding = "none";
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--method", opt.method, "Method: uqubols|cqubols|qls|sa");
  cmd->add_option("--k", opt.k, "Subset size for cqubols/qls (0 = method default)");
  cmd->add_option("--m", opt.m, "Subset count for cqubols");
  cmd->add_option("--iters", opt.iters, "Outer iteration budget (SA: step budget)");
  cmd->add_option("--mc-steps", opt.mc_steps, "Annealer MC steps per sub-QUBO");
  cmd->add_option("--replicas", opt.replicas, "Parallel-tempering replica count");
  cmd->add_option("--seed", opt.seed, "Base seed (falls back to QUBOLS_SEED)")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  cmd->add_option("--init", opt.init, "Initial solution: random|spectral|given:<file>");
  cmd->add_flag("--seed-annealer", opt.seed_annealer,
                "Seed each sub-QUBO with the current solution's encoding");
  cmd->add_option("--capacity", opt.capacity, "Annealer variable capacity");
  cmd->add_option("--best-known", opt.best_known_path,
                  "Sidecar file of best-known values ('name value' lines)");
  cmd->add_option("--out", opt.out_dir, "Output directory");
  cmd->add_option("--selection", opt.selection, "Subset selection: greedy|random");
  cmd->add_option("--parts", opt.parts, "Part count for graph partitioning");
  cmd->add_option("--round", opt.rounding,
                  "TSP coordinate rounding: none|nearest");
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qubols::Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

qubols::RunConfig make_run_config(const CommonOptions& opt, const std::string& method) {
  qubols::RunConfig cfg;
  cfg.method = qubols::parse_method(method);
  cfg.max_iters = opt.iters;
  cfg.k = opt.k;
  cfg.m = opt.m;
  cfg.annealer.mc_steps = opt.mc_steps;
  cfg.annealer.num_replicas = opt.replicas;
  cfg.annealer.capacity = opt.capacity;
  cfg.seed_annealer_with_current = opt.seed_annealer;
  if (opt.selection == "greedy")
    cfg.selection = qubols::SubsetSelection::greedy;
  else if (opt.selection == "random")
    cfg.selection = qubols::SubsetSelection::random_pick;
  else
    throw qubols::ConfigError("--selection must be greedy or random");
  return cfg;
}

std::uint64_t resolve_seed(const CommonOptions& opt) {
  if (opt.seed_given) return opt.seed;
  if (const char* env = std::getenv("QUBOLS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw qubols::ConfigError("QUBOLS_SEED is not a valid integer");
    }
  }
  return opt.seed;
}

qubols::BenchmarkSpec make_spec(const CommonOptions& opt, qubols::ProblemKind kind,
                                const std::vector<std::string>& instances,
                                const std::vector<std::string>& methods, std::size_t reps,
                                std::size_t jobs) {
  qubols::BenchmarkSpec spec;
  for (const auto& path : instances) spec.instances.push_back({path, kind, ""});
  for (const auto& m : methods) spec.methods.push_back(make_run_config(opt, m));
  spec.repetitions = reps;
  spec.base_seed = resolve_seed(opt);
  spec.out_dir = opt.out_dir;
  spec.gp_parts = opt.parts;
  spec.jobs = jobs;

  if (opt.rounding == "none")
    spec.tsp_rounding = qubols::DistanceRounding::none;
  else if (opt.rounding == "nearest")
    spec.tsp_rounding = qubols::DistanceRounding::nearest_integer;
  else
    throw qubols::ConfigError("--round must be none or nearest");

  if (opt.init == "random") {
    spec.init = qubols::InitPolicy::random_init;
  } else if (opt.init == "spectral") {
    spec.init = qubols::InitPolicy::spectral;
  } else if (opt.init.rfind("given:", 0) == 0) {
    spec.init = qubols::InitPolicy::given;
    spec.given_init_path = opt.init.substr(6);
  } else {
    throw qubols::ConfigError("--init must be random, spectral or given:<file>");
  }

  if (!opt.best_known_path.empty())
    spec.best_known = qubols::parse_best_known(read_file_or_die(opt.best_known_path));
  return spec;
}

int report(const qubols::BenchmarkResult& result, const std::string& out_dir) {
  for (const auto& row : result.rows) {
    std::cout << row.instance << " " << row.method << " seed=" << row.seed;
    if (row.status == "ok") {
      std::cout << " initial=" << row.initial_objective->str()
                << " final=" << row.final_objective->str();
      if (row.ratio) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", *row.ratio);
        std::cout << " ratio=" << buf;
      }
      std::cout << " iters=" << row.iterations;
    } else {
      std::cout << " " << row.status;
    }
    std::cout << "\n";
  }
  if (!out_dir.empty()) std::cout << "results written to " << out_dir << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO local search toolkit: solve permutation and partition "
               "problems through small annealer-sized sub-QUBOs"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string instance_path;
  std::vector<std::string> bench_instances;
  std::string bench_kind = "qap";
  std::string bench_methods = "uqubols";
  std::size_t bench_reps = 1;
  std::size_t bench_jobs = 1;

  auto* run_qap = app.add_subcommand("run-qap", "Run one method on a QAPLIB instance");
  auto* run_m2sp = app.add_subcommand("run-m2sp", "Run one method on an edge-list 2-sum instance");
  auto* run_tsp = app.add_subcommand("run-tsp", "Run one method on a TSP instance");
  auto* run_gp = app.add_subcommand("run-gp", "Run one method on a partitioning instance");
  for (auto* cmd : {run_qap, run_m2sp, run_tsp, run_gp}) {
    cmd->add_option("instance", instance_path, "Instance file")->required();
    add_common_flags(cmd, opt);
  }

  auto* bench = app.add_subcommand("bench", "Run an instances x methods x seeds matrix");
  bench->add_option("--kind", bench_kind, "Problem kind: qap|m2sp|tsp|gp");
  bench->add_option("--instances", bench_instances, "Instance files")->required();
  bench->add_option("--methods", bench_methods, "Comma-separated method list");
  bench->add_option("--reps", bench_reps, "Repetitions (seeds base_seed..base_seed+reps-1)");
  bench->add_option("--jobs", bench_jobs, "Worker threads for independent runs");
  add_common_flags(bench, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      std::vector<std::string> methods;
      std::stringstream ms(bench_methods);
      std::string item;
      while (std::getline(ms, item, ','))
        if (!item.empty()) methods.push_back(item);
      auto spec = make_spec(opt, qubols::parse_problem_kind(bench_kind), bench_instances,
                            methods, bench_reps, bench_jobs);
      return report(qubols::run_benchmark(spec), spec.out_dir);
    }
    qubols::ProblemKind kind = qubols::ProblemKind::qap;
    if (run_m2sp->parsed()) kind = qubols::ProblemKind::m2sp;
    if (run_tsp->parsed()) kind = qubols::ProblemKind::tsp;
    if (run_gp->parsed()) kind = qubols::ProblemKind::gp;
    auto spec = make_spec(opt, kind, {instance_path}, {opt.method}, 1, 1);
    return report(qubols::run_benchmark(spec), spec.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
