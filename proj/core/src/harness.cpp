#include "qubols/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include "json.hpp"

namespace qubols {

namespace fs = std::filesystem;

std::string problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::qap: return "qap";
    case ProblemKind::m2sp: return "m2sp";
    case ProblemKind::tsp: return "tsp";
    case ProblemKind::gp: return "gp";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "qap") return ProblemKind::qap;
  if (name == "m2sp") return ProblemKind::m2sp;
  if (name == "tsp") return ProblemKind::tsp;
  if (name == "gp") return ProblemKind::gp;
  throw ConfigError("unknown problem kind '" + std::string(name) + "'");
}

std::map<std::string, Rational> parse_best_known(std::string_view text) {
  std::map<std::string, Rational> values;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, value, rest;
    if (!(ls >> name)) continue;
    if (!(ls >> value) || (ls >> rest))
      throw ParseError("best-known line " + std::to_string(line_no) +
                       ": expected 'instance-name value'");
    values[name] = Rational::parse(value);
  }
  return values;
}

namespace {

using ProblemVariant = std::variant<QapProblem, M2spProblem, TspProblem, GpProblem>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << body;
  }
  fs::rename(tmp, path);
}

ProblemVariant load_problem(const BenchmarkSpec::Instance& inst, const BenchmarkSpec& spec) {
  std::string text = read_file(inst.path);
  switch (inst.kind) {
    case ProblemKind::qap:
      return QapProblem(parse_qaplib(text));
    case ProblemKind::m2sp:
      return M2spProblem(parse_edge_list(text).graph);
    case ProblemKind::tsp: {
      // Matrix files start with the city count followed by n^2 entries;
      // coordinate files are two columns.
      std::istringstream probe(text);
      std::vector<std::string> tokens;
      std::string tok;
      while (probe >> tok) tokens.push_back(tok);
      bool looks_like_matrix = false;
      if (!tokens.empty()) {
        try {
          Rational head = Rational::parse(tokens[0]);
          looks_like_matrix = head.is_integer() && head.is_positive() &&
                              head <= Rational(1 << 20) &&
                              tokens.size() ==
                                  1 + static_cast<std::size_t>(head.numerator()) *
                                          static_cast<std::size_t>(head.numerator());
        } catch (const Error&) {
          looks_like_matrix = false;
        }
      }
      return TspProblem(looks_like_matrix ? parse_tsp_matrix(text)
                                          : parse_tsp_coords(text, spec.tsp_rounding));
    }
    case ProblemKind::gp:
      return GpProblem(parse_edge_list(text).graph, spec.gp_parts);
  }
  throw ConfigError("unknown problem kind");
}

std::string instance_display_name(const BenchmarkSpec::Instance& inst) {
  if (!inst.name.empty()) return inst.name;
  return fs::path(inst.path).stem().string();
}

std::string format_fixed6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::vector<std::string> method_labels(const std::vector<RunConfig>& methods) {
  std::vector<std::string> labels;
  labels.reserve(methods.size());
  for (const auto& cfg : methods)
    labels.push_back(cfg.label.empty() ? method_name(cfg.method) : cfg.label);
  // Disambiguate duplicates so trace filenames stay unique.
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (std::count(labels.begin(), labels.end(), labels[i]) > 1) {
      for (std::size_t j = 0; j < labels.size(); ++j)
        if (labels[j] == labels[i] && j != i) labels[j] += "-" + std::to_string(j);
      labels[i] += "-" + std::to_string(i);
    }
  return labels;
}

struct Cell {
  std::size_t instance_idx;
  std::size_t method_idx;
  std::size_t rep;
};

}  // namespace

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "instance,method,seed,status,initial_objective,final_objective,ratio,iterations\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.method << ',' << r.seed << ',' << r.status << ','
        << (r.initial_objective ? r.initial_objective->str() : "") << ','
        << (r.final_objective ? r.final_objective->str() : "") << ','
        << (r.ratio ? format_fixed6(*r.ratio) : "") << ',' << r.iterations << "\n";
  }
  return out.str();
}

std::string emit_plot_data(const std::vector<TracedRun>& runs,
                           const std::optional<Rational>& best_known) {
  for (const auto& run : runs)
    if (run.instance != runs.front().instance)
      throw Error("emit_plot_data: traces mix instances");
  const bool with_ratio = best_known.has_value() && best_known->is_positive();
  std::ostringstream out;
  out << "method,seed,iteration,objective";
  if (with_ratio) out << ",ratio";
  out << "\n";
  for (const auto& run : runs) {
    for (const auto& rec : run.trace.records) {
      out << run.method << ',' << run.seed << ',' << rec.iteration << ',' << rec.objective.str();
      if (with_ratio)
        out << ',' << format_fixed6((rec.objective / *best_known).to_double());
      out << "\n";
    }
  }
  return out.str();
}

BenchmarkResult run_benchmark(const BenchmarkSpec& spec) {
  BenchmarkResult result;
  const auto labels = method_labels(spec.methods);
  const std::size_t reps = std::max<std::size_t>(1, spec.repetitions);

  std::string given_text;
  if (spec.init == InitPolicy::given) {
    if (spec.given_init_path.empty())
      throw ConfigError("bench: init policy 'given' needs an initial-solution file");
    given_text = read_file(spec.given_init_path);
  }

  struct InstanceState {
    std::optional<ProblemVariant> problem;
    std::string error;
    std::string name;
  };
  std::vector<InstanceState> loaded(spec.instances.size());
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    loaded[i].name = instance_display_name(spec.instances[i]);
    try {
      loaded[i].problem = load_problem(spec.instances[i], spec);
    } catch (const std::exception& e) {
      loaded[i].error = e.what();
    }
  }

  // One run per (instance, method, repetition); results land in fixed slots
  // so worker threads cannot perturb output order.
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    if (!loaded[i].problem) continue;
    for (std::size_t j = 0; j < spec.methods.size(); ++j)
      for (std::size_t r = 0; r < reps; ++r) cells.push_back({i, j, r});
  }
  std::vector<SummaryRow> cell_rows(cells.size());
  std::vector<TracedRun> cell_traces(cells.size());

  auto run_cell = [&](std::size_t c) {
    const Cell& cell = cells[c];
    const auto& inst_state = loaded[cell.instance_idx];
    const std::uint64_t rep_seed = spec.base_seed + cell.rep;
    RunConfig cfg = spec.methods[cell.method_idx];
    cfg.seed = derive_seed(derive_seed(rep_seed, cell.instance_idx), cell.method_idx);
    cfg.init = spec.init;

    SummaryRow row;
    row.instance = inst_state.name;
    row.method = labels[cell.method_idx];
    row.seed = rep_seed;
    TracedRun traced{row.instance, row.method, rep_seed, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      std::visit(
          [&](const auto& problem) {
            using P = std::decay_t<decltype(problem)>;
            typename P::Solution initial = [&] {
              if (spec.init == InitPolicy::given) return problem.parse_solution(given_text);
              RunConfig init_cfg = cfg;
              // Shared per-repetition start: every method sees the same one.
              init_cfg.seed = derive_seed(rep_seed, 0xD00 + cell.instance_idx);
              init_cfg.init = spec.init;
              return make_initial_solution(problem, init_cfg);
            }();
            traced.trace = run_method(problem, cfg, initial);
          },
          *inst_state.problem);
      row.initial_objective = traced.trace.initial_objective;
      row.final_objective = traced.trace.final_objective;
      row.iterations = traced.trace.iterations_used;
      auto bk = spec.best_known.find(row.instance);
      if (bk != spec.best_known.end() && bk->second.is_positive())
        row.ratio = (*row.final_objective / bk->second).to_double();
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    cell_rows[c] = std::move(row);
    cell_traces[c] = std::move(traced);
  };

  const std::size_t jobs = std::max<std::size_t>(1, spec.jobs);
  if (jobs == 1 || cells.size() <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < std::min(jobs, cells.size()); ++w)
      workers.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < cells.size(); c = next.fetch_add(1))
          run_cell(c);
      });
    for (auto& t : workers) t.join();
  }

  // Assemble rows in (instance, method, rep) order, error rows in place.
  std::size_t cursor = 0;
  std::size_t failed_instances = 0;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    if (!loaded[i].problem) {
      ++failed_instances;
      SummaryRow row;
      row.instance = loaded[i].name;
      row.method = "-";
      row.status = "error: " + loaded[i].error;
      result.rows.push_back(std::move(row));
      continue;
    }
    for (std::size_t j = 0; j < spec.methods.size(); ++j)
      for (std::size_t r = 0; r < reps; ++r) {
        result.rows.push_back(cell_rows[cursor]);
        result.traces.push_back(std::move(cell_traces[cursor]));
        ++cursor;
      }
  }
  result.exit_code =
      (!spec.instances.empty() && failed_instances == spec.instances.size()) ? 1 : 0;

  if (!spec.out_dir.empty()) {
    fs::create_directories(spec.out_dir);
    const fs::path out(spec.out_dir);
    write_file_atomic(out / "summary.csv", summary_to_csv(result.rows));

    std::ostringstream timings;
    timings << "instance,method,seed,wall_ms\n";
    for (const auto& r : result.rows)
      timings << r.instance << ',' << r.method << ',' << r.seed << ','
              << format_fixed6(r.wall_ms) << "\n";
    write_file_atomic(out / "timings.csv", timings.str());

    const auto now = std::chrono::system_clock::now().time_since_epoch();
    nlohmann::json meta{
        {"timestamp_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
        {"instances", spec.instances.size()},
        {"methods", spec.methods.size()},
        {"repetitions", reps},
        {"base_seed", spec.base_seed},
    };
    write_file_atomic(out / "run-metadata.json", meta.dump(2) + "\n");

    for (const auto& traced : result.traces) {
      std::string name =
          "trace-" + traced.instance + "-" + traced.method + "-" + std::to_string(traced.seed) +
          ".jsonl";
      write_file_atomic(out / name, trace_to_jsonl(traced.trace));
    }
    for (std::size_t i = 0; i < spec.instances.size(); ++i) {
      if (!loaded[i].problem) continue;
      std::vector<TracedRun> instance_traces;
      for (const auto& traced : result.traces)
        if (traced.instance == loaded[i].name) instance_traces.push_back(traced);
      std::optional<Rational> bk;
      if (auto it = spec.best_known.find(loaded[i].name); it != spec.best_known.end())
        bk = it->second;
      write_file_atomic(out / ("plot-" + loaded[i].name + ".csv"),
                        emit_plot_data(instance_traces, bk));
    }
  }
  return result;
}

}  // namespace qubols
