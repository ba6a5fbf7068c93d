#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "qubols/harness.hpp"
#include "support.hpp"

using namespace qubols;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("qubols-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_instance(const fs::path& dir, const std::string& name,
                        const std::string& body) {
  fs::path p = dir / name;
  std::ofstream out(p);
  out << body;
  return p;
}

RunConfig quick_method(Method m, std::size_t iters = 4) {
  RunConfig cfg;
  cfg.method = m;
  cfg.max_iters = m == Method::sa ? 50 : iters;
  cfg.annealer.mc_steps = 400;
  cfg.annealer.num_replicas = 2;
  return cfg;
}

std::string small_qap_text() {
  auto g = testsupport::rng(101);
  return write_qaplib(testsupport::random_qap(6, g));
}

}  // namespace

TEST_CASE("empty method list produces a header-only summary") {
  fs::path dir = fresh_dir("empty-methods");
  fs::path inst = write_instance(dir, "inst.dat", small_qap_text());
  BenchmarkSpec spec;
  spec.instances.push_back({inst.string(), ProblemKind::qap, ""});
  spec.out_dir = (dir / "out").string();
  BenchmarkResult result = run_benchmark(spec);
  CHECK(result.exit_code == 0);
  CHECK(slurp(dir / "out" / "summary.csv") ==
        "instance,method,seed,status,initial_objective,final_objective,ratio,iterations\n");
}

TEST_CASE("all methods in a repetition share the initial solution") {
  fs::path dir = fresh_dir("shared-initial");
  fs::path inst = write_instance(dir, "inst.dat", small_qap_text());
  BenchmarkSpec spec;
  spec.instances.push_back({inst.string(), ProblemKind::qap, ""});
  spec.methods = {quick_method(Method::uqubols), quick_method(Method::sa)};
  spec.repetitions = 2;
  spec.base_seed = 5;
  BenchmarkResult result = run_benchmark(spec);
  REQUIRE(result.rows.size() == 4);
  // Rows are ordered method-major, reps ascending within a method.
  CHECK(result.rows[0].initial_objective == result.rows[2].initial_objective);
  CHECK(result.rows[1].initial_objective == result.rows[3].initial_objective);
  CHECK(result.rows[0].seed == 5);
  CHECK(result.rows[1].seed == 6);
  // Different repetitions draw different starts (overwhelmingly likely).
  CHECK(result.rows[0].initial_objective != result.rows[1].initial_objective);
}

TEST_CASE("identical specs reproduce byte-identical summary and plot bodies") {
  fs::path dir = fresh_dir("determinism");
  fs::path inst = write_instance(dir, "ring.edges",
                                 "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n1 4\n");
  BenchmarkSpec spec;
  spec.instances.push_back({inst.string(), ProblemKind::gp, ""});
  spec.methods = {quick_method(Method::uqubols), quick_method(Method::sa)};
  spec.repetitions = 2;
  spec.base_seed = 11;
  spec.gp_parts = 2;
  spec.out_dir = (dir / "out1").string();
  run_benchmark(spec);
  spec.out_dir = (dir / "out2").string();
  run_benchmark(spec);
  CHECK(slurp(dir / "out1" / "summary.csv") == slurp(dir / "out2" / "summary.csv"));
  CHECK(slurp(dir / "out1" / "plot-ring.csv") == slurp(dir / "out2" / "plot-ring.csv"));
  CHECK(fs::exists(dir / "out1" / "timings.csv"));
  CHECK(fs::exists(dir / "out1" / "run-metadata.json"));
  CHECK(fs::exists(dir / "out1" / "trace-ring-uqubols-11.jsonl"));
  CHECK(fs::exists(dir / "out1" / "trace-ring-sa-12.jsonl"));
}

TEST_CASE("the ratio column appears exactly when best-known values are given") {
  fs::path dir = fresh_dir("ratios");
  fs::path inst = write_instance(dir, "inst.dat", small_qap_text());

  BenchmarkSpec spec;
  spec.instances.push_back({inst.string(), ProblemKind::qap, ""});
  spec.methods = {quick_method(Method::uqubols)};
  spec.out_dir = (dir / "out").string();

  SUBCASE("without best-known") {
    BenchmarkResult result = run_benchmark(spec);
    CHECK_FALSE(result.rows[0].ratio.has_value());
    CHECK(slurp(dir / "out" / "plot-inst.csv").rfind("method,seed,iteration,objective\n", 0) ==
          0);
  }

  SUBCASE("with best-known") {
    spec.best_known = parse_best_known("inst 100\nother 5\n");
    BenchmarkResult result = run_benchmark(spec);
    REQUIRE(result.rows[0].ratio.has_value());
    CHECK(*result.rows[0].ratio ==
          doctest::Approx(result.rows[0].final_objective->to_double() / 100.0));
    CHECK(slurp(dir / "out" / "plot-inst.csv")
              .rfind("method,seed,iteration,objective,ratio\n", 0) == 0);
  }

  SUBCASE("non-positive best-known values are ignored") {
    spec.best_known = parse_best_known("inst 0\n");
    BenchmarkResult result = run_benchmark(spec);
    CHECK_FALSE(result.rows[0].ratio.has_value());
  }
}

TEST_CASE("plot emission") {
  SUBCASE("one record per row plus a header") {
    RunTrace trace;
    trace.records.push_back({0, Rational(9), 0, 0, true, true, Rational(9), Rational(9), 0.0});
    trace.records.push_back({1, Rational(7), 3, 10, true, true, Rational(7), Rational(9), 0.0});
    trace.records.push_back({2, Rational(7), 3, 10, false, true, Rational(8), Rational(7), 0.0});
    std::vector<TracedRun> runs{{"inst", "uqubols", 1, trace}};
    std::string csv = emit_plot_data(runs, std::nullopt);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 records
  }

  SUBCASE("two methods keep distinct series labels") {
    RunTrace trace;
    trace.records.push_back({0, Rational(5), 0, 0, true, true, Rational(5), Rational(5), 0.0});
    std::vector<TracedRun> runs{{"inst", "uqubols", 1, trace}, {"inst", "sa", 1, trace}};
    std::string csv = emit_plot_data(runs, std::nullopt);
    CHECK(csv.find("uqubols,1,0,5") != std::string::npos);
    CHECK(csv.find("sa,1,0,5") != std::string::npos);
  }

  SUBCASE("mixed instances are rejected") {
    RunTrace trace;
    trace.records.push_back({0, Rational(5), 0, 0, true, true, Rational(5), Rational(5), 0.0});
    std::vector<TracedRun> runs{{"a", "sa", 1, trace}, {"b", "sa", 1, trace}};
    CHECK_THROWS_AS(emit_plot_data(runs, std::nullopt), Error);
  }
}

TEST_CASE("unreadable instances produce error rows and drive the exit code") {
  fs::path dir = fresh_dir("errors");
  fs::path good = write_instance(dir, "good.dat", small_qap_text());

  BenchmarkSpec spec;
  spec.instances.push_back({(dir / "missing.dat").string(), ProblemKind::qap, ""});
  spec.instances.push_back({good.string(), ProblemKind::qap, ""});
  spec.methods = {quick_method(Method::uqubols)};
  BenchmarkResult result = run_benchmark(spec);
  CHECK(result.exit_code == 0);  // one instance still succeeded
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].status.rfind("error:", 0) == 0);
  CHECK(result.rows[1].status == "ok");

  spec.instances.pop_back();
  BenchmarkResult all_fail = run_benchmark(spec);
  CHECK(all_fail.exit_code == 1);
}

TEST_CASE("duplicate method names get disambiguated labels") {
  fs::path dir = fresh_dir("labels");
  fs::path inst = write_instance(dir, "inst.dat", small_qap_text());
  BenchmarkSpec spec;
  spec.instances.push_back({inst.string(), ProblemKind::qap, ""});
  RunConfig a = quick_method(Method::uqubols);
  RunConfig b = quick_method(Method::uqubols);
  b.annealer.mc_steps = 800;
  spec.methods = {a, b};
  BenchmarkResult result = run_benchmark(spec);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].method != result.rows[1].method);
}

TEST_CASE("worker pools do not change results") {
  fs::path dir = fresh_dir("jobs");
  fs::path inst = write_instance(dir, "inst.dat", small_qap_text());
  BenchmarkSpec spec;
  spec.instances.push_back({inst.string(), ProblemKind::qap, ""});
  spec.methods = {quick_method(Method::uqubols), quick_method(Method::sa)};
  spec.repetitions = 3;
  BenchmarkResult serial = run_benchmark(spec);
  spec.jobs = 4;
  BenchmarkResult parallel = run_benchmark(spec);
  CHECK(summary_to_csv(serial.rows) == summary_to_csv(parallel.rows));
}

TEST_CASE("best-known sidecar parsing") {
  auto values = parse_best_known("# comment\ntai12a 224416\nladder 487\n");
  CHECK(values.at("tai12a") == Rational(224416));
  CHECK(values.at("ladder") == Rational(487));
  CHECK_THROWS_AS(parse_best_known("name\n"), ParseError);
  CHECK_THROWS_AS(parse_best_known("name 1 2\n"), ParseError);
}

TEST_CASE("problem kind names round-trip") {
  for (auto kind : {ProblemKind::qap, ProblemKind::m2sp, ProblemKind::tsp, ProblemKind::gp})
    CHECK(parse_problem_kind(problem_kind_name(kind)) == kind);
  CHECK_THROWS_AS(parse_problem_kind("sudoku"), ConfigError);
}
