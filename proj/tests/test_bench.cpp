#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "mfo/bench.hpp"
#include "mfo/errors.hpp"
#include "test_util.hpp"

using namespace mfo;
using namespace mfo::bench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("mfo_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.case_ids = {"TC_4_1"};
  cfg.repetitions = 2;
  cfg.evaluation_budget = 3000;
  cfg.population_size = 9;
  cfg.instance_directory = testing::data_dir();
  cfg.output_directory = out;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("built-in test cases") {
  const auto& cases = builtin_test_cases();
  CHECK(cases.size() == 15);
  std::map<std::size_t, int> by_size;
  std::set<std::string> ids;
  for (const auto& c : cases) {
    ++by_size[c.task_names.size()];
    ids.insert(c.id);
  }
  CHECK(ids.size() == 15);
  CHECK(by_size[4] == 10);
  CHECK(by_size[6] == 4);
  CHECK(by_size[8] == 1);
  CHECK(find_case("TC_4_1").task_names == std::vector<std::string>{"kroA100", "kroA150", "kroA200", "kroC100"});
  CHECK(find_case("TC_8").task_names.size() == 8);
  CHECK_THROWS_AS(find_case("TC_99"), ConfigError);
  InstanceLibrary lib(testing::data_dir());
  CHECK(lib.missing(builtin_instance_names()).empty());
  CHECK(known_optimum("kroA100") == 21282);
  CHECK_FALSE(known_optimum("berlin52"));
}

TEST_CASE("record round trip") {
  auto p = MultitaskProblem({testing::kro("kroA100"), testing::kro("kroA150")});
  TestCase tc{"X", {"kroA100", "kroA150"}};
  auto r = run_single(Solver::kMfcga, tc, p, 2000, 5, 9);
  const auto text = to_record(r);
  const auto back = from_record(text);
  CHECK(to_record(back) == text);
  CHECK(back.case_id == "X");
  CHECK(back.ledger == r.ledger);
  CHECK(back.tasks[1].best_tour.order == r.tasks[1].best_tour.order);
  CHECK_THROWS_AS(from_record("{not json"), ParseError);
  CHECK_THROWS_AS(from_record("{\"format\": \"something-else\"}"), ParseError);
}

TEST_CASE("repeated experiments give byte-identical records and reuse them") {
  TempDir a;
  TempDir b;
  auto cfg = small_config(a.path);
  const auto first = run_experiment(cfg);
  CHECK(first.executed == 4);
  CHECK(first.records.size() == 4);
  cfg.output_directory = b.path;
  cfg.threads = 1;
  run_experiment(cfg);
  for (const auto& rec : first.records) {
    CHECK(slurp(rec) == slurp(b.path / "runs" / rec.filename()));
  }
  CHECK(fs::exists(a.path / "runs" / record_name("mfcga", "TC_4_1", 1)));
  CHECK(fs::exists(a.path / "runs" / record_name("mfea", "TC_4_1", 2)));

  cfg.output_directory = a.path;
  const auto again = run_experiment(cfg);
  CHECK(again.executed == 0);
  CHECK(again.reused == 4);

  // A truncated record (interrupted write) is re-run.
  const auto victim = a.path / "runs" / record_name("mfea", "TC_4_1", 1);
  const auto good = slurp(victim);
  { std::ofstream(victim, std::ios::trunc) << good.substr(0, good.size() / 2); }
  const auto resumed = run_experiment(cfg);
  CHECK(resumed.executed == 1);
  CHECK(slurp(victim) == good);
}

TEST_CASE("missing instance files fail before any run") {
  TempDir out;
  TempDir empty;
  auto cfg = small_config(out.path);
  cfg.instance_directory = empty.path;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  CHECK_FALSE(fs::exists(out.path / "runs"));
}

TEST_CASE("reports from records") {
  TempDir empty;
  const auto none = build_report(load_records(empty.path));
  CHECK(none.run_count == 0);
  CHECK(format_report_text(none).find("0 runs") != std::string::npos);

  TempDir out;
  auto cfg = small_config(out.path);
  cfg.repetitions = 1;
  run_experiment(cfg);
  const auto rep1 = build_report(load_records(out.path));
  CHECK(rep1.run_count == 2);
  CHECK(rep1.summary.size() == 8);
  for (const auto& row : rep1.summary) {
    CHECK(row.stats.n == 1);
    CHECK(row.stats.mean == row.stats.best);
    CHECK(row.stats.stddev == 0.0);
  }
  CHECK(rep1.comparison.size() == 4);
  for (const auto& c : rep1.comparison) CHECK_FALSE(c.test.has_value());

  cfg.repetitions = 3;
  run_experiment(cfg);
  { std::ofstream(out.path / "runs" / "broken.json") << "{]"; }
  const auto loaded = load_records(out.path);
  CHECK(loaded.runs.size() == 6);
  CHECK(loaded.warnings.size() == 1);
  const auto rep = build_report(loaded);
  for (const auto& c : rep.comparison) {
    CHECK(c.test.has_value());
    CHECK(c.mfcga_wins == (c.mfcga_mean < c.mfea_mean));
  }
  // Summary means recomputed from the raw records match the report.
  for (const auto& row : rep.summary) {
    double sum = 0;
    int n = 0;
    for (const auto& r : loaded.runs) {
      if (r.solver != row.solver) continue;
      for (const auto& t : r.tasks) {
        if (t.instance == row.instance) {
          sum += static_cast<double>(t.best_cost);
          ++n;
        }
      }
    }
    CHECK(row.stats.mean == doctest::Approx(sum / n));
    CHECK(row.max_evaluations <= 3000);
  }
  write_report_csv(rep, out.path / "report");
  CHECK(fs::exists(out.path / "report" / "summary.csv"));
  CHECK(fs::exists(out.path / "report" / "transfer_TC_4_1_mfcga.csv"));
  CHECK(slurp(out.path / "report" / "report_notes.txt").find("broken.json") != std::string::npos);
}

TEST_CASE("budget of P*K summarizes the random initial population") {
  auto p = MultitaskProblem({testing::kro("kroA100"), testing::kro("kroB100")});
  TestCase tc{"X", {"kroA100", "kroB100"}};
  for (Solver s : {Solver::kMfcga, Solver::kMfea}) {
    const auto r = run_single(s, tc, p, 18, 3, 9);
    CHECK(r.iterations == 0);
    CHECK(r.evaluations_used == 18);
    for (const auto& t : r.tasks) CHECK(t.trajectory.size() == 1);
  }
}

TEST_CASE("complementarity tables") {
  InstanceLibrary lib(testing::data_dir());
  const auto names = builtin_instance_names();
  const auto t = complementarity(lib, names, testing::data_dir());
  CHECK(t.node_overlap.size == 8);
  CHECK(t.node_overlap(0, 0) == doctest::Approx(100.0));
  REQUIRE(t.solution_overlap);
  CHECK_FALSE(t.warnings.empty());  // only three instances ship an optimal tour
  const auto plain = complementarity(lib, names, std::nullopt);
  CHECK_FALSE(plain.solution_overlap);
}

TEST_CASE("solver names") {
  CHECK(parse_solver("mfcga") == Solver::kMfcga);
  CHECK(parse_solver("mfea") == Solver::kMfea);
  CHECK_THROWS_AS(parse_solver("ga"), ConfigError);
  CHECK(record_name("mfea", "TC_8", 3) == "mfea__TC_8__3.json");
}

}
