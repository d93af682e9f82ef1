#pragma once

// Experiment orchestration: the built-in multitask test cases, seeded
// repetitions, one JSON record per run, and report tables regenerated from
// the persisted records.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfo/analysis.hpp"
#include "mfo/problem.hpp"
#include "mfo/run_results.hpp"
#include "mfo/tsplib.hpp"

namespace mfo::bench {

struct TestCase {
  std::string id;
  std::vector<std::string> task_names;
};

/// The 15 kro-family bundles (10 with four tasks, 4 with six, 1 with eight).
const std::vector<TestCase>& builtin_test_cases();

/// Throws ConfigError for an unknown id.
const TestCase& find_case(const std::string& id);

/// Every instance name used by the built-in cases, in first-use order of TC_8.
std::vector<std::string> builtin_instance_names();

/// Published optimal tour lengths for the kro-family instances.
std::optional<Cost> known_optimum(const std::string& instance);

/// Loads `<dir>/<name>.tsp` files once and shares them between runs.
class InstanceLibrary {
 public:
  explicit InstanceLibrary(std::filesystem::path directory);

  std::shared_ptr<const tsp::TspInstance> get(const std::string& name);
  MultitaskProblem problem_for(const TestCase& test_case);

  /// Names whose `.tsp` file does not exist.
  std::vector<std::string> missing(const std::vector<std::string>& names) const;

  const std::filesystem::path& directory() const { return directory_; }

 private:
  std::filesystem::path directory_;
  std::map<std::string, std::shared_ptr<const tsp::TspInstance>> cache_;
};

enum class Solver { kMfcga, kMfea };

std::string solver_name(Solver s);
Solver parse_solver(const std::string& name);

struct ExperimentConfig {
  std::vector<std::string> case_ids{"TC_8"};
  std::vector<Solver> solvers{Solver::kMfcga, Solver::kMfea};
  std::size_t repetitions = 20;
  std::uint64_t evaluation_budget = 500'000;
  std::uint64_t base_seed = 1;
  std::size_t population_size = 200;
  std::filesystem::path instance_directory;
  std::filesystem::path output_directory;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

/// Seed of repetition r (0-based).
inline std::uint64_t run_seed(std::uint64_t base_seed, std::size_t repetition) {
  return base_seed + repetition;
}

/// Runs one solver on one case.
RunResults run_single(Solver solver, const TestCase& test_case, const MultitaskProblem& problem,
                      std::uint64_t budget, std::uint64_t seed, std::size_t population_size);

/// File name of the record for (solver, case, seed).
std::string record_name(const std::string& solver, const std::string& case_id, std::uint64_t seed);

struct ExperimentOutcome {
  std::size_t executed = 0;
  std::size_t reused = 0;  // records already on disk from an earlier, interrupted invocation
  std::vector<std::filesystem::path> records;
};

using ProgressFn = std::function<void(const std::string& message)>;

/// Executes every (case, solver, repetition) not already recorded, writing
/// `<out>/runs/<solver>__<case>__<seed>.json` and wall times under
/// `<out>/timings/`. Fails fast (ConfigError) when an instance file is
/// missing. Runs execute concurrently; records do not depend on scheduling.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

struct LoadedRecords {
  std::vector<RunResults> runs;
  std::vector<std::string> warnings;  // skipped corrupt records
};

/// Reads every `*.json` record under `<dir>/runs` (or `dir` itself), sorted by file name.
LoadedRecords load_records(const std::filesystem::path& results_dir);

struct SummaryRow {
  std::string case_id;
  std::string instance;
  std::string solver;
  analysis::SampleSummary stats;
  std::optional<Cost> optimum;
  double max_evaluations = 0;
};

struct ComparisonRow {
  std::string case_id;
  std::string instance;
  double mfcga_mean = 0.0;
  double mfea_mean = 0.0;
  bool mfcga_wins = false;
  std::optional<analysis::RankSumResult> test;  // when both sides have >= 2 runs
};

struct TransferTable {
  std::string case_id;
  std::string solver;
  std::vector<std::string> instances;
  std::size_t runs = 0;
  analysis::Matrix mean;
};

struct Report {
  std::vector<SummaryRow> summary;
  std::vector<ComparisonRow> comparison;
  std::vector<TransferTable> transfer;
  std::vector<std::string> warnings;
  std::size_t run_count = 0;
};

Report build_report(const LoadedRecords& records);

enum class Format { kCsv, kText };

/// CSV files written into `dir`: summary.csv, comparison.csv, and
/// transfer_<case>_<solver>.csv per table.
void write_report_csv(const Report& report, const std::filesystem::path& dir);

std::string format_report_text(const Report& report);

/// K x K CSV with instance-name header row and first column.
std::string matrix_csv(const std::vector<std::string>& names, const analysis::Matrix& m,
                       int precision);

struct ComplementarityTables {
  std::vector<std::string> instances;
  analysis::Matrix node_overlap;          // Dice metric
  analysis::Matrix node_overlap_min_dim;  // smaller-instance denominator
  std::optional<analysis::Matrix> solution_overlap;
  std::vector<std::string> warnings;
};

/// Node overlap for every pair of `names`; best-solution overlap when a tour
/// is available for each instance (`<best_tours_dir>/<name>.opt.tour`, or a
/// supplied tour in `extra_tours`). Pairs lacking a tour are reported in
/// warnings and left at NaN.
ComplementarityTables complementarity(InstanceLibrary& library, const std::vector<std::string>& names,
                                      const std::optional<std::filesystem::path>& best_tours_dir,
                                      const std::map<std::string, tsp::Tour>& extra_tours = {});

std::string fixed(double v, int precision);

}  // namespace mfo::bench
