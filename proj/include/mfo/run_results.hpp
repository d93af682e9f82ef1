#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfo/problem.hpp"
#include "mfo/tsplib.hpp"

namespace mfo {

/// counts(src, dst): crossover-winning replacements where the donor's skill
/// factor is src and the improved individual's is dst. The diagonal holds
/// intra-task exchanges.
class TransferLedger {
 public:
  TransferLedger() = default;
  explicit TransferLedger(std::size_t task_count)
      : size_(task_count), counts_(task_count * task_count, 0) {}

  std::size_t size() const { return size_; }
  std::uint64_t operator()(TaskIndex src, TaskIndex dst) const { return counts_[src * size_ + dst]; }
  void record(TaskIndex src, TaskIndex dst) { ++counts_[src * size_ + dst]; }
  void set(TaskIndex src, TaskIndex dst, std::uint64_t v) { counts_[src * size_ + dst] = v; }
  std::uint64_t total() const;
  std::uint64_t off_diagonal_total() const;

  friend bool operator==(const TransferLedger&, const TransferLedger&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> counts_;
};

struct TrajectoryPoint {
  std::uint64_t evaluations = 0;
  Cost best_cost = kUnevaluated;
  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct TaskOutcome {
  std::string instance;
  Cost best_cost = kUnevaluated;
  tsp::Tour best_tour;
  std::vector<TrajectoryPoint> trajectory;
};

struct RunResults {
  std::string solver;
  std::string case_id;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::size_t population_size = 0;
  std::uint64_t evaluations_used = 0;
  std::uint64_t iterations = 0;  // step_cell calls (mfcga) or generations (mfea)
  std::vector<TaskOutcome> tasks;
  TransferLedger ledger;
  std::vector<std::string> invariant_violations;
  std::map<std::string, std::string> metadata;
  // Not part of the persisted record: it differs between otherwise identical runs.
  double wall_time_seconds = 0.0;

  /// Appends one trajectory point per task from the evaluator's best-so-far.
  void sample_trajectory(const Evaluator& evaluator);
};

/// Copies best costs/tours out of the evaluator and fills instance names.
void collect_best(RunResults& results, const Evaluator& evaluator);

/// Self-describing JSON record (everything except wall time).
std::string to_record(const RunResults& results);

/// Inverse of to_record. Throws ParseError on malformed or inconsistent input.
RunResults from_record(const std::string& text);

}  // namespace mfo
