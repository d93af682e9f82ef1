#pragma once

// Multifactorial cellular GA: a toroidal grid population where each cell
// mates only with its Moore neighbours, is evaluated only on its own skill
// factor, and is replaced only by a strictly better offspring.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mfo/operators.hpp"
#include "mfo/problem.hpp"
#include "mfo/rng.hpp"
#include "mfo/run_results.hpp"

namespace mfo::cellular {

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// rows x cols torus. Both sides must be at least 3, otherwise wraparound
/// would make some of the 8 Moore neighbours coincide.
class GridTopology {
 public:
  GridTopology(std::size_t rows, std::size_t cols);

  /// Most-square factorisation of population_size with both sides >= 3
  /// (200 -> 10 x 20). Throws ConfigError when none exists.
  static GridTopology for_population(std::size_t population_size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }

  Cell cell(std::size_t index) const { return {index / cols_, index % cols_}; }
  std::size_t index(Cell c) const { return c.row * cols_ + c.col; }

  /// NW, N, NE, W, E, SW, S, SE with toroidal wrap, as row-major indices.
  std::array<std::size_t, 8> moore_neighbors(std::size_t index) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
};

struct EngineConfig {
  std::size_t population_size = 200;
  std::optional<GridTopology> grid;  // defaults to for_population(population_size)
  std::uint64_t evaluation_budget = 500'000;
  std::uint64_t seed = 1;
};

enum class Winner { kParent, kCrossover, kMutation };

/// Local improvement selection. An offspring replaces the parent only when
/// strictly better; between two equally good improving offspring the
/// crossover child wins.
Winner select_local_winner(Cost parent, Cost crossover, Cost mutation);

struct StepRecord {
  std::size_t cell = 0;
  std::size_t neighbor = 0;
  TaskIndex cell_task = 0;
  TaskIndex donor_task = 0;
  Cost parent_cost = kUnevaluated;
  Cost crossover_cost = kUnevaluated;
  Cost mutation_cost = kUnevaluated;
  Winner winner = Winner::kParent;

  bool transfer() const { return winner == Winner::kCrossover; }
};

class Engine {
 public:
  Engine(const MultitaskProblem& problem, EngineConfig config);

  /// Random permutations, full K-task evaluation, ranking and skill factors.
  /// Individuals are laid on the grid in population (row-major) order.
  void initialize();

  /// True when the budget still covers one more step_cell (two evaluations).
  bool can_step() const;

  /// One asynchronous update of `cell`. Requires initialize().
  StepRecord step_cell(std::size_t cell);

  /// initialize() followed by row-major sweeps until the budget is spent.
  RunResults run();

  const GridTopology& grid() const { return grid_; }
  std::span<const UnifiedIndividual> population() const { return population_; }
  const Evaluator& evaluator() const { return evaluator_; }
  const TransferLedger& ledger() const { return ledger_; }
  std::uint64_t steps() const { return steps_; }

 private:
  const MultitaskProblem& problem_;
  EngineConfig config_;
  GridTopology grid_;
  Rng rng_;
  Evaluator evaluator_;
  std::vector<UnifiedIndividual> population_;
  TransferLedger ledger_;
  std::uint64_t steps_ = 0;
  bool initialized_ = false;

  Genome crossover_child_;
  Genome mutation_child_;
  std::vector<std::uint8_t> seen_;

  std::vector<std::size_t> initial_skill_counts_;
  std::vector<std::string> violations_;
};

RunResults run(const MultitaskProblem& problem, const EngineConfig& config);

}  // namespace mfo::cellular
