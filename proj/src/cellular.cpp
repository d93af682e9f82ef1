#include "mfo/cellular.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "mfo/errors.hpp"

namespace mfo::cellular {

GridTopology::GridTopology(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows < 3 || cols < 3) {
    throw ConfigError("grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " is too small for distinct Moore neighbours (need at least 3x3)");
  }
}

GridTopology GridTopology::for_population(std::size_t population_size) {
  const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(population_size)));
  for (std::size_t rows = root; rows >= 3; --rows) {
    if (population_size % rows == 0 && population_size / rows >= 3) {
      return GridTopology(rows, population_size / rows);
    }
  }
  throw ConfigError("population size " + std::to_string(population_size) +
                    " has no factorisation into a grid with both sides >= 3");
}

std::array<std::size_t, 8> GridTopology::moore_neighbors(std::size_t index) const {
  const Cell c = cell(index);
  const std::size_t up = (c.row + rows_ - 1) % rows_;
  const std::size_t down = (c.row + 1) % rows_;
  const std::size_t left = (c.col + cols_ - 1) % cols_;
  const std::size_t right = (c.col + 1) % cols_;
  return {
      up * cols_ + left,   up * cols_ + c.col,   up * cols_ + right,
      c.row * cols_ + left,                      c.row * cols_ + right,
      down * cols_ + left, down * cols_ + c.col, down * cols_ + right,
  };
}

Winner select_local_winner(Cost parent, Cost crossover, Cost mutation) {
  if (crossover < parent && crossover <= mutation) return Winner::kCrossover;
  if (mutation < parent) return Winner::kMutation;
  return Winner::kParent;
}

Engine::Engine(const MultitaskProblem& problem, EngineConfig config)
    : problem_(problem),
      config_(config),
      grid_(config.grid ? *config.grid : GridTopology::for_population(config.population_size)),
      rng_(config.seed),
      evaluator_(problem),
      ledger_(problem.task_count()) {
  if (grid_.size() != config_.population_size) {
    throw ConfigError("grid " + std::to_string(grid_.rows()) + "x" + std::to_string(grid_.cols()) +
                      " does not hold population " + std::to_string(config_.population_size));
  }
  const std::uint64_t init_cost =
      static_cast<std::uint64_t>(config_.population_size) * problem_.task_count();
  if (config_.evaluation_budget < init_cost) {
    throw ConfigError("evaluation budget " + std::to_string(config_.evaluation_budget) +
                      " cannot cover the initial evaluation of " + std::to_string(init_cost));
  }
  if (problem_.d_max() < 2) throw ConfigError("unified space needs at least two cities");
}

void Engine::initialize() {
  const std::size_t k_count = problem_.task_count();
  population_.clear();
  population_.reserve(config_.population_size);
  for (std::size_t i = 0; i < config_.population_size; ++i) {
    auto ind = UnifiedIndividual::unevaluated(ops::random_permutation(rng_, problem_.d_max()), k_count);
    evaluator_.evaluate_all(ind);
    population_.push_back(std::move(ind));
  }
  rank_population(population_, k_count);
  initial_skill_counts_ = skill_factor_counts(population_, k_count);
  initialized_ = true;
}

bool Engine::can_step() const { return evaluator_.evaluations() + 2 <= config_.evaluation_budget; }

StepRecord Engine::step_cell(std::size_t cell) {
  if (!initialized_) throw ConfigError("step_cell before initialize");
  auto& self = population_[cell];
  StepRecord rec;
  rec.cell = cell;
  rec.cell_task = self.skill_factor;
  rec.parent_cost = self.factorial_costs[self.skill_factor];

  const auto neighbors = grid_.moore_neighbors(cell);
  rec.neighbor = neighbors[static_cast<std::size_t>(rng_.below(neighbors.size()))];
  const auto& mate = population_[rec.neighbor];
  rec.donor_task = mate.skill_factor;

  const std::size_t n = self.genome.size();
  ops::order_crossover_into(self.genome, mate.genome, ops::random_cuts(rng_, n), crossover_child_, seen_);
  mutation_child_ = self.genome;
  ops::apply_two_opt(mutation_child_, ops::random_cuts(rng_, n));

  rec.crossover_cost = evaluator_.evaluate(crossover_child_, rec.cell_task);
  rec.mutation_cost = evaluator_.evaluate(mutation_child_, rec.cell_task);
  rec.winner = select_local_winner(rec.parent_cost, rec.crossover_cost, rec.mutation_cost);

  if (rec.winner != Winner::kParent) {
    const bool crossover = rec.winner == Winner::kCrossover;
    std::swap(self.genome, crossover ? crossover_child_ : mutation_child_);
    // Selective evaluation: only the cell's own task has a current cost.
    std::fill(self.factorial_costs.begin(), self.factorial_costs.end(), kUnevaluated);
    self.factorial_costs[rec.cell_task] = crossover ? rec.crossover_cost : rec.mutation_cost;
    if (crossover) ledger_.record(rec.donor_task, rec.cell_task);
  }
  if (self.factorial_costs[rec.cell_task] > rec.parent_cost) {
    violations_.push_back("cell " + std::to_string(cell) + " cost increased");
  }
  ++steps_;
  return rec;
}

RunResults Engine::run() {
  const auto start = std::chrono::steady_clock::now();
  RunResults results;
  results.solver = "mfcga";
  results.seed = config_.seed;
  results.budget = config_.evaluation_budget;
  results.population_size = config_.population_size;
  results.metadata["grid"] = std::to_string(grid_.rows()) + "x" + std::to_string(grid_.cols());
  results.metadata["neighborhood"] = "moore";
  results.metadata["update_policy"] = "asynchronous-line-sweep";
  results.metadata["skill_tie_rule"] = "fewest-holders-then-lowest-index";
  results.metadata["stale_costs"] = "non-skill costs reset to unevaluated on replacement";

  initialize();
  results.sample_trajectory(evaluator_);

  bool exhausted = false;
  while (!exhausted) {
    for (std::size_t cell = 0; cell < population_.size(); ++cell) {
      if (!can_step()) {
        exhausted = true;
        break;
      }
      step_cell(cell);
    }
    if (!exhausted) results.sample_trajectory(evaluator_);
  }
  if (results.tasks.front().trajectory.back().evaluations != evaluator_.evaluations()) {
    results.sample_trajectory(evaluator_);
  }

  collect_best(results, evaluator_);
  results.iterations = steps_;
  results.ledger = ledger_;

  const std::uint64_t expected =
      static_cast<std::uint64_t>(config_.population_size) * problem_.task_count() + 2 * steps_;
  if (evaluator_.evaluations() != expected) violations_.push_back("evaluation count mismatch");
  if (evaluator_.evaluations() > config_.evaluation_budget) violations_.push_back("budget exceeded");
  if (skill_factor_counts(population_, problem_.task_count()) != initial_skill_counts_) {
    violations_.push_back("skill-factor multiset changed");
  }
  for (const auto& t : results.tasks) {
    for (std::size_t i = 1; i < t.trajectory.size(); ++i) {
      if (t.trajectory[i].best_cost > t.trajectory[i - 1].best_cost) {
        violations_.push_back("best-so-far increased on " + t.instance);
        break;
      }
    }
  }
  results.invariant_violations = violations_;
  results.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return results;
}

RunResults run(const MultitaskProblem& problem, const EngineConfig& config) {
  Engine engine(problem, config);
  return engine.run();
}

}  // namespace mfo::cellular
