#pragma once

// Multifactorial bookkeeping: the unified permutation space shared by all
// tasks, per-task factorial costs and ranks, scalar fitness and skill factor.
//
// Task indices are 0-based in code (task k is problem.task(k)); reports and
// file formats print instance names instead of indices.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "mfo/tsplib.hpp"

namespace mfo {

using Cost = std::int64_t;
using TaskIndex = std::size_t;
using Genome = std::vector<tsp::City>;

/// Factorial cost of a task an individual was not evaluated on.
inline constexpr Cost kUnevaluated = std::numeric_limits<Cost>::max();

inline bool is_evaluated(Cost c) { return c != kUnevaluated; }

/// An ordered bundle of K tasks sharing the unified space {1..d_max}.
class MultitaskProblem {
 public:
  explicit MultitaskProblem(std::vector<std::shared_ptr<const tsp::TspInstance>> tasks);

  std::size_t task_count() const { return tasks_.size(); }
  std::size_t d_max() const { return d_max_; }
  const tsp::TspInstance& task(TaskIndex k) const { return *tasks_[k]; }
  std::size_t task_dimension(TaskIndex k) const { return tasks_[k]->dimension(); }

 private:
  std::vector<std::shared_ptr<const tsp::TspInstance>> tasks_;
  std::size_t d_max_ = 0;
};

struct UnifiedIndividual {
  Genome genome;
  std::vector<Cost> factorial_costs;  // kUnevaluated where not evaluated
  std::vector<std::size_t> factorial_ranks;  // 1-based; 0 = unset
  double scalar_fitness = 0.0;  // 0 = unset
  TaskIndex skill_factor = 0;

  /// Blank individual for a K-task problem: every cost unevaluated, ranks unset.
  static UnifiedIndividual unevaluated(Genome genome, std::size_t task_count);
};

/// Subsequence of `genome` entries <= dimension, in genome order.
tsp::Tour decode(std::span<const tsp::City> genome, std::size_t dimension);

inline tsp::Tour decode(const UnifiedIndividual& individual, TaskIndex k,
                        const MultitaskProblem& problem) {
  return decode(individual.genome, problem.task_dimension(k));
}

/// Evaluates genomes against tasks and counts every task-evaluation.
///
/// Keeps the best cost and decoded tour observed per task, so best-so-far
/// reporting never needs an evaluation of its own. One evaluator belongs to
/// one run; it is not thread-safe.
class Evaluator {
 public:
  explicit Evaluator(const MultitaskProblem& problem);

  /// Decodes and measures `genome` on task k; counts one evaluation.
  Cost evaluate(std::span<const tsp::City> genome, TaskIndex k);

  /// Evaluates on every task (K evaluations) and stores the costs.
  void evaluate_all(UnifiedIndividual& individual);

  std::uint64_t evaluations() const { return evaluations_; }
  Cost best_cost(TaskIndex k) const { return best_cost_[k]; }
  const tsp::Tour& best_tour(TaskIndex k) const { return best_tour_[k]; }
  const MultitaskProblem& problem() const { return *problem_; }

 private:
  const MultitaskProblem* problem_;
  std::uint64_t evaluations_ = 0;
  std::vector<Cost> best_cost_;
  std::vector<tsp::Tour> best_tour_;
  std::vector<tsp::City> scratch_;
};

/// Assigns 1-based factorial ranks for task k. Lowest cost gets rank 1;
/// unevaluated costs sort last; ties keep population order.
void compute_factorial_ranks(std::span<UnifiedIndividual> population, TaskIndex k);

/// Sets scalar fitness 1/min_k(rank) and skill factor argmin_k(rank).
///
/// Individuals with a unique best task are assigned first. Ties in the argmin
/// then go, in population order, to the tied task that currently has the
/// fewest holders (lowest index on equal counts), which keeps the split
/// between tasks even.
void assign_scalar_fitness_and_skill(std::span<UnifiedIndividual> population);

/// Ranks every task, then assigns scalar fitness and skill factors.
void rank_population(std::span<UnifiedIndividual> population, std::size_t task_count);

/// Number of individuals per skill factor.
std::vector<std::size_t> skill_factor_counts(std::span<const UnifiedIndividual> population,
                                             std::size_t task_count);

}  // namespace mfo
