#pragma once

// Canonical multifactorial evolutionary algorithm: generational loop with
// assortative mating, selective evaluation and elitist scalar-fitness
// survival over parents plus offspring.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfo/operators.hpp"
#include "mfo/problem.hpp"
#include "mfo/rng.hpp"
#include "mfo/run_results.hpp"

namespace mfo::mfea {

struct MfeaConfig {
  std::size_t population_size = 200;
  double crossover_probability = 0.9;
  double mutation_probability = 0.1;
  std::uint64_t evaluation_budget = 500'000;
  std::uint64_t seed = 1;
};

/// How an offspring came to be; used for transfer accounting at survival.
struct OffspringOrigin {
  bool crossover = false;
  TaskIndex evaluated_task = 0;
  TaskIndex other_parent_task = 0;

  bool cross_cultural() const { return crossover && evaluated_task != other_parent_task; }
};

struct Offspring {
  std::vector<UnifiedIndividual> children;
  std::vector<OffspringOrigin> origins;
};

/// Produces population.size() offspring, each evaluated on exactly one task.
Offspring mfea_generation(std::span<const UnifiedIndividual> population, Evaluator& evaluator,
                          const MfeaConfig& config, Rng& rng);

struct Survivors {
  std::vector<UnifiedIndividual> population;
  std::vector<std::size_t> pool_index;  // position of each survivor in parents ++ offspring
};

/// Ranks the combined pool (parents first, then offspring) on every task,
/// reassigns scalar fitness and skill factors, and keeps the best
/// `parents.size()` by scalar fitness, ties in pool order.
Survivors mfea_survive(std::vector<UnifiedIndividual> parents,
                       std::vector<UnifiedIndividual> offspring, std::size_t task_count);

RunResults mfea_run(const MultitaskProblem& problem, const MfeaConfig& config);

}  // namespace mfo::mfea
