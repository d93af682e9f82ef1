#include "mfo/mfea.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

#include "mfo/errors.hpp"

namespace mfo::mfea {
namespace {

void validate(const MfeaConfig& config, const MultitaskProblem& problem) {
  if (config.population_size < 2) throw ConfigError("MFEA needs a population of at least 2");
  if (config.crossover_probability < 0.0 || config.crossover_probability > 1.0 ||
      config.mutation_probability < 0.0 || config.mutation_probability > 1.0) {
    throw ConfigError("crossover/mutation probabilities must lie in [0, 1]");
  }
  const std::uint64_t init_cost =
      static_cast<std::uint64_t>(config.population_size) * problem.task_count();
  if (config.evaluation_budget < init_cost) {
    throw ConfigError("evaluation budget " + std::to_string(config.evaluation_budget) +
                      " cannot cover the initial evaluation of " + std::to_string(init_cost));
  }
  if (problem.d_max() < 2) throw ConfigError("unified space needs at least two cities");
}

std::vector<Cost> population_best(std::span<const UnifiedIndividual> population, std::size_t task_count) {
  std::vector<Cost> best(task_count, kUnevaluated);
  for (const auto& ind : population) {
    for (TaskIndex k = 0; k < task_count; ++k) best[k] = std::min(best[k], ind.factorial_costs[k]);
  }
  return best;
}

}  // namespace

Offspring mfea_generation(std::span<const UnifiedIndividual> population, Evaluator& evaluator,
                          const MfeaConfig& config, Rng& rng) {
  const std::size_t p = population.size();
  const std::size_t k_count = evaluator.problem().task_count();
  Offspring out;
  out.children.reserve(p);
  out.origins.reserve(p);
  std::vector<std::uint8_t> seen;

  auto emit = [&](Genome genome, OffspringOrigin origin) {
    if (out.children.size() == p) return;
    if (rng.uniform() < config.mutation_probability) {
      ops::apply_two_opt(genome, ops::random_cuts(rng, genome.size()));
    }
    auto child = UnifiedIndividual::unevaluated(std::move(genome), k_count);
    child.factorial_costs[origin.evaluated_task] = evaluator.evaluate(child.genome, origin.evaluated_task);
    child.skill_factor = origin.evaluated_task;
    out.children.push_back(std::move(child));
    out.origins.push_back(origin);
  };

  while (out.children.size() < p) {
    const auto [i, j] = rng.distinct_pair(p);
    const auto& a = population[i];
    const auto& b = population[j];
    const TaskIndex ta = a.skill_factor;
    const TaskIndex tb = b.skill_factor;
    const bool mate = ta == tb || rng.uniform() < config.crossover_probability;
    if (mate) {
      const auto cuts = ops::random_cuts(rng, a.genome.size());
      Genome c1;
      Genome c2;
      ops::order_crossover_into(a.genome, b.genome, cuts, c1, seen);
      ops::order_crossover_into(b.genome, a.genome, cuts, c2, seen);
      for (Genome* child : {&c1, &c2}) {
        // Selective evaluation on the task of one parent drawn at random.
        const bool from_a = ta == tb || rng.below(2) == 0;
        emit(std::move(*child), {true, from_a ? ta : tb, from_a ? tb : ta});
      }
    } else {
      emit(a.genome, {false, ta, ta});
      emit(b.genome, {false, tb, tb});
    }
  }
  return out;
}

Survivors mfea_survive(std::vector<UnifiedIndividual> parents, std::vector<UnifiedIndividual> offspring,
                       std::size_t task_count) {
  const std::size_t keep = parents.size();
  std::vector<UnifiedIndividual> pool = std::move(parents);
  pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
              std::make_move_iterator(offspring.end()));
  rank_population(pool, task_count);

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return pool[x].scalar_fitness > pool[y].scalar_fitness;
  });

  Survivors s;
  s.population.reserve(keep);
  s.pool_index.reserve(keep);
  for (std::size_t r = 0; r < keep && r < order.size(); ++r) {
    s.population.push_back(std::move(pool[order[r]]));
    s.pool_index.push_back(order[r]);
  }
  return s;
}

RunResults mfea_run(const MultitaskProblem& problem, const MfeaConfig& config) {
  validate(config, problem);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k_count = problem.task_count();
  const std::size_t p = config.population_size;

  Rng rng(config.seed);
  Evaluator evaluator(problem);
  TransferLedger ledger(k_count);
  std::vector<std::string> violations;

  RunResults results;
  results.solver = "mfea";
  results.seed = config.seed;
  results.budget = config.evaluation_budget;
  results.population_size = p;
  results.metadata["mating"] = "crossover if skill factors match, else with crossover_probability; else copy";
  results.metadata["crossover_probability"] = std::to_string(config.crossover_probability);
  results.metadata["mutation_probability"] = std::to_string(config.mutation_probability);
  results.metadata["parent_selection"] = "uniform random pairs";
  results.metadata["skill_tie_rule"] = "fewest-holders-then-lowest-index";

  std::vector<UnifiedIndividual> population;
  population.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    auto ind = UnifiedIndividual::unevaluated(ops::random_permutation(rng, problem.d_max()), k_count);
    evaluator.evaluate_all(ind);
    population.push_back(std::move(ind));
  }
  rank_population(population, k_count);
  results.sample_trajectory(evaluator);

  std::uint64_t generations = 0;
  auto best = population_best(population, k_count);
  while (evaluator.evaluations() + p <= config.evaluation_budget) {
    auto offspring = mfea_generation(population, evaluator, config, rng);
    for (const auto& child : offspring.children) {
      if (std::count_if(child.factorial_costs.begin(), child.factorial_costs.end(), is_evaluated) != 1) {
        violations.push_back("offspring with other than one evaluated task");
      }
    }
    const auto origins = offspring.origins;
    auto survivors = mfea_survive(std::move(population), std::move(offspring.children), k_count);
    for (std::size_t i = 0; i < survivors.pool_index.size(); ++i) {
      const std::size_t idx = survivors.pool_index[i];
      if (idx < p) continue;
      const auto& origin = origins[idx - p];
      if (origin.cross_cultural()) ledger.record(origin.other_parent_task, origin.evaluated_task);
    }
    population = std::move(survivors.population);
    ++generations;

    if (population.size() != p) violations.push_back("population size changed");
    const auto now_best = population_best(population, k_count);
    for (TaskIndex k = 0; k < k_count; ++k) {
      if (now_best[k] > best[k]) violations.push_back("elitism broken on task " + std::to_string(k));
    }
    best = now_best;
    results.sample_trajectory(evaluator);
  }

  collect_best(results, evaluator);
  results.iterations = generations;
  results.ledger = ledger;
  if (evaluator.evaluations() != static_cast<std::uint64_t>(p) * k_count + p * generations) {
    violations.push_back("evaluation count mismatch");
  }
  if (evaluator.evaluations() > config.evaluation_budget) violations.push_back("budget exceeded");
  results.invariant_violations = std::move(violations);
  results.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return results;
}

}  // namespace mfo::mfea
