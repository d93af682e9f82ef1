#include "mfo/problem.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mfo/errors.hpp"
#include "mfo/kernels.hpp"

namespace mfo {

MultitaskProblem::MultitaskProblem(std::vector<std::shared_ptr<const tsp::TspInstance>> tasks)
    : tasks_(std::move(tasks)) {
  if (tasks_.empty()) throw ConfigError("a multitask problem needs at least one task");
  for (const auto& t : tasks_) {
    if (!t) throw ConfigError("null task instance");
    d_max_ = std::max(d_max_, t->dimension());
  }
}

UnifiedIndividual UnifiedIndividual::unevaluated(Genome genome, std::size_t task_count) {
  UnifiedIndividual ind;
  ind.genome = std::move(genome);
  ind.factorial_costs.assign(task_count, kUnevaluated);
  ind.factorial_ranks.assign(task_count, 0);
  return ind;
}

tsp::Tour decode(std::span<const tsp::City> genome, std::size_t dimension) {
  tsp::Tour tour;
  tour.order.reserve(dimension);
  for (tsp::City c : genome) {
    if (static_cast<std::size_t>(c) <= dimension) tour.order.push_back(c);
  }
  return tour;
}

Evaluator::Evaluator(const MultitaskProblem& problem)
    : problem_(&problem),
      best_cost_(problem.task_count(), kUnevaluated),
      best_tour_(problem.task_count()),
      scratch_(problem.d_max() + kernels::kFilterSlack) {}

Cost Evaluator::evaluate(std::span<const tsp::City> genome, TaskIndex k) {
  const auto& task = problem_->task(k);
  const std::size_t dim = task.dimension();
  std::span<const tsp::City> tour = genome;
  if (dim != genome.size()) {
    const std::size_t n =
        kernels::filter_at_most(genome, static_cast<tsp::City>(dim), scratch_.data());
    tour = std::span<const tsp::City>(scratch_.data(), n);
  }
  const Cost cost = kernels::cycle_length(task.matrix_data(), task.matrix_stride(), tour);
  ++evaluations_;
  if (cost < best_cost_[k]) {
    best_cost_[k] = cost;
    best_tour_[k].order.assign(tour.begin(), tour.end());
  }
  return cost;
}

void Evaluator::evaluate_all(UnifiedIndividual& individual) {
  individual.factorial_costs.resize(problem_->task_count());
  for (TaskIndex k = 0; k < problem_->task_count(); ++k) {
    individual.factorial_costs[k] = evaluate(individual.genome, k);
  }
}

void compute_factorial_ranks(std::span<UnifiedIndividual> population, TaskIndex k) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return population[a].factorial_costs[k] < population[b].factorial_costs[k];
  });
  for (std::size_t r = 0; r < order.size(); ++r) {
    auto& ranks = population[order[r]].factorial_ranks;
    if (ranks.size() <= k) ranks.resize(k + 1, 0);
    ranks[k] = r + 1;
  }
}

void assign_scalar_fitness_and_skill(std::span<UnifiedIndividual> population) {
  if (population.empty()) return;
  const std::size_t task_count = population.front().factorial_ranks.size();
  std::vector<std::size_t> holders(task_count, 0);
  std::vector<std::size_t> tied;

  for (std::size_t i = 0; i < population.size(); ++i) {
    auto& ind = population[i];
    const auto& ranks = ind.factorial_ranks;
    const auto best = *std::min_element(ranks.begin(), ranks.end());
    ind.scalar_fitness = 1.0 / static_cast<double>(best);
    if (std::count(ranks.begin(), ranks.end(), best) == 1) {
      ind.skill_factor = static_cast<TaskIndex>(std::find(ranks.begin(), ranks.end(), best) - ranks.begin());
      ++holders[ind.skill_factor];
    } else {
      tied.push_back(i);
    }
  }

  for (std::size_t i : tied) {
    auto& ind = population[i];
    const auto& ranks = ind.factorial_ranks;
    const auto best = *std::min_element(ranks.begin(), ranks.end());
    TaskIndex choice = task_count;
    for (TaskIndex k = 0; k < task_count; ++k) {
      if (ranks[k] != best) continue;
      if (choice == task_count || holders[k] < holders[choice]) choice = k;
    }
    ind.skill_factor = choice;
    ++holders[choice];
  }
}

void rank_population(std::span<UnifiedIndividual> population, std::size_t task_count) {
  for (TaskIndex k = 0; k < task_count; ++k) compute_factorial_ranks(population, k);
  assign_scalar_fitness_and_skill(population);
}

std::vector<std::size_t> skill_factor_counts(std::span<const UnifiedIndividual> population,
                                             std::size_t task_count) {
  std::vector<std::size_t> counts(task_count, 0);
  for (const auto& ind : population) ++counts[ind.skill_factor];
  return counts;
}

}  // namespace mfo
