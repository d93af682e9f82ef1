#include "mfo/run_results.hpp"

#include <numeric>

#include "json.hpp"
#include "mfo/errors.hpp"

namespace mfo {

using nlohmann::json;

std::uint64_t TransferLedger::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t TransferLedger::off_diagonal_total() const {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      if (i != j) sum += (*this)(i, j);
    }
  }
  return sum;
}

void RunResults::sample_trajectory(const Evaluator& evaluator) {
  const std::size_t k_count = evaluator.problem().task_count();
  if (tasks.size() < k_count) tasks.resize(k_count);
  for (TaskIndex k = 0; k < k_count; ++k) {
    tasks[k].trajectory.push_back({evaluator.evaluations(), evaluator.best_cost(k)});
  }
}

void collect_best(RunResults& results, const Evaluator& evaluator) {
  const auto& problem = evaluator.problem();
  if (results.tasks.size() < problem.task_count()) results.tasks.resize(problem.task_count());
  for (TaskIndex k = 0; k < problem.task_count(); ++k) {
    auto& t = results.tasks[k];
    t.instance = problem.task(k).name();
    t.best_cost = evaluator.best_cost(k);
    t.best_tour = evaluator.best_tour(k);
  }
  results.evaluations_used = evaluator.evaluations();
}

std::string to_record(const RunResults& r) {
  json j;
  j["format"] = "mfo-run-record/1";
  j["solver"] = r.solver;
  j["case"] = r.case_id;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["population_size"] = r.population_size;
  j["evaluations_used"] = r.evaluations_used;
  j["iterations"] = r.iterations;
  json tasks = json::array();
  for (const auto& t : r.tasks) {
    json traj = json::array();
    for (const auto& p : t.trajectory) traj.push_back({p.evaluations, p.best_cost});
    tasks.push_back({{"instance", t.instance},
                     {"best_cost", t.best_cost},
                     {"best_tour", t.best_tour.order},
                     {"trajectory", traj}});
  }
  j["tasks"] = tasks;
  json ledger = json::array();
  for (std::size_t s = 0; s < r.ledger.size(); ++s) {
    json row = json::array();
    for (std::size_t d = 0; d < r.ledger.size(); ++d) row.push_back(r.ledger(s, d));
    ledger.push_back(row);
  }
  j["transfer_ledger"] = ledger;
  j["invariant_violations"] = r.invariant_violations;
  j["metadata"] = r.metadata;
  return j.dump(1) + "\n";
}

RunResults from_record(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "mfo-run-record/1") {
      throw ParseError("unknown record format");
    }
    RunResults r;
    r.solver = j.at("solver").get<std::string>();
    r.case_id = j.at("case").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget = j.at("budget").get<std::uint64_t>();
    r.population_size = j.at("population_size").get<std::size_t>();
    r.evaluations_used = j.at("evaluations_used").get<std::uint64_t>();
    r.iterations = j.at("iterations").get<std::uint64_t>();
    for (const auto& t : j.at("tasks")) {
      TaskOutcome out;
      out.instance = t.at("instance").get<std::string>();
      out.best_cost = t.at("best_cost").get<Cost>();
      out.best_tour.order = t.at("best_tour").get<std::vector<tsp::City>>();
      for (const auto& p : t.at("trajectory")) {
        out.trajectory.push_back({p.at(0).get<std::uint64_t>(), p.at(1).get<Cost>()});
      }
      r.tasks.push_back(std::move(out));
    }
    const auto& ledger = j.at("transfer_ledger");
    r.ledger = TransferLedger(ledger.size());
    for (std::size_t s = 0; s < ledger.size(); ++s) {
      if (ledger[s].size() != ledger.size()) throw ParseError("transfer ledger is not square");
      for (std::size_t d = 0; d < ledger.size(); ++d) r.ledger.set(s, d, ledger[s][d].get<std::uint64_t>());
    }
    if (r.ledger.size() != r.tasks.size()) throw ParseError("ledger size differs from task count");
    r.invariant_violations = j.at("invariant_violations").get<std::vector<std::string>>();
    r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run record: ") + e.what());
  }
}

}  // namespace mfo
