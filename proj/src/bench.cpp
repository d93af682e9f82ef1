#include "mfo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "mfo/cellular.hpp"
#include "mfo/errors.hpp"
#include "mfo/mfea.hpp"

namespace mfo::bench {

namespace fs = std::filesystem;

const std::vector<TestCase>& builtin_test_cases() {
  static const std::vector<TestCase> cases = {
      {"TC_4_1", {"kroA100", "kroA150", "kroA200", "kroC100"}},
      {"TC_4_2", {"kroB100", "kroB150", "kroD100", "kroE100"}},
      {"TC_4_3", {"kroA100", "kroA150", "kroD100", "kroE100"}},
      {"TC_4_4", {"kroA200", "kroC100", "kroB100", "kroB150"}},
      {"TC_4_5", {"kroA100", "kroA200", "kroB100", "kroD100"}},
      {"TC_4_6", {"kroA150", "kroC100", "kroB150", "kroE100"}},
      {"TC_4_7", {"kroA100", "kroA150", "kroB100", "kroB150"}},
      {"TC_4_8", {"kroA200", "kroC100", "kroD100", "kroE100"}},
      {"TC_4_9", {"kroA100", "kroC100", "kroB100", "kroD100"}},
      {"TC_4_10", {"kroA150", "kroA200", "kroB150", "kroE100"}},
      {"TC_6_1", {"kroA100", "kroA150", "kroA200", "kroB100", "kroC100", "kroB150"}},
      {"TC_6_2", {"kroA200", "kroB100", "kroC100", "kroB150", "kroD100", "kroE100"}},
      {"TC_6_3", {"kroA100", "kroA150", "kroA200", "kroB150", "kroD100", "kroE100"}},
      {"TC_6_4", {"kroA100", "kroA150", "kroB100", "kroC100", "kroD100", "kroE100"}},
      {"TC_8", {"kroA100", "kroA150", "kroA200", "kroB100", "kroC100", "kroB150", "kroD100", "kroE100"}},
  };
  return cases;
}

const TestCase& find_case(const std::string& id) {
  for (const auto& c : builtin_test_cases()) {
    if (c.id == id) return c;
  }
  throw ConfigError("unknown test case '" + id + "'");
}

std::vector<std::string> builtin_instance_names() { return find_case("TC_8").task_names; }

std::optional<Cost> known_optimum(const std::string& instance) {
  static const std::map<std::string, Cost> optima = {
      {"kroA100", 21282}, {"kroB100", 22141}, {"kroC100", 20749}, {"kroD100", 21294},
      {"kroE100", 22068}, {"kroA150", 26524}, {"kroB150", 26130}, {"kroA200", 29368},
  };
  auto it = optima.find(instance);
  if (it == optima.end()) return std::nullopt;
  return it->second;
}

InstanceLibrary::InstanceLibrary(fs::path directory) : directory_(std::move(directory)) {}

std::shared_ptr<const tsp::TspInstance> InstanceLibrary::get(const std::string& name) {
  auto it = cache_.find(name);
  if (it != cache_.end()) return it->second;
  const auto path = directory_ / (name + ".tsp");
  if (!fs::exists(path)) throw ConfigError("instance file not found: " + path.string());
  auto inst = std::make_shared<const tsp::TspInstance>(tsp::load_tsplib(path));
  cache_.emplace(name, inst);
  return inst;
}

MultitaskProblem InstanceLibrary::problem_for(const TestCase& test_case) {
  std::vector<std::shared_ptr<const tsp::TspInstance>> tasks;
  for (const auto& name : test_case.task_names) tasks.push_back(get(name));
  return MultitaskProblem(std::move(tasks));
}

std::vector<std::string> InstanceLibrary::missing(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (!fs::exists(directory_ / (n + ".tsp"))) out.push_back(n);
  }
  return out;
}

std::string solver_name(Solver s) { return s == Solver::kMfcga ? "mfcga" : "mfea"; }

Solver parse_solver(const std::string& name) {
  if (name == "mfcga") return Solver::kMfcga;
  if (name == "mfea") return Solver::kMfea;
  throw ConfigError("unknown solver '" + name + "' (expected mfcga or mfea)");
}

RunResults run_single(Solver solver, const TestCase& test_case, const MultitaskProblem& problem,
                      std::uint64_t budget, std::uint64_t seed, std::size_t population_size) {
  RunResults r;
  if (solver == Solver::kMfcga) {
    cellular::EngineConfig cfg;
    cfg.population_size = population_size;
    cfg.evaluation_budget = budget;
    cfg.seed = seed;
    r = cellular::run(problem, cfg);
  } else {
    mfea::MfeaConfig cfg;
    cfg.population_size = population_size;
    cfg.evaluation_budget = budget;
    cfg.seed = seed;
    r = mfea::mfea_run(problem, cfg);
  }
  r.case_id = test_case.id;
  return r;
}

std::string record_name(const std::string& solver, const std::string& case_id, std::uint64_t seed) {
  return solver + "__" + case_id + "__" + std::to_string(seed) + ".json";
}

namespace {

void write_atomically(const fs::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp);
    out << content;
  }
  fs::rename(tmp, path);
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool valid_record(const fs::path& path) {
  try {
    from_record(read_all(path));
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

struct Job {
  Solver solver;
  const TestCase* test_case;
  std::size_t problem_index;
  std::uint64_t seed;
  fs::path path;
};

std::size_t case_order(const std::string& id) {
  const auto& cases = builtin_test_cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (cases[i].id == id) return i;
  }
  return cases.size();
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (config.solvers.empty()) throw ConfigError("no solvers selected");

  std::vector<const TestCase*> cases;
  std::set<std::string> needed;
  for (const auto& id : config.case_ids) {
    cases.push_back(&find_case(id));
    needed.insert(cases.back()->task_names.begin(), cases.back()->task_names.end());
  }
  InstanceLibrary library(config.instance_directory);
  const auto absent = library.missing({needed.begin(), needed.end()});
  if (!absent.empty()) {
    std::string list;
    for (const auto& n : absent) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("missing instance files in " + config.instance_directory.string() + ": " + list);
  }
  std::vector<MultitaskProblem> problems;
  for (const auto* c : cases) problems.push_back(library.problem_for(*c));

  const auto runs_dir = config.output_directory / "runs";
  const auto timing_dir = config.output_directory / "timings";
  fs::create_directories(runs_dir);
  fs::create_directories(timing_dir);

  ExperimentOutcome outcome;
  std::vector<Job> jobs;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    for (Solver s : config.solvers) {
      for (std::size_t r = 0; r < config.repetitions; ++r) {
        const auto seed = run_seed(config.base_seed, r);
        const auto path = runs_dir / record_name(solver_name(s), cases[ci]->id, seed);
        outcome.records.push_back(path);
        if (fs::exists(path) && valid_record(path)) {
          ++outcome.reused;
          continue;
        }
        jobs.push_back({s, cases[ci], ci, seed, path});
      }
    }
  }

  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max<std::size_t>(1, std::min(threads, jobs.size()));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex report_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        const auto r = run_single(job.solver, *job.test_case, problems[job.problem_index],
                                  config.evaluation_budget, job.seed, config.population_size);
        write_atomically(job.path, to_record(r));
        write_atomically(timing_dir / (job.path.stem().string() + ".txt"),
                         fixed(r.wall_time_seconds, 3) + "\n");
        const std::size_t n = ++done;
        if (progress) {
          std::lock_guard lock(report_mutex);
          progress("[" + std::to_string(n) + "/" + std::to_string(jobs.size()) + "] " +
                   job.path.filename().string() + " " + fixed(r.wall_time_seconds, 2) + "s");
        }
      } catch (...) {
        std::lock_guard lock(report_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  outcome.executed = jobs.size();
  return outcome;
}

LoadedRecords load_records(const fs::path& results_dir) {
  LoadedRecords out;
  fs::path dir = results_dir / "runs";
  if (!fs::is_directory(dir)) dir = results_dir;
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      out.runs.push_back(from_record(read_all(f)));
    } catch (const std::exception& e) {
      out.warnings.push_back("skipped " + f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

Report build_report(const LoadedRecords& records) {
  Report report;
  report.run_count = records.runs.size();
  report.warnings = records.warnings;

  // (case, solver) -> runs
  std::map<std::pair<std::string, std::string>, std::vector<const RunResults*>> groups;
  std::set<std::string> case_ids;
  for (const auto& r : records.runs) {
    groups[{r.case_id, r.solver}].push_back(&r);
    case_ids.insert(r.case_id);
    for (const auto& v : r.invariant_violations) {
      report.warnings.push_back(record_name(r.solver, r.case_id, r.seed) + ": invariant violation: " + v);
    }
  }
  std::vector<std::string> ordered(case_ids.begin(), case_ids.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const std::string& a, const std::string& b) {
    return case_order(a) < case_order(b);
  });

  auto costs_of = [](const std::vector<const RunResults*>& runs, std::size_t k) {
    std::vector<double> v;
    for (const auto* r : runs) v.push_back(static_cast<double>(r->tasks[k].best_cost));
    return v;
  };

  for (const auto& case_id : ordered) {
    for (const std::string solver : {"mfcga", "mfea"}) {
      auto it = groups.find({case_id, solver});
      if (it == groups.end()) continue;
      auto runs = it->second;
      std::sort(runs.begin(), runs.end(), [](auto* a, auto* b) { return a->seed < b->seed; });
      const auto& first = *runs.front();
      bool consistent = true;
      for (const auto* r : runs) {
        if (r->tasks.size() != first.tasks.size()) consistent = false;
      }
      if (!consistent) {
        report.warnings.push_back(case_id + "/" + solver + ": runs disagree on task count; skipped");
        continue;
      }
      for (std::size_t k = 0; k < first.tasks.size(); ++k) {
        SummaryRow row;
        row.case_id = case_id;
        row.instance = first.tasks[k].instance;
        row.solver = solver;
        row.stats = analysis::summarize(costs_of(runs, k));
        row.optimum = known_optimum(row.instance);
        for (const auto* r : runs) {
          row.max_evaluations = std::max(row.max_evaluations, static_cast<double>(r->evaluations_used));
        }
        report.summary.push_back(row);
      }
      TransferTable table;
      table.case_id = case_id;
      table.solver = solver;
      table.runs = runs.size();
      for (const auto& t : first.tasks) table.instances.push_back(t.instance);
      std::vector<TransferLedger> ledgers;
      for (const auto* r : runs) ledgers.push_back(r->ledger);
      table.mean = analysis::aggregate_transfer(ledgers);
      report.transfer.push_back(std::move(table));
    }

    auto a = groups.find({case_id, "mfcga"});
    auto b = groups.find({case_id, "mfea"});
    if (a == groups.end() || b == groups.end()) continue;
    const auto& ta = a->second.front()->tasks;
    if (b->second.front()->tasks.size() != ta.size()) continue;
    for (std::size_t k = 0; k < ta.size(); ++k) {
      const auto xa = costs_of(a->second, k);
      const auto xb = costs_of(b->second, k);
      ComparisonRow row;
      row.case_id = case_id;
      row.instance = ta[k].instance;
      row.mfcga_mean = analysis::summarize(xa).mean;
      row.mfea_mean = analysis::summarize(xb).mean;
      row.mfcga_wins = row.mfcga_mean < row.mfea_mean;
      if (xa.size() >= 2 && xb.size() >= 2) row.test = analysis::wilcoxon_rank_sum(xa, xb);
      report.comparison.push_back(row);
    }
  }
  return report;
}

std::string fixed(double v, int precision) {
  if (std::isnan(v)) return "nan";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(precision) << v;
  return ss.str();
}

std::string matrix_csv(const std::vector<std::string>& names, const analysis::Matrix& m, int precision) {
  std::ostringstream ss;
  ss << "instance";
  for (const auto& n : names) ss << ',' << n;
  ss << '\n';
  for (std::size_t i = 0; i < m.size; ++i) {
    ss << names[i];
    for (std::size_t j = 0; j < m.size; ++j) ss << ',' << fixed(m(i, j), precision);
    ss << '\n';
  }
  return ss.str();
}

void write_report_csv(const Report& report, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "summary.csv");
    out << "case,instance,solver,runs,mean,best,std,optimum,mean_gap_percent,max_evaluations\n";
    for (const auto& r : report.summary) {
      out << r.case_id << ',' << r.instance << ',' << r.solver << ',' << r.stats.n << ','
          << fixed(r.stats.mean, 1) << ',' << fixed(r.stats.best, 1) << ',' << fixed(r.stats.stddev, 2)
          << ',';
      if (r.optimum) {
        out << *r.optimum << ','
            << fixed(100.0 * (r.stats.mean - static_cast<double>(*r.optimum)) / static_cast<double>(*r.optimum), 2);
      } else {
        out << ',';
      }
      out << ',' << fixed(r.max_evaluations, 0) << '\n';
    }
  }
  {
    std::ofstream out(dir / "comparison.csv");
    out << "case,instance,mfcga_mean,mfea_mean,winner,wilcoxon_u,wilcoxon_z,wilcoxon_p,significant\n";
    for (const auto& r : report.comparison) {
      out << r.case_id << ',' << r.instance << ',' << fixed(r.mfcga_mean, 1) << ','
          << fixed(r.mfea_mean, 1) << ',' << (r.mfcga_wins ? "mfcga" : "mfea") << ',';
      if (r.test) {
        out << fixed(r.test->u, 1) << ',' << fixed(r.test->z, 4) << ',' << fixed(r.test->p, 5) << ','
            << (analysis::significant(*r.test) ? "yes" : "no") << '\n';
      } else {
        out << ",,,\n";
      }
    }
  }
  for (const auto& t : report.transfer) {
    std::ofstream out(dir / ("transfer_" + t.case_id + "_" + t.solver + ".csv"));
    out << matrix_csv(t.instances, t.mean, 3);
  }
  std::ofstream notes(dir / "report_notes.txt");
  notes << "runs: " << report.run_count << '\n';
  if (report.run_count == 0) notes << "no run records found\n";
  for (const auto& w : report.warnings) notes << "warning: " << w << '\n';
}

std::string format_report_text(const Report& report) {
  std::ostringstream ss;
  if (report.run_count == 0) {
    ss << "No run records found (0 runs).\n";
  } else {
    ss << "Per-instance results (" << report.run_count << " runs)\n";
    ss << std::left << std::setw(9) << "case" << std::setw(10) << "instance" << std::setw(7) << "solver"
       << std::right << std::setw(5) << "n" << std::setw(12) << "mean" << std::setw(10) << "best"
       << std::setw(10) << "std" << std::setw(9) << "gap%" << '\n';
    for (const auto& r : report.summary) {
      ss << std::left << std::setw(9) << r.case_id << std::setw(10) << r.instance << std::setw(7) << r.solver
         << std::right << std::setw(5) << r.stats.n << std::setw(12) << fixed(r.stats.mean, 1)
         << std::setw(10) << fixed(r.stats.best, 1) << std::setw(10) << fixed(r.stats.stddev, 2)
         << std::setw(9)
         << (r.optimum ? fixed(100.0 * (r.stats.mean - static_cast<double>(*r.optimum)) /
                                   static_cast<double>(*r.optimum), 2)
                       : std::string("-"))
         << '\n';
    }

    if (!report.comparison.empty()) {
      ss << "\nMFCGA vs MFEA by mean (o = MFCGA better, x = MFEA better)\n";
      std::string current;
      std::size_t wins = 0;
      std::size_t slots = 0;
      for (const auto& r : report.comparison) {
        if (r.case_id != current) {
          if (!current.empty()) ss << '\n';
          current = r.case_id;
          ss << std::left << std::setw(9) << r.case_id << ' ';
        } else {
          ss << '-';
        }
        ss << (r.mfcga_wins ? 'o' : 'x');
        wins += r.mfcga_wins ? 1 : 0;
        ++slots;
      }
      ss << "\nMFCGA better on " << wins << " of " << slots << " instance slots\n";

      ss << "\nWilcoxon rank-sum (one-sided, MFCGA < MFEA; significant if z < "
         << fixed(analysis::kCriticalZ, 2) << ")\n";
      for (const auto& r : report.comparison) {
        if (!r.test) continue;
        ss << std::left << std::setw(9) << r.case_id << std::setw(10) << r.instance << std::right
           << " z=" << std::setw(8) << fixed(r.test->z, 4) << " p=" << fixed(r.test->p, 5)
           << (analysis::significant(*r.test) ? "  significant" : "") << '\n';
      }
    }

    for (const auto& t : report.transfer) {
      ss << "\nMean transfer episodes per run, " << t.case_id << " / " << t.solver << " (" << t.runs
         << " runs; row = donor task, column = receiving task)\n";
      ss << matrix_csv(t.instances, t.mean, 2);
      const auto pairs = analysis::ranked_pairs(t.mean);
      ss << "strongest pairs:";
      for (std::size_t i = 0; i < std::min<std::size_t>(5, pairs.size()); ++i) {
        ss << " {" << t.instances[pairs[i].a] << "," << t.instances[pairs[i].b] << "}="
           << fixed(pairs[i].intensity, 2);
      }
      ss << '\n';
    }
  }
  if (!report.warnings.empty()) {
    ss << "\nWarnings:\n";
    for (const auto& w : report.warnings) ss << "  " << w << '\n';
  }
  return ss.str();
}

ComplementarityTables complementarity(InstanceLibrary& library, const std::vector<std::string>& names,
                                      const std::optional<fs::path>& best_tours_dir,
                                      const std::map<std::string, tsp::Tour>& extra_tours) {
  ComplementarityTables out;
  out.instances = names;
  const std::size_t k = names.size();
  out.node_overlap = {k, std::vector<double>(k * k, 0.0)};
  out.node_overlap_min_dim = {k, std::vector<double>(k * k, 0.0)};
  std::vector<std::shared_ptr<const tsp::TspInstance>> inst;
  for (const auto& n : names) inst.push_back(library.get(n));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.node_overlap(i, j) = tsp::node_overlap(*inst[i], *inst[j], tsp::OverlapMetric::kDice);
      out.node_overlap_min_dim(i, j) = tsp::node_overlap(*inst[i], *inst[j], tsp::OverlapMetric::kMinDimension);
    }
  }

  if (!best_tours_dir && extra_tours.empty()) return out;
  std::vector<std::optional<tsp::Tour>> tours(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (best_tours_dir) {
      const auto path = *best_tours_dir / (names[i] + ".opt.tour");
      if (fs::exists(path)) {
        try {
          tours[i] = tsp::load_tour(path);
        } catch (const std::exception& e) {
          out.warnings.push_back(names[i] + ": unreadable tour (" + e.what() + ")");
        }
      }
    }
    if (!tours[i]) {
      auto it = extra_tours.find(names[i]);
      if (it != extra_tours.end()) tours[i] = it->second;
    }
    if (tours[i] && tours[i]->order.size() != inst[i]->dimension()) {
      out.warnings.push_back(names[i] + ": tour size does not match instance; ignored");
      tours[i].reset();
    }
    if (!tours[i]) out.warnings.push_back(names[i] + ": no best-known tour; solution overlap skipped");
  }
  analysis::Matrix sol{k, std::vector<double>(k * k, std::numeric_limits<double>::quiet_NaN())};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (tours[i] && tours[j]) sol(i, j) = analysis::best_solution_overlap(*inst[i], *tours[i], *inst[j], *tours[j]);
    }
  }
  out.solution_overlap = std::move(sol);
  return out;
}

}  // namespace mfo::bench
