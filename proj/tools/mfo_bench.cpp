// mfo-bench: run multitask TSP experiments and regenerate their reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mfo/bench.hpp"
#include "mfo/errors.hpp"
#include "mfo/kernels.hpp"

namespace fs = std::filesystem;
using namespace mfo;

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

int cmd_list_cases() {
  for (const auto& c : bench::builtin_test_cases()) {
    std::cout << c.id;
    for (std::size_t i = 0; i < c.task_names.size(); ++i) std::cout << (i ? ", " : "\t") << c.task_names[i];
    std::cout << '\n';
  }
  return 0;
}

void print_matrix(std::ostream& os, const std::vector<std::string>& names, const analysis::Matrix& m) {
  os << bench::matrix_csv(names, m, 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multifactorial cellular GA / MFEA benchmark on multitask TSP bundles"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute seeded repetitions and write run records");
  std::vector<std::string> cases{"TC_8"};
  std::vector<std::string> solvers{"mfcga", "mfea"};
  std::size_t reps = 20;
  std::uint64_t budget = 500'000;
  std::uint64_t seed = 1;
  std::size_t population = 200;
  std::size_t threads = 0;
  std::string instances_dir = "data/tsplib";
  std::string out_dir = "results";
  run->add_option("--cases", cases, "Comma-separated test case ids, or 'all'")->delimiter(',');
  run->add_option("--solvers", solvers, "mfcga, mfea or both")->delimiter(',');
  run->add_option("--reps", reps, "Repetitions per (case, solver)")->check(CLI::PositiveNumber);
  run->add_option("--budget", budget, "Task-evaluations per run");
  run->add_option("--seed", seed, "Base seed; repetition r uses seed + r");
  run->add_option("--population", population, "Population size");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_option("--instances-dir", instances_dir, "Directory holding <name>.tsp files");
  run->add_option("--out", out_dir, "Output directory");

  // report
  auto* report = app.add_subcommand("report", "Regenerate tables from persisted run records");
  std::string in_dir = "results";
  std::string format = "text";
  report->add_option("--in", in_dir, "Results directory")->required();
  report->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  // transfer
  auto* transfer = app.add_subcommand("transfer", "Averaged transfer matrix of one test case");
  std::string transfer_case = "TC_8";
  std::string transfer_solver = "mfcga";
  transfer->add_option("--in", in_dir, "Results directory")->required();
  transfer->add_option("--case", transfer_case, "Test case id")->required();
  transfer->add_option("--solver", transfer_solver, "Solver whose ledgers to aggregate");

  // complementarity
  auto* comp = app.add_subcommand("complementarity", "Node and best-solution overlap between instances");
  std::string best_tours_dir;
  std::string results_for_tours;
  comp->add_option("--instances-dir", instances_dir, "Directory holding <name>.tsp files");
  comp->add_option("--best-tours-dir", best_tours_dir, "Directory holding <name>.opt.tour files");
  comp->add_option("--results", results_for_tours,
                   "Results directory; best tours found there fill in missing .opt.tour files");

  app.add_subcommand("list-cases", "Print the built-in test cases");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-cases")) return cmd_list_cases();

    if (run->parsed()) {
      bench::ExperimentConfig cfg;
      cfg.case_ids = split_list(cases);
      if (cfg.case_ids.size() == 1 && cfg.case_ids[0] == "all") {
        cfg.case_ids.clear();
        for (const auto& c : bench::builtin_test_cases()) cfg.case_ids.push_back(c.id);
      }
      cfg.solvers.clear();
      for (const auto& s : split_list(solvers)) cfg.solvers.push_back(bench::parse_solver(s));
      cfg.repetitions = reps;
      cfg.evaluation_budget = budget;
      cfg.base_seed = seed;
      cfg.population_size = population;
      cfg.threads = threads;
      cfg.instance_directory = instances_dir;
      cfg.output_directory = out_dir;
      std::cerr << "evaluation kernels: " << kernels::isa_name(kernels::active_isa()) << '\n';
      const auto outcome = bench::run_experiment(cfg, [](const std::string& m) { std::cerr << m << '\n'; });
      std::cerr << "executed " << outcome.executed << " runs, reused " << outcome.reused << " existing records\n";
      const auto rep = bench::build_report(bench::load_records(out_dir));
      bench::write_report_csv(rep, fs::path(out_dir) / "report");
      std::cout << bench::format_report_text(rep);
      return 0;
    }

    if (report->parsed()) {
      const auto rep = bench::build_report(bench::load_records(in_dir));
      if (format == "csv") {
        const auto dir = fs::path(in_dir) / "report";
        bench::write_report_csv(rep, dir);
        std::ifstream summary(dir / "summary.csv");
        std::cout << summary.rdbuf();
        std::cerr << "CSV tables written to " << dir.string() << '\n';
      } else {
        std::cout << bench::format_report_text(rep);
      }
      return 0;
    }

    if (transfer->parsed()) {
      const auto rep = bench::build_report(bench::load_records(in_dir));
      for (const auto& t : rep.transfer) {
        if (t.case_id != transfer_case || t.solver != transfer_solver) continue;
        std::cout << bench::matrix_csv(t.instances, t.mean, 3);
        std::cout << "\npair,intensity\n";
        for (const auto& p : analysis::ranked_pairs(t.mean)) {
          std::cout << t.instances[p.a] << '|' << t.instances[p.b] << ',' << bench::fixed(p.intensity, 3) << '\n';
        }
        return 0;
      }
      std::cerr << "no " << transfer_solver << " runs recorded for " << transfer_case << '\n';
      return 1;
    }

    if (comp->parsed()) {
      bench::InstanceLibrary library(instances_dir);
      const auto names = bench::builtin_instance_names();
      std::map<std::string, tsp::Tour> found;
      if (!results_for_tours.empty()) {
        std::map<std::string, Cost> best;
        for (const auto& r : bench::load_records(results_for_tours).runs) {
          for (const auto& t : r.tasks) {
            auto it = best.find(t.instance);
            if (it == best.end() || t.best_cost < it->second) {
              best[t.instance] = t.best_cost;
              found[t.instance] = t.best_tour;
            }
          }
        }
      }
      std::optional<fs::path> tours_dir;
      if (!best_tours_dir.empty()) tours_dir = best_tours_dir;
      const auto tables = bench::complementarity(library, names, tours_dir, found);
      std::cout << "# node overlap, metric=" << tsp::overlap_metric_name(tsp::OverlapMetric::kDice)
                << " (2*shared/(D_a+D_b))\n";
      print_matrix(std::cout, names, tables.node_overlap);
      std::cout << "\n# node overlap, metric="
                << tsp::overlap_metric_name(tsp::OverlapMetric::kMinDimension) << " (shared/min(D_a,D_b))\n";
      print_matrix(std::cout, names, tables.node_overlap_min_dim);
      if (tables.solution_overlap) {
        std::cout << "\n# best-solution overlap (shared undirected edges on common nodes, %)\n";
        print_matrix(std::cout, names, *tables.solution_overlap);
      }
      for (const auto& w : tables.warnings) std::cerr << "warning: " << w << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
