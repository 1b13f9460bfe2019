// Command-line front end: bench, gen, solve, verify, analyze.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dualarm/analysis.hpp"
#include "dualarm/bench.hpp"
#include "dualarm/instance.hpp"
#include "dualarm/io.hpp"
#include "dualarm/plan.hpp"

using namespace dualarm;

namespace {

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

int run_bench(const std::string& config_path, const std::string& out, std::optional<int> workers,
              std::optional<std::uint64_t> seed, std::optional<double> budget) {
  BenchConfig cfg = load_bench_config(config_path);
  if (workers) cfg.workers = *workers;
  if (seed) cfg.seed = *seed;
  if (budget) cfg.budget_secs = *budget;
  if (cfg.workers < 1) throw ConfigError("--workers must be at least 1", 0);
  if (!(cfg.budget_secs > 0)) throw ConfigError("--budget-secs must be positive", 0);

  const auto records = run_benchmark(cfg, out);
  int ok = 0;
  int timeouts = 0;
  for (const auto& r : records) {
    ok += r.outcome == Outcome::kSuccess;
    timeouts += r.outcome == Outcome::kTimeout;
  }
  std::cerr << records.size() << " runs: " << ok << " solved, " << timeouts << " timed out, "
            << records.size() - ok - timeouts << " unsolvable. Results in " << out << '\n';
  return 0;
}

int run_verify(const std::string& plan_path, const std::string& instance_path, double tol) {
  const Json doc = read_json_file(plan_path);
  const Json* plan_json = doc.contains("plan") ? &doc["plan"] : &doc;
  Instance inst;
  if (!instance_path.empty()) {
    inst = instance_from_json(read_json_file(instance_path));
  } else if (doc.contains("instance")) {
    inst = instance_from_json(doc["instance"]);
  } else {
    throw FormatError(plan_path + " holds no instance; pass --instance");
  }
  if (!plan_json->contains("sequence")) throw FormatError(plan_path + " holds no plan");
  const DualArmPlan plan = plan_from_json(*plan_json);
  const PlanCheck check = verify_plan(inst, plan, tol);
  if (check.ok) {
    std::printf("OK total_cost %.17g\n", plan.total_cost);
    return 0;
  }
  for (const auto& p : check.problems) std::printf("MISMATCH %s\n", p.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-arm rearrangement planner"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep from a JSON config");
  std::string config_path;
  std::string out_dir = "results";
  std::optional<int> workers;
  std::optional<std::uint64_t> bench_seed;
  std::optional<double> bench_budget;
  bench->add_option("--config", config_path, "Sweep config (JSON)")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", out_dir, "Output directory")->capture_default_str();
  bench->add_option("--workers", workers, "Parallel workers (overrides config)");
  bench->add_option("--seed", bench_seed, "Base seed (overrides config)");
  bench->add_option("--budget-secs", bench_budget, "Per-run time budget (overrides config)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_n = 4;
  std::uint64_t gen_seed = 0;
  CostParams gen_params;
  double gen_footprint = 0.0;
  std::vector<double> gen_workspace{0.0, 0.0, 1.0, 1.0};
  std::vector<std::vector<double>> gen_obstacles;
  std::string gen_out;
  gen->add_option("-n,--objects", gen_n, "Number of objects")->capture_default_str()->check(CLI::Range(1, 63));
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--c-t", gen_params.c_t, "Cost per unit distance")->capture_default_str();
  gen->add_option("--c-pd", gen_params.c_pd, "Pick plus drop cost")->capture_default_str();
  gen->add_option("--r", gen_params.r, "Arm radius")->capture_default_str();
  gen->add_option("--footprint", gen_footprint, "Object radius")->capture_default_str();
  gen->add_option("--workspace", gen_workspace, "xmin ymin xmax ymax")->expected(4);
  gen->add_option("--obstacle", gen_obstacles, "xmin ymin xmax ymax (repeatable)")->expected(4);
  gen->add_option("-o,--out", gen_out, "Output file (stdout if omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance and print the plan");
  std::string solve_instance;
  std::string solve_solver = "tom";
  bool solve_lazy = false;
  double solve_budget = 300.0;
  std::uint64_t solve_seed = 0;
  std::string solve_out;
  solve->add_option("--instance", solve_instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", solve_solver, "exhaustive, milp, tom, random_split or single_arm")
      ->capture_default_str()
      ->check(CLI::IsMember(bench_solvers()));
  solve->add_flag("--lazy", solve_lazy, "Evaluate feasibility lazily and replan");
  solve->add_option("--budget-secs", solve_budget, "Time budget")->capture_default_str();
  solve->add_option("--seed", solve_seed, "Seed for random_split")->capture_default_str();
  solve->add_option("-o,--out", solve_out, "Output file (stdout if omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "Recompute a stored plan and compare");
  std::string verify_plan_path;
  std::string verify_instance;
  double verify_tol = 1e-9;
  verify->add_option("plan", verify_plan_path, "Plan file from solve or bench")->required()->check(CLI::ExistingFile);
  verify->add_option("--instance", verify_instance, "Instance file when the plan file has none");
  verify->add_option("--tol", verify_tol, "Relative tolerance")->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Dual over single arm cost ratios");
  std::string what = "sync";
  std::vector<int> an_ns{2000};
  int an_trials = 200;
  double an_cpd = 0.0;
  double an_ct = 1.0;
  std::vector<double> an_rs{0.0};
  std::vector<int> an_ks{2};
  bool an_transit = false;
  std::uint64_t an_seed = 0;
  std::uint64_t an_samples = 1000000;
  std::string an_out;
  analyze->add_option("what", what, "sync, karm or constants")
      ->capture_default_str()
      ->check(CLI::IsMember({"sync", "karm", "constants"}));
  analyze->add_option("--n", an_ns, "Transfers per trial")->delimiter(',')->capture_default_str();
  analyze->add_option("--trials", an_trials, "Trials per estimate")->capture_default_str();
  analyze->add_option("--c-pd", an_cpd, "Pick plus drop cost")->capture_default_str();
  analyze->add_option("--c-t", an_ct, "Cost per unit distance")->capture_default_str();
  analyze->add_option("--r", an_rs, "Arm radii (sync only)")->delimiter(',')->capture_default_str();
  analyze->add_option("--k", an_ks, "Arm counts (karm only)")->delimiter(',')->capture_default_str();
  analyze->add_flag("--transit", an_transit, "Include transits (sync only)");
  analyze->add_option("--seed", an_seed, "Seed")->capture_default_str();
  analyze->add_option("--samples", an_samples, "Monte Carlo samples (constants)")->capture_default_str();
  analyze->add_option("-o,--out", an_out, "CSV file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) return run_bench(config_path, out_dir, workers, bench_seed, bench_budget);

    if (*gen) {
      const Rect ws{gen_workspace[0], gen_workspace[1], gen_workspace[2], gen_workspace[3]};
      Instance inst = generate_instance(gen_n, gen_seed, ws, gen_params, gen_footprint);
      for (const auto& o : gen_obstacles) inst.obstacles.push_back({o[0], o[1], o[2], o[3]});
      emit(to_json(inst), gen_out);
      return 0;
    }

    if (*solve) {
      const Instance inst = instance_from_json(read_json_file(solve_instance));
      const auto problems = check_instance(inst);
      if (!problems.empty()) throw FormatError("invalid instance: " + problems.front());
      BenchConfig cfg;
      cfg.budget_secs = solve_budget;
      cfg.seed = solve_seed;
      const CellOutput result = solve_cell(cfg, inst, solve_seed, solve_solver, solve_lazy);
      emit(cell_json(inst, result), solve_out);
      if (result.record.outcome != Outcome::kSuccess) {
        std::cerr << solve_solver << ": " << to_string(result.record.outcome)
                  << (result.record.note.empty() ? "" : " (" + result.record.note + ")") << '\n';
        return 2;
      }
      return 0;
    }

    if (*verify) return run_verify(verify_plan_path, verify_instance, verify_tol);

    if (*analyze) {
      std::ostringstream csv;
      if (what == "constants") {
        const Estimate mc = expected_max_length_mc(an_samples, an_seed);
        csv << "quantity,value,std_error\n";
        char buf[200];
        std::snprintf(buf, sizeof buf, "pdf_normalization,%.17g,0\nmean_length,%.17g,0\nmean_length_exact,%.17g,0\n",
                      line_length_normalization(), expected_length_quadrature(), expected_length_exact());
        csv << buf;
        std::snprintf(buf, sizeof buf, "mean_max_length_quadrature,%.17g,0\nmean_max_length_mc,%.17g,%.17g\n",
                      expected_max_length_quadrature(), mc.mean, mc.std_error);
        csv << buf;
        for (double r : an_rs) {
          std::snprintf(buf, sizeof buf, "dual_ratio_formula_r%g,%.17g,0\nsync_ratio_formula_r%g,%.17g,0\n", r,
                        dual_ratio_formula(an_cpd, an_ct, r), r, sync_ratio_formula(an_cpd, an_ct, r));
          csv << buf;
        }
      } else {
        std::vector<RatioEstimate> rows;
        for (int n : an_ns) {
          if (what == "sync") {
            for (double r : an_rs) {
              rows.push_back(sync_ratio_experiment(n, an_trials, {an_cpd, an_ct, r, an_transit}, an_seed));
            }
          } else {
            for (int k : an_ks) rows.push_back(k_arm_ratio_mc(k, n, an_trials, an_cpd, an_ct, an_seed));
          }
        }
        write_ratio_csv(csv, rows);
      }
      if (an_out.empty() || an_out == "-") {
        std::cout << csv.str();
      } else {
        std::ofstream(an_out) << csv.str();
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
