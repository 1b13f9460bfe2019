#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualarm/lazy.hpp"
#include "dualarm/plan.hpp"
#include "dualarm/types.hpp"

namespace dualarm {

/// Configuration problem, with the 1-based line it refers to (0 if none).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

/// Solver names accepted by the sweep: the sequence solvers plus
/// "single_arm" as a reference.
inline const std::vector<std::string>& bench_solvers() {
  static const std::vector<std::string> names{"exhaustive", "milp", "tom", "random_split", "single_arm"};
  return names;
}

struct BenchConfig {
  std::vector<int> ns;
  std::vector<std::uint64_t> seeds;  // per-cell instance seeds
  std::vector<std::string> solvers;
  std::vector<bool> lazy{false};
  CostParams params;
  double footprint = 0.0;
  Rect workspace;
  std::vector<Rect> obstacles;
  double budget_secs = 300.0;
  std::uint64_t seed = 0;  // base seed mixed into every instance seed
  int workers = 1;
  int max_retries = 50;
  bool write_plans = true;
};

/// Parses the JSON config. Keys: ns, seeds (count or list), solvers, lazy
/// (bool or list of bools), params {c_t, c_pd, r, footprint, workspace,
/// detour_penalty, handling}, obstacles, and optionally budget_secs, seed,
/// workers, max_retries, write_plans.
BenchConfig parse_bench_config(const std::string& text);
BenchConfig load_bench_config(const std::filesystem::path& path);

enum class Outcome { kSuccess, kTimeout, kUnsolvable };
const char* to_string(Outcome outcome);

struct RunRecord {
  int n = 0;
  std::uint64_t seed = 0;           // cell seed from the config
  std::uint64_t instance_seed = 0;  // seed passed to the generator
  std::string solver;
  bool lazy = false;
  Outcome outcome = Outcome::kUnsolvable;
  std::optional<double> cost;  // present iff success
  double wall_time_secs = 0.0;
  std::size_t oracle_queries = 0;
  int retries = 0;
  std::string note;
  CostParams params;
};

/// Instance for one sweep cell. Deterministic in the config.
Instance bench_instance(const BenchConfig& config, int n, std::uint64_t seed);

struct CellOutput {
  RunRecord record;
  std::optional<DualArmPlan> plan;
  std::optional<LazyResult> lazy;  // lazy runs only
};

/// Solves one instance with the named solver. Failures are recorded in the
/// record, never thrown.
CellOutput solve_cell(const BenchConfig& config, const Instance& inst, std::uint64_t seed,
                      const std::string& solver, bool lazy);

/// Plan file contents: record, instance, plan if any, lazy report if any.
nlohmann::json cell_json(const Instance& inst, const CellOutput& out);

/// solve_cell, plus the plan file when plan_dir is given.
RunRecord run_cell(const BenchConfig& config, const Instance& inst, std::uint64_t seed,
                   const std::string& solver, bool lazy, const std::filesystem::path* plan_dir);

/// Runs every (n, seed, solver, lazy) cell and writes runs.csv,
/// summary.csv and plans/*.json into out_dir. Records come back in cell
/// order regardless of the worker count.
std::vector<RunRecord> run_benchmark(const BenchConfig& config, const std::filesystem::path& out_dir);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace dualarm
