#include "dualarm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "dualarm/exact.hpp"
#include "dualarm/instance.hpp"
#include "dualarm/io.hpp"
#include "dualarm/lazy.hpp"
#include "dualarm/random.hpp"
#include "dualarm/tom.hpp"

namespace dualarm {

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess: return "success";
    case Outcome::kTimeout: return "timeout";
    case Outcome::kUnsolvable: return "unsolvable";
  }
  return "?";
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

int line_of_key(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

}  // namespace

BenchConfig parse_bench_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object", 1);

  static const std::vector<std::string> known{"ns", "seeds", "solvers", "lazy", "params", "obstacles",
                                              "budget_secs", "seed", "workers", "max_retries", "write_plans"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown key '" + key + "'", line_of_key(text, key));
    }
  }

  BenchConfig cfg;
  std::string key;
  try {
    key = "ns";
    if (!j.contains("ns")) throw ConfigError("missing key 'ns'", 0);
    const Json& ns = j["ns"];
    if (!ns.is_array() || ns.empty()) throw ConfigError("'ns' must be a non-empty list", line_of_key(text, key));
    for (const Json& n : ns) {
      const int v = n.get<int>();
      if (v < 1 || v > 63) throw ConfigError("object counts must lie in [1, 63]", line_of_key(text, key));
      cfg.ns.push_back(v);
    }

    key = "seeds";
    if (!j.contains("seeds")) throw ConfigError("missing key 'seeds'", 0);
    const Json& seeds = j["seeds"];
    if (seeds.is_number_integer()) {
      const int count = seeds.get<int>();
      if (count < 1) throw ConfigError("'seeds' must be positive", line_of_key(text, key));
      for (int s = 0; s < count; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    } else if (seeds.is_array() && !seeds.empty()) {
      for (const Json& s : seeds) cfg.seeds.push_back(s.get<std::uint64_t>());
    } else {
      throw ConfigError("'seeds' must be a count or a non-empty list", line_of_key(text, key));
    }

    key = "solvers";
    if (!j.contains("solvers")) throw ConfigError("missing key 'solvers'", 0);
    const Json& solvers = j["solvers"];
    if (!solvers.is_array() || solvers.empty()) {
      throw ConfigError("'solvers' must be a non-empty list", line_of_key(text, key));
    }
    for (const Json& s : solvers) {
      const std::string name = s.get<std::string>();
      const auto& names = bench_solvers();
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError("unknown solver '" + name + "'", line_of_key(text, key));
      }
      cfg.solvers.push_back(name);
    }

    key = "lazy";
    if (j.contains("lazy")) {
      cfg.lazy.clear();
      if (j["lazy"].is_boolean()) {
        cfg.lazy.push_back(j["lazy"].get<bool>());
      } else if (j["lazy"].is_array() && !j["lazy"].empty()) {
        for (const Json& b : j["lazy"]) cfg.lazy.push_back(b.get<bool>());
      } else {
        throw ConfigError("'lazy' must be a bool or a non-empty list of bools", line_of_key(text, key));
      }
    }

    key = "params";
    if (j.contains("params")) {
      const Json& p = j["params"];
      if (!p.is_object()) throw ConfigError("'params' must be an object", line_of_key(text, key));
      cfg.params.c_t = p.value("c_t", cfg.params.c_t);
      cfg.params.c_pd = p.value("c_pd", cfg.params.c_pd);
      cfg.params.r = p.value("r", cfg.params.r);
      cfg.footprint = p.value("footprint", cfg.footprint);
      if (p.contains("detour_penalty")) cfg.params.detour_override = p["detour_penalty"].get<double>();
      if (p.contains("handling")) {
        const std::string h = p["handling"].get<std::string>();
        if (h == "per_object") {
          cfg.params.handling = Handling::kPerObject;
        } else if (h != "per_transfer") {
          throw ConfigError("unknown handling '" + h + "'", line_of_key(text, "handling"));
        }
      }
      if (p.contains("workspace")) {
        const Json& w = p["workspace"];
        if (!w.is_array() || w.size() != 4) {
          throw ConfigError("'workspace' must be [xmin, ymin, xmax, ymax]", line_of_key(text, "workspace"));
        }
        cfg.workspace = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
      }
      if (cfg.params.c_t < 0 || cfg.params.c_pd < 0 || cfg.params.r < 0 || cfg.footprint < 0) {
        throw ConfigError("cost parameters must be non-negative", line_of_key(text, key));
      }
    }

    key = "obstacles";
    if (j.contains("obstacles")) {
      for (const Json& o : j["obstacles"]) {
        if (!o.is_array() || o.size() != 4) {
          throw ConfigError("obstacles must be [xmin, ymin, xmax, ymax]", line_of_key(text, key));
        }
        cfg.obstacles.push_back({o[0].get<double>(), o[1].get<double>(), o[2].get<double>(), o[3].get<double>()});
      }
    }

    key = "budget_secs";
    cfg.budget_secs = j.value("budget_secs", cfg.budget_secs);
    if (!(cfg.budget_secs > 0)) throw ConfigError("'budget_secs' must be positive", line_of_key(text, key));
    key = "seed";
    cfg.seed = j.value("seed", cfg.seed);
    key = "workers";
    cfg.workers = j.value("workers", cfg.workers);
    if (cfg.workers < 1) throw ConfigError("'workers' must be at least 1", line_of_key(text, key));
    key = "max_retries";
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    if (cfg.max_retries < 0) throw ConfigError("'max_retries' must be non-negative", line_of_key(text, key));
    key = "write_plans";
    cfg.write_plans = j.value("write_plans", cfg.write_plans);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what(), line_of_key(text, key));
  }
  return cfg;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string(), 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_bench_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what(), e.line());
  }
}

Instance bench_instance(const BenchConfig& config, int n, std::uint64_t seed) {
  const std::uint64_t instance_seed = mix_seed(mix_seed(config.seed, static_cast<std::uint64_t>(n)), seed);
  Instance inst = generate_instance(n, instance_seed, config.workspace, config.params, config.footprint);
  inst.obstacles = config.obstacles;
  return inst;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string plan_file_name(const RunRecord& r) {
  return "n" + std::to_string(r.n) + "_seed" + std::to_string(r.seed) + "_" + r.solver + (r.lazy ? "_lazy" : "") +
         ".json";
}

Json record_json(const RunRecord& r) {
  Json j;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["instance_seed"] = r.instance_seed;
  j["solver"] = r.solver;
  j["lazy"] = r.lazy;
  j["outcome"] = to_string(r.outcome);
  j["cost"] = r.cost ? Json(*r.cost) : Json(nullptr);
  j["wall_time_secs"] = r.wall_time_secs;
  j["oracle_queries"] = r.oracle_queries;
  j["retries"] = r.retries;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// Outcome of an eager solver: its sequence is checked segment by segment.
void finish_eager(RunRecord& rec, const Instance& inst, MotionOracle& oracle, SolveStatus status,
                  const OmegaSequence& seq, std::optional<DualArmPlan>& plan) {
  if (status == SolveStatus::kTimeout) {
    rec.outcome = Outcome::kTimeout;
    return;
  }
  if (status == SolveStatus::kUnsolvable) {
    rec.outcome = Outcome::kUnsolvable;
    return;
  }
  try {
    plan = assemble_plan(inst, seq, oracle);
    rec.outcome = Outcome::kSuccess;
    rec.cost = plan->total_cost;
  } catch (const InfeasibleSegment& e) {
    rec.outcome = Outcome::kUnsolvable;
    rec.note = e.what();
  }
}

}  // namespace

CellOutput solve_cell(const BenchConfig& config, const Instance& inst, std::uint64_t seed, const std::string& solver,
                      bool lazy) {
  CellOutput out;
  RunRecord& rec = out.record;
  rec.n = inst.size();
  rec.seed = seed;
  rec.instance_seed = inst.seed;
  rec.solver = solver;
  rec.lazy = lazy;
  rec.params = inst.params;

  const auto start = Clock::now();
  MotionOracle oracle(inst);
  std::optional<DualArmPlan>& plan = out.plan;
  std::optional<LazyResult>& lazy_result = out.lazy;
  const std::uint64_t split_seed = mix_seed(inst.seed, 0x5EED);

  try {
    if (solver == "exhaustive" && rec.n > kExhaustiveCap) {
      rec.outcome = Outcome::kTimeout;
      rec.note = "exceeds the exhaustive size cap of " + std::to_string(kExhaustiveCap);
    } else if (lazy && solver != "single_arm") {
      LazyConfig lc;
      lc.solver = *parse_solver(solver);
      lc.max_retries = config.max_retries;
      lc.time_budget_secs = config.budget_secs;
      lc.seed = split_seed;
      lazy_result = lazy_solve(inst, oracle, lc);
      rec.retries = lazy_result->retries();
      switch (lazy_result->status) {
        case LazyStatus::kSuccess:
          rec.outcome = Outcome::kSuccess;
          plan = lazy_result->plan;
          rec.cost = plan->total_cost;
          break;
        case LazyStatus::kTimeout:
          rec.outcome = Outcome::kTimeout;
          break;
        default:
          rec.outcome = Outcome::kUnsolvable;
          rec.note = lazy_result->message;
      }
    } else if (solver == "exhaustive" || solver == "milp") {
      ExactOptions opt;
      opt.time_budget_secs = config.budget_secs;
      const SearchResult r = solver == "exhaustive" ? exhaustive_solve(oracle, opt) : milp_search(oracle, opt);
      finish_eager(rec, inst, oracle, r.status, r.sequence, plan);
    } else if (solver == "tom") {
      TomOptions opt;
      opt.time_budget_secs = config.budget_secs;
      const TomResult r = tom_solve(oracle, opt);
      finish_eager(rec, inst, oracle, r.status, r.sequence, plan);
    } else if (solver == "random_split") {
      finish_eager(rec, inst, oracle, SolveStatus::kOptimal, *random_split_sequence(rec.n, split_seed), plan);
    } else if (solver == "single_arm") {
      const SingleArmResult r = single_arm_solve(inst, oracle, config.budget_secs);
      finish_eager(rec, inst, oracle, r.status, r.sequence, plan);
    } else {
      rec.outcome = Outcome::kUnsolvable;
      rec.note = "unknown solver";
    }
  } catch (const std::exception& e) {
    rec.outcome = Outcome::kUnsolvable;
    rec.cost.reset();
    rec.note = std::string("error: ") + e.what();
  }
  rec.wall_time_secs = std::chrono::duration<double>(Clock::now() - start).count();
  rec.oracle_queries = oracle.queries();

  return out;
}

Json cell_json(const Instance& inst, const CellOutput& out) {
  Json j;
  j["record"] = record_json(out.record);
  j["instance"] = to_json(inst);
  if (out.plan) j["plan"] = to_json(*out.plan);
  if (out.lazy) {
    Json report = to_json(*out.lazy);
    report.erase("plan");
    j["lazy"] = report;
  }
  return j;
}

RunRecord run_cell(const BenchConfig& config, const Instance& inst, std::uint64_t seed, const std::string& solver,
                   bool lazy, const std::filesystem::path* plan_dir) {
  const CellOutput out = solve_cell(config, inst, seed, solver, lazy);
  if (plan_dir) write_json_file(*plan_dir / plan_file_name(out.record), cell_json(inst, out));
  return out.record;
}

std::vector<RunRecord> run_benchmark(const BenchConfig& config, const std::filesystem::path& out_dir) {
  struct Cell {
    int n;
    std::uint64_t seed;
    std::string solver;
    bool lazy;
  };
  std::vector<Cell> cells;
  for (int n : config.ns) {
    for (std::uint64_t seed : config.seeds) {
      for (const std::string& solver : config.solvers) {
        for (bool lazy : config.lazy) {
          if (lazy && solver == "single_arm") continue;
          cells.push_back({n, seed, solver, lazy});
        }
      }
    }
  }

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path plan_dir = out_dir / "plans";
  if (config.write_plans) std::filesystem::create_directories(plan_dir);

  std::vector<RunRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      try {
        const Instance inst = bench_instance(config, c.n, c.seed);
        records[i] = run_cell(config, inst, c.seed, c.solver, c.lazy, config.write_plans ? &plan_dir : nullptr);
      } catch (const std::exception& e) {
        RunRecord& r = records[i];
        r.n = c.n;
        r.seed = c.seed;
        r.solver = c.solver;
        r.lazy = c.lazy;
        r.params = config.params;
        r.outcome = Outcome::kUnsolvable;
        r.note = std::string("error: ") + e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ofstream runs(out_dir / "runs.csv");
  write_runs_csv(runs, records);
  std::ofstream summary(out_dir / "summary.csv");
  write_summary_csv(summary, records);
  return records;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Shortest form that reads back to the same double.
std::string num(double x) {
  char buf[40];
  return {buf, std::to_chars(buf, buf + sizeof buf, x).ptr};
}

}  // namespace

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "n,seed,instance_seed,solver,lazy,outcome,cost,wall_time_secs,oracle_queries,retries,c_t,c_pd,r,note\n";
  for (const RunRecord& r : records) {
    out << r.n << ',' << r.seed << ',' << r.instance_seed << ',' << r.solver << ',' << (r.lazy ? 1 : 0) << ','
        << to_string(r.outcome) << ',' << (r.cost ? num(*r.cost) : "") << ',' << num(r.wall_time_secs) << ','
        << r.oracle_queries << ',' << r.retries << ',' << num(r.params.c_t) << ',' << num(r.params.c_pd) << ','
        << num(r.params.r) << ',' << csv_field(r.note) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  struct Group {
    int runs = 0;
    int successes = 0;
    int timeouts = 0;
    double cost = 0.0;
    double time = 0.0;
    double queries = 0.0;
  };
  using Key = std::tuple<int, std::string, bool>;
  std::vector<Key> order;
  std::map<Key, Group> groups;
  for (const RunRecord& r : records) {
    const Key key{r.n, r.solver, r.lazy};
    if (!groups.count(key)) order.push_back(key);
    Group& g = groups[key];
    ++g.runs;
    g.time += r.wall_time_secs;
    g.queries += static_cast<double>(r.oracle_queries);
    if (r.outcome == Outcome::kTimeout) ++g.timeouts;
    if (r.cost) {
      ++g.successes;
      g.cost += *r.cost;
    }
  }
  out << "n,solver,lazy,runs,successes,timeouts,success_rate,mean_cost,mean_time_secs,mean_oracle_queries\n";
  for (const Key& key : order) {
    const Group& g = groups[key];
    out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << (std::get<2>(key) ? 1 : 0) << ',' << g.runs << ','
        << g.successes << ',' << g.timeouts << ',' << num(static_cast<double>(g.successes) / g.runs) << ','
        << (g.successes ? num(g.cost / g.successes) : "") << ',' << num(g.time / g.runs) << ','
        << num(g.queries / g.runs) << '\n';
  }
}

}  // namespace dualarm
