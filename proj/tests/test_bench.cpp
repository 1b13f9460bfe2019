#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dualarm/bench.hpp"
#include "dualarm/instance.hpp"
#include "dualarm/io.hpp"

using namespace dualarm;
namespace fs = std::filesystem;

namespace {

int config_error_line(const std::string& text) {
  try {
    parse_bench_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dualarm_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const char* kSweep = R"({
  "ns": [2, 4],
  "seeds": 5,
  "solvers": ["exhaustive", "tom"],
  "lazy": false,
  "params": {"c_t": 1.0, "c_pd": 0.1, "r": 0.02},
  "obstacles": []
})";

}  // namespace

TEST_CASE("config parsing") {
  const BenchConfig c = parse_bench_config(kSweep);
  CHECK(c.ns == std::vector<int>{2, 4});
  CHECK(c.seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  CHECK(c.solvers == std::vector<std::string>{"exhaustive", "tom"});
  CHECK(c.lazy == std::vector<bool>{false});
  CHECK(c.params.c_pd == 0.1);
  CHECK(c.params.r == 0.02);

  const BenchConfig listed = parse_bench_config(
      R"({"ns": [3], "seeds": [7, 9], "solvers": ["milp"], "lazy": [false, true],
          "params": {}, "obstacles": [[0.1, 0.1, 0.2, 0.2]]})");
  CHECK(listed.seeds == std::vector<std::uint64_t>{7, 9});
  CHECK(listed.lazy == std::vector<bool>{false, true});
  REQUIRE(listed.obstacles.size() == 1);
  CHECK(listed.obstacles[0].xmax == 0.2);
}

TEST_CASE("config errors carry the offending line") {
  CHECK(config_error_line("{\n  \"ns\": [2],\n  \"seeds\": 1,\n  \"solvers\": [],\n  \"params\": {}\n}") == 4);
  CHECK(config_error_line("{\n  \"ns\": [2],\n  \"colour\": 1\n}") == 3);
  CHECK(config_error_line("{\n  \"ns\": [2],\n  \"seeds\": 1,\n  \"solvers\": [\"simplex\"]\n}") == 4);
  CHECK(config_error_line("{\n  \"ns\": [0],\n  \"seeds\": 1,\n  \"solvers\": [\"tom\"]\n}") == 2);
  CHECK(config_error_line("{\n  \"ns\": [2],\n  \"seeds\": 1,\n  \"solvers\": [\"tom\"],,\n}") == 4);
  CHECK(config_error_line("{\"seeds\": 1, \"solvers\": [\"tom\"]}") >= 0);

  try {
    parse_bench_config("{\n  \"ns\": [2],\n  \"seeds\": 1,\n  \"solvers\": []\n}");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("line 4: ", 0) == 0);
  }
}

TEST_CASE("sweep over two sizes and two solvers") {
  const BenchConfig c = parse_bench_config(kSweep);
  const fs::path dir = scratch_dir("sweep");
  const std::vector<RunRecord> records = run_benchmark(c, dir);
  REQUIRE(records.size() == 20);

  std::map<std::pair<int, std::uint64_t>, std::map<std::string, double>> cost;
  for (const RunRecord& r : records) {
    REQUIRE(r.outcome == Outcome::kSuccess);
    REQUIRE(r.cost.has_value());
    CHECK(r.oracle_queries > 0);
    cost[{r.n, r.seed}][r.solver] = *r.cost;
  }
  CHECK(cost.size() == 10);
  for (const auto& [cell, by_solver] : cost) {
    CHECK(by_solver.at("exhaustive") <= by_solver.at("tom") + 1e-9);
  }

  const auto runs = lines_of(dir / "runs.csv");
  REQUIRE(runs.size() == 21);
  CHECK(runs[0] == "n,seed,instance_seed,solver,lazy,outcome,cost,wall_time_secs,oracle_queries,retries,c_t,c_pd,r,note");
  const auto summary = lines_of(dir / "summary.csv");
  REQUIRE(summary.size() == 5);
  CHECK(summary[0].rfind("n,solver,lazy,runs,successes,timeouts,success_rate,", 0) == 0);
  CHECK(summary[1].rfind("2,exhaustive,0,5,5,0,1,", 0) == 0);

  // Every stored plan verifies against its stored instance.
  int plans = 0;
  for (const auto& entry : fs::directory_iterator(dir / "plans")) {
    const Json j = read_json_file(entry.path());
    const Instance inst = instance_from_json(j.at("instance"));
    const DualArmPlan plan = plan_from_json(j.at("plan"));
    CHECK(verify_plan(inst, plan).ok);
    CHECK(plan.total_cost == j.at("record").at("cost").get<double>());
    ++plans;
  }
  CHECK(plans == 20);
  fs::remove_all(dir);
}

TEST_CASE("results do not depend on the worker count") {
  BenchConfig c = parse_bench_config(kSweep);
  c.lazy = {false, true};
  c.write_plans = false;
  const fs::path one = scratch_dir("workers1");
  const fs::path four = scratch_dir("workers4");
  const auto a = run_benchmark(c, one);
  c.workers = 4;
  const auto b = run_benchmark(c, four);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].solver == b[i].solver);
    CHECK(a[i].lazy == b[i].lazy);
    CHECK(a[i].cost == b[i].cost);
    CHECK(a[i].oracle_queries == b[i].oracle_queries);
  }
  CHECK_FALSE(fs::exists(one / "plans" / "n2_seed0_tom.json"));
  fs::remove_all(one);
  fs::remove_all(four);
}

TEST_CASE("instances depend on the base seed") {
  BenchConfig c = parse_bench_config(kSweep);
  const Instance a = bench_instance(c, 4, 1);
  CHECK(bench_instance(c, 4, 1).objects[0].start == a.objects[0].start);
  CHECK_FALSE(bench_instance(c, 4, 2).objects[0].start == a.objects[0].start);
  c.seed = 5;
  CHECK_FALSE(bench_instance(c, 4, 1).objects[0].start == a.objects[0].start);
}

TEST_CASE("outcomes that are not successes") {
  BenchConfig c = parse_bench_config(kSweep);
  c.budget_secs = 1e-4;
  const Instance big = bench_instance(c, 10, 0);
  const CellOutput slow = solve_cell(c, big, 0, "exhaustive", false);
  CHECK(slow.record.outcome == Outcome::kTimeout);
  CHECK_FALSE(slow.record.cost.has_value());
  CHECK_FALSE(slow.plan.has_value());

  const Instance over = bench_instance(c, 12, 0);
  const CellOutput capped = solve_cell(c, over, 0, "exhaustive", false);
  CHECK(capped.record.outcome == Outcome::kTimeout);
  CHECK_FALSE(capped.record.note.empty());

  // Object 0 sits inside an obstacle, so it can never be carried.
  BenchConfig walled = parse_bench_config(kSweep);
  Instance inst = bench_instance(walled, 4, 0);
  const Point2 s = inst.objects[0].start;
  inst.obstacles = {Rect{s.x - 0.01, s.y - 0.01, s.x + 0.01, s.y + 0.01}};
  const CellOutput blocked = solve_cell(walled, inst, 0, "tom", true);
  CHECK(blocked.record.outcome == Outcome::kUnsolvable);
  REQUIRE(blocked.lazy.has_value());
  CHECK(blocked.lazy->status == LazyStatus::kUnsolvable);
  CHECK(solve_cell(walled, inst, 0, "tom", false).record.outcome == Outcome::kUnsolvable);

  std::ostringstream csv;
  write_runs_csv(csv, {slow.record});
  CHECK(csv.str().find(",exhaustive,0,timeout,,") != std::string::npos);
}

TEST_CASE("instance and plan files round-trip exactly") {
  CostParams p;
  p.c_pd = 0.1;
  p.r = 0.02;
  Instance inst = generate_instance(6, 123, Rect{}, p, 0.0);
  inst.obstacles = {Rect{0.9, 0.9, 0.95, 0.95}};
  const Instance back = instance_from_json(to_json(inst));
  CHECK(to_json(back) == to_json(inst));
  REQUIRE(back.objects.size() == 6);
  CHECK(back.objects[3].goal == inst.objects[3].goal);
  CHECK(back.params.r == inst.params.r);

  const BenchConfig c = parse_bench_config(kSweep);
  const CellOutput out = solve_cell(c, inst, 0, "milp", false);
  REQUIRE(out.plan.has_value());
  const fs::path dir = scratch_dir("roundtrip");
  fs::create_directories(dir);
  write_json_file(dir / "plan.json", cell_json(inst, out));
  const Json j = read_json_file(dir / "plan.json");
  const DualArmPlan plan = plan_from_json(j.at("plan"));
  CHECK(plan.sequence == out.plan->sequence);
  CHECK(plan.total_cost == out.plan->total_cost);
  CHECK(verify_plan(instance_from_json(j.at("instance")), plan).ok);

  DualArmPlan tampered = plan;
  tampered.total_cost += 1e-6;
  CHECK_FALSE(verify_plan(inst, tampered).ok);
  tampered = plan;
  tampered.segments[1].cost += 1e-6;
  CHECK_FALSE(verify_plan(inst, tampered).ok);
  fs::remove_all(dir);

  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"objects": 3})")), FormatError);
}
