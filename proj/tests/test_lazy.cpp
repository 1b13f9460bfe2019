#include <doctest.h>

#include <cmath>
#include <set>

#include "dualarm/exact.hpp"
#include "dualarm/instance.hpp"
#include "dualarm/lazy.hpp"
#include "dualarm/plan.hpp"
#include "dualarm/tom.hpp"

using namespace dualarm;

namespace {

CostParams baseline(double r = 0.02) {
  CostParams p;
  p.c_pd = 0.1;
  p.r = r;
  return p;
}

// Objects 0 and 1 swap past a small obstacle, so no transfer may carry both
// at once; pairing either with 2 or 3 is clear.
Instance swap_past_obstacle() {
  Instance inst;
  inst.params = baseline();
  inst.safe = {Point2{-0.2, 0.5}, Point2{1.2, 0.5}};
  inst.objects = {{0, {0.3, 0.3}, {0.5, 0.5}},
                  {1, {0.5, 0.3}, {0.3, 0.5}},
                  {2, {0.7, 0.7}, {0.9, 0.7}},
                  {3, {0.7, 0.2}, {0.9, 0.2}}};
  inst.obstacles = {Rect{0.39, 0.44, 0.41, 0.46}};
  return inst;
}

bool pairs(const Omega& t, int a, int b) { return std::set<int>{t.arm1, t.arm2} == std::set<int>{a, b}; }

}  // namespace

TEST_CASE("solver names") {
  for (SolverId id : {SolverId::kExhaustive, SolverId::kMilp, SolverId::kTom, SolverId::kRandomSplit}) {
    CHECK(parse_solver(to_string(id)) == id);
  }
  CHECK_FALSE(parse_solver("simplex").has_value());
}

TEST_CASE("without obstacles the first candidate is accepted") {
  for (int n : {2, 3, 4, 6}) {
    const Instance inst = generate_instance(n, 21, Rect{}, baseline(0.0), 0.0);
    MotionOracle oracle(inst);
    const LazyResult r = lazy_solve(inst, oracle, LazyConfig{});
    REQUIRE(r.success());
    CHECK(r.solver_invocations == 1);
    CHECK(r.retries() == 0);
    CHECK(r.blocked.empty());
    CHECK(r.feasibility_checks == 2 * r.plan->sequence.size() + 1);
    CHECK(r.feasibility_checks == r.plan->segments.size());
  }
}

TEST_CASE("a blocked pairing is replaced on the second invocation") {
  const Instance inst = swap_past_obstacle();
  MotionOracle oracle(inst);
  CHECK_FALSE(oracle.transfer_feasible({0, 1}));
  CHECK_FALSE(oracle.transfer_feasible({1, 0}));
  CHECK(oracle.transfer_feasible({0, 2}));
  CHECK(oracle.transfer_feasible({1, 3}));

  const LazyResult r = lazy_solve(inst, oracle, LazyConfig{});
  REQUIRE(r.success());
  CHECK(r.solver_invocations == 2);
  CHECK(r.candidate_costs.size() == 2);
  REQUIRE(r.blocked.transfers.size() == 1);
  CHECK(pairs(*r.blocked.transfers.begin(), 0, 1));
  for (const Omega& t : r.plan->sequence) CHECK_FALSE(pairs(t, 0, 1));
  CHECK(verify_plan(inst, *r.plan).ok);
}

TEST_CASE("every solver recovers from the blocked pairing") {
  const Instance inst = swap_past_obstacle();
  for (SolverId id : {SolverId::kExhaustive, SolverId::kMilp, SolverId::kTom, SolverId::kRandomSplit}) {
    for (bool heuristic : {true, false}) {
      MotionOracle oracle(inst);
      LazyConfig cfg;
      cfg.solver = id;
      cfg.heuristic = heuristic;
      cfg.seed = 3;
      const LazyResult r = lazy_solve(inst, oracle, cfg);
      INFO(to_string(id), " heuristic=", heuristic);
      REQUIRE(r.success());
      CHECK(verify_plan(inst, *r.plan).ok);
      CHECK(static_cast<int>(r.blocked.size()) == r.solver_invocations - 1);
      for (const Omega& t : r.plan->sequence) CHECK_FALSE(r.blocked.blocks(t));
    }
  }
}

TEST_CASE("exact lazy solvers return the best plan among valid sequences") {
  const Instance inst = swap_past_obstacle();
  MotionOracle oracle(inst);
  LazyConfig cfg;
  cfg.solver = SolverId::kExhaustive;
  cfg.heuristic = false;
  const LazyResult r = lazy_solve(inst, oracle, cfg);
  REQUIRE(r.success());
  // Brute force over all sequences, keeping those that assemble.
  double best = std::numeric_limits<double>::infinity();
  const auto tasks = enumerate_tasks(4, NoActPolicy::kPadOdd);
  for (const Omega& a : tasks) {
    for (const Omega& b : tasks) {
      const OmegaSequence seq{a, b};
      if (!validate_sequence(inst, seq).ok()) continue;
      try {
        best = std::min(best, assemble_plan(inst, seq, oracle).total_cost);
      } catch (const InfeasibleSegment&) {
      }
    }
  }
  CHECK(r.plan->total_cost == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("an object that cannot be carried makes the instance unsolvable") {
  Instance inst = swap_past_obstacle();
  // Covers the whole path of object 2.
  inst.obstacles = {Rect{0.75, 0.69, 0.85, 0.71}};
  MotionOracle oracle(inst);
  const LazyResult r = lazy_solve(inst, oracle, LazyConfig{});
  CHECK(r.status == LazyStatus::kUnsolvable);
  CHECK_FALSE(r.plan.has_value());
  CHECK(r.solver_invocations >= 2);
  for (const Omega& t : r.blocked.transfers) CHECK((t.arm1 == 2 || t.arm2 == 2));
  CHECK(r.blocked.transfers.size() == 3);
}

TEST_CASE("the retry limit is honoured") {
  const Instance inst = swap_past_obstacle();
  MotionOracle oracle(inst);
  LazyConfig cfg;
  cfg.max_retries = 0;
  const LazyResult r = lazy_solve(inst, oracle, cfg);
  CHECK(r.status == LazyStatus::kRetriesExhausted);
  CHECK(r.solver_invocations == 1);
}

TEST_CASE("lazy matches eager tom without obstacles") {
  for (double r_arm : {0.0, 0.02}) {
    for (int seed = 0; seed < 15; ++seed) {
      const int n = 2 + seed % 6;
      const Instance inst = generate_instance(n, static_cast<std::uint64_t>(40 + seed), Rect{}, baseline(r_arm), 0.0);
      MotionOracle eager_oracle(inst);
      const TomResult eager = tom_solve(eager_oracle);
      const double eager_cost = assemble_plan(inst, eager.sequence, eager_oracle).total_cost;
      MotionOracle lazy_oracle(inst);
      LazyConfig cfg;
      cfg.heuristic = r_arm == 0.0;
      const LazyResult r = lazy_solve(inst, lazy_oracle, cfg);
      REQUIRE(r.success());
      CHECK(std::abs(r.plan->total_cost - eager_cost) <= 1e-9);
    }
  }
}

TEST_CASE("random split") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto seq = random_split_sequence(2, seed);
    REQUIRE(seq.has_value());
    REQUIRE(seq->size() == 1);
    CHECK(pairs(seq->front(), 0, 1));
  }

  const Instance inst = generate_instance(7, 4, Rect{}, baseline(), 0.0);
  MotionOracle oracle(inst);
  const DualArmPlan a = random_split_solve(inst, oracle, 99);
  const DualArmPlan b = random_split_solve(inst, oracle, 99);
  CHECK(a.sequence == b.sequence);
  CHECK(a.total_cost == b.total_cost);
  CHECK(validate_sequence(inst, a.sequence).ok());
  CHECK(a.sequence.back().arm2 == kNoAct);

  std::set<OmegaSequence> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) seen.insert(*random_split_sequence(7, seed));
  CHECK(seen.size() > 10);
}

TEST_CASE("random split respects blocked edges") {
  BlockedSet blocked;
  blocked.transfers = {Omega{0, 1}, Omega{1, 0}};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto seq = random_split_sequence(4, seed, &blocked);
    REQUIRE(seq.has_value());
    for (const Omega& t : *seq) CHECK_FALSE(pairs(t, 0, 1));
  }
  CHECK_FALSE(random_split_sequence(2, 0, &blocked).has_value());
}

TEST_CASE("random split never beats the optimum") {
  for (int n : {2, 3, 4, 5, 6}) {
    for (int seed = 0; seed < 10; ++seed) {
      const Instance inst = generate_instance(n, static_cast<std::uint64_t>(seed), Rect{}, baseline(), 0.0);
      MotionOracle oracle(inst);
      CHECK(random_split_solve(inst, oracle, static_cast<std::uint64_t>(seed)).total_cost >=
            milp_search(oracle).objective - 1e-9);
    }
  }
}

TEST_CASE("single arm on one object is a forced tour") {
  CostParams p = baseline();
  p.c_t = 2.0;
  const Instance inst = generate_instance(1, 7, Rect{}, p, 0.0);
  MotionOracle oracle(inst);
  const SingleArmResult r = single_arm_solve(inst, oracle);
  REQUIRE(r.status == SolveStatus::kOptimal);
  const auto& o = inst.objects[0];
  const double expected =
      p.c_pd + p.c_t * (distance(inst.safe[0], o.start) + distance(o.start, o.goal) + distance(o.goal, inst.safe[0]));
  CHECK(r.cost == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.transfer_cost == doctest::Approx(p.c_pd + p.c_t * distance(o.start, o.goal)).epsilon(1e-12));
}

TEST_CASE("single arm takes the cheaper of the two orders") {
  for (int seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_instance(2, static_cast<std::uint64_t>(seed), Rect{}, baseline(), 0.0);
    MotionOracle oracle(inst);
    const SingleArmResult r = single_arm_solve(inst, oracle);
    const double a = sequence_cost({{0, kNoAct}, {1, kNoAct}}, oracle);
    const double b = sequence_cost({{1, kNoAct}, {0, kNoAct}}, oracle);
    CHECK(r.cost == doctest::Approx(std::min(a, b)).epsilon(1e-12));
    CHECK(r.transfer_cost + r.transit_cost == doctest::Approx(r.cost).epsilon(1e-12));
  }
}

TEST_CASE("two arms with NO_ACT never lose to one arm") {
  ExactOptions full;
  full.noact = NoActPolicy::kFull;
  for (int n : {1, 2, 3, 4, 5}) {
    for (int seed = 0; seed < 6; ++seed) {
      const Instance inst = generate_instance(n, static_cast<std::uint64_t>(seed), Rect{}, baseline(), 0.0);
      MotionOracle oracle(inst);
      CHECK(exhaustive_solve(oracle, full).objective <= single_arm_solve(inst, oracle).cost + 1e-9);
    }
  }
}
