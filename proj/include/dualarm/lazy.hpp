#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualarm/exact.hpp"
#include "dualarm/oracle.hpp"
#include "dualarm/plan.hpp"

namespace dualarm {

enum class SolverId { kExhaustive, kMilp, kTom, kRandomSplit };

const char* to_string(SolverId id);
/// Accepts "exhaustive", "milp", "tom", "random_split".
std::optional<SolverId> parse_solver(const std::string& name);

struct LazyConfig {
  SolverId solver = SolverId::kTom;
  bool heuristic = true;  // candidates from lookup costs instead of the oracle
  int max_retries = 50;
  double time_budget_secs = 300.0;
  std::uint64_t seed = 0;  // random_split only
  NoActPolicy noact = NoActPolicy::kPadOdd;
};

enum class LazyStatus { kSuccess, kUnsolvable, kTimeout, kRetriesExhausted };

const char* to_string(LazyStatus status);

struct LazyResult {
  LazyStatus status = LazyStatus::kUnsolvable;
  std::optional<DualArmPlan> plan;
  BlockedSet blocked;
  int solver_invocations = 0;
  std::size_t feasibility_checks = 0;  // checks made while validating candidates
  std::vector<double> candidate_costs;  // candidate objective under the planning costs
  double wall_time_secs = 0.0;
  std::string message;

  bool success() const { return status == LazyStatus::kSuccess; }
  int retries() const { return solver_invocations > 0 ? solver_invocations - 1 : 0; }
};

/// Plan with blocked edges excluded, validate segments in execution order,
/// block the first failing transfer or move and retry. A returned plan carries
/// true oracle costs.
LazyResult lazy_solve(const Instance& inst, MotionOracle& oracle, const LazyConfig& config);

/// Uniform random split of the objects between the arms with a uniform
/// random order. For odd n the last task is (o, NO_ACT). Sequences that use a
/// blocked edge are rejected and redrawn; returns nullopt after 1000 draws.
std::optional<OmegaSequence> random_split_sequence(int n, std::uint64_t seed,
                                                   const BlockedSet* blocked = nullptr);

/// random_split_sequence assembled with true costs. Throws InfeasibleSegment
/// when a segment fails the oracle.
DualArmPlan random_split_solve(const Instance& inst, MotionOracle& oracle, std::uint64_t seed);

struct SingleArmResult {
  SolveStatus status = SolveStatus::kUnsolvable;
  OmegaSequence sequence;  // tasks (o, NO_ACT) in visiting order
  double transfer_cost = 0.0;
  double transit_cost = 0.0;
  double cost = 0.0;
};

/// Arm 1 alone, arm 2 parked at its safe point: the transfer total is fixed
/// and the transit total is minimized exactly as an asymmetric TSP over the
/// safe point and the objects.
SingleArmResult single_arm_solve(const Instance& inst, MotionOracle& oracle,
                                 double time_budget_secs = 300.0);

}  // namespace dualarm
