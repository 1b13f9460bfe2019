#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "dualarm/atsp.hpp"
#include "dualarm/exact.hpp"
#include "dualarm/matching.hpp"
#include "dualarm/oracle.hpp"

namespace dualarm {

/// Complete directed graph over the matched tasks plus the safe stop
/// (node 0). Arc costs are coordinated move costs; blocked moves are
/// infinite.
struct TransitGraph {
  std::vector<Stop> stops;
  CostMatrix cost;
  std::size_t evaluations = 0;
};

TransitGraph build_transit_graph(CostModel& costs, const std::vector<Omega>& tasks,
                                 const BlockedSet* blocked = nullptr);

struct TomOptions {
  double time_budget_secs = 300.0;
  int held_karp_cap = kHeldKarpCap;
  const BlockedSet* blocked = nullptr;
};

struct TomResult {
  SolveStatus status = SolveStatus::kUnsolvable;
  OmegaSequence sequence;
  Matching matching;
  double transfer_cost = std::numeric_limits<double>::infinity();
  double transit_cost = std::numeric_limits<double>::infinity();
  double objective = std::numeric_limits<double>::infinity();
  std::size_t transfer_evaluations = 0;
  std::size_t move_evaluations = 0;
  double wall_time_secs = 0.0;

  bool has_solution() const { return status == SolveStatus::kOptimal; }
};

/// Tour over matching: minimum-weight perfect matching of the transfer
/// graph, then the cheapest tour through the matched tasks from and back to
/// the safe configuration. Unsolvable when blocking leaves no perfect
/// matching or no closed tour.
TomResult tom_solve(CostModel& costs, const TomOptions& options = {});

}  // namespace dualarm
