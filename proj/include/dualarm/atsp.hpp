#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "dualarm/exact.hpp"

namespace dualarm {

/// Dense asymmetric cost matrix; node 0 is the depot. Infinite entries are
/// forbidden arcs.
struct CostMatrix {
  int size = 0;
  std::vector<double> cost;  // row-major

  CostMatrix() = default;
  explicit CostMatrix(int m)
      : size(m), cost(static_cast<std::size_t>(m) * m, std::numeric_limits<double>::infinity()) {}
  double operator()(int i, int j) const { return cost[static_cast<std::size_t>(i) * size + j]; }
  double& operator()(int i, int j) { return cost[static_cast<std::size_t>(i) * size + j]; }
};

struct Tour {
  SolveStatus status = SolveStatus::kUnsolvable;
  std::vector<int> order;  // starts at 0; the return arc to 0 is implicit
  double cost = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
};

/// Cost of visiting `order` and returning to its first node, summed forward.
double tour_cost(const CostMatrix& c, const std::vector<int>& order);

inline constexpr int kHeldKarpCap = 14;
inline constexpr int kBruteforceTourCap = 11;

struct AtspOptions {
  double time_budget_secs = 300.0;
  int held_karp_cap = kHeldKarpCap;
};

/// Held-Karp subset DP. Among optimal tours the lexicographically smallest
/// order is returned.
Tour held_karp(const CostMatrix& c);

/// Depth-first branch and bound with an assignment-problem lower bound.
Tour atsp_branch_and_bound(const CostMatrix& c, double time_budget_secs = 300.0);

/// Held-Karp up to held_karp_cap nodes, branch and bound above.
Tour solve_atsp(const CostMatrix& c, const AtspOptions& options = {});

/// Enumerates all (m-1)! tours in lexicographic order; the first optimum
/// wins. Throws std::invalid_argument above kBruteforceTourCap nodes.
Tour atsp_bruteforce_oracle(const CostMatrix& c);

/// Minimum-cost assignment (rows to columns) by the Hungarian method.
/// Returns the column of each row; infinite costs are treated as forbidden,
/// and the returned cost is infinite when no finite assignment exists.
double min_cost_assignment(const CostMatrix& c, std::vector<int>* column_of_row = nullptr);

}  // namespace dualarm
