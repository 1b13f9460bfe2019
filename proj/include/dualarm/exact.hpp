#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dualarm/oracle.hpp"
#include "dualarm/types.hpp"

namespace dualarm {

/// Which NO_ACT tasks a solver may use.
enum class NoActPolicy {
  kPadOdd,  // (o, NO_ACT) tasks exist only when n is odd
  kFull,    // (o, NO_ACT) and (NO_ACT, o) for every object
};

enum class SolveStatus { kOptimal, kTimeout, kUnsolvable };

const char* to_string(SolveStatus status);

/// All tasks a sequence may contain, in lexicographic order (NO_ACT first).
std::vector<Omega> enumerate_tasks(int n, NoActPolicy policy);

inline constexpr int kExhaustiveCap = 10;

struct ExactOptions {
  double time_budget_secs = 300.0;
  int max_objects = kExhaustiveCap;
  NoActPolicy noact = NoActPolicy::kPadOdd;
  const BlockedSet* blocked = nullptr;
};

struct SearchResult {
  SolveStatus status = SolveStatus::kUnsolvable;
  OmegaSequence sequence;  // best sequence found; empty when none
  double objective = std::numeric_limits<double>::infinity();
  double lower_bound = 0.0;  // proven bound; equals objective when optimal
  std::size_t nodes = 0;
  std::size_t transfer_evaluations = 0;
  std::size_t move_evaluations = 0;
  double wall_time_secs = 0.0;

  bool has_solution() const { return !sequence.empty(); }
};

/// Depth-first expansion of every sequence of tasks. Transfer and move costs
/// are fetched once each. Among equal-cost optima the lexicographically
/// smallest sequence wins. Throws std::invalid_argument when n exceeds
/// options.max_objects.
SearchResult exhaustive_solve(CostModel& costs, const ExactOptions& options = {});

struct QueryCount {
  std::int64_t transfers = 0;
  std::int64_t moves = 0;
  std::int64_t total() const { return transfers + moves; }
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::int64_t permutations(std::int64_t n, std::int64_t k);

/// Motion-planning queries of the exhaustive baseline for even n: P(n,2)
/// transfers, P(n,2)P(n-2,2) moves between tasks plus 2P(n,2) safe moves.
QueryCount count_queries_exhaustive(int n);
/// Queries of tour-over-matching for even n: P(n,2) + P(n/2+1, 2).
std::int64_t count_queries_tom(int n);
/// Exhaustive over tour-over-matching query counts, reduced.
Rational query_ratio(int n);
/// The closed form 4(n-1)((n-5)n+9) / (5n-2), reduced.
Rational query_ratio_closed_form(int n);

/// Vertex 0 is S; vertex i > 0 is tasks[i-1].
struct MilpEdge {
  int from = 0;
  int to = 0;
  double cost = 0.0;  // transfer of the source task plus the move
};

struct MilpGraph {
  static constexpr int kSource = 0;
  int num_objects = 0;
  std::vector<Omega> tasks;
  std::vector<MilpEdge> edges;

  int vertex_count() const { return static_cast<int>(tasks.size()) + 1; }
  /// Objects transferred at vertex v (none for S).
  std::uint64_t object_mask(int v) const;
};

/// Builds the complete pair graph with all edge costs evaluated. Edges
/// connect tasks that share no object, plus S to and from every task.
MilpGraph build_milp_graph(CostModel& costs, NoActPolicy policy = NoActPolicy::kPadOdd,
                           const BlockedSet* blocked = nullptr);

struct MilpOptions {
  double time_budget_secs = 300.0;
  std::size_t max_nodes = 20'000'000;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::kUnsolvable;
  std::vector<int> selected;  // indices into MilpGraph::edges with x_e = 1
  double objective = std::numeric_limits<double>::infinity();
  double lower_bound = 0.0;
  OmegaSequence sequence;
  std::size_t nodes = 0;
  double wall_time_secs = 0.0;

  double gap() const { return objective - lower_bound; }
};

/// Exact minimum of the pair-graph model: best-first branch and bound over
/// partial tours rooted at S. Partial tours never close a cycle away from S,
/// so subtour elimination holds by construction.
MilpSolution milp_solve(const MilpGraph& g, const MilpOptions& options = {});

/// Checks an edge selection against the model constraints literally:
/// binary selection, degree bounds, flow conservation, S in/out, object
/// coverage through source vertices, and no cycle avoiding S.
std::vector<std::string> audit_milp_selection(const MilpGraph& g, const std::vector<int>& selected);

/// Runs build_milp_graph and milp_solve, filling evaluation counters.
SearchResult milp_search(CostModel& costs, const ExactOptions& options = {});

}  // namespace dualarm
