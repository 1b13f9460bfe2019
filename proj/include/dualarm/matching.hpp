#pragma once

#include <cstdint>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "dualarm/oracle.hpp"
#include "dualarm/types.hpp"

namespace dualarm {

/// Undirected reduction of the complete directed transfer graph. Each vertex
/// pair keeps the cheaper orientation. For odd n a pseudo vertex stands for
/// NO_ACT; its edge to object o carries the single-arm transfer (o, NO_ACT).
class TransferGraph {
 public:
  static constexpr double kAbsent = std::numeric_limits<double>::infinity();

  TransferGraph() = default;
  /// Graph over `vertices` vertices with no edges.
  explicit TransferGraph(int vertices, int objects = -1);

  int vertex_count() const { return vertices_; }
  int object_count() const { return objects_; }
  bool is_pseudo(int v) const { return v >= objects_; }

  double weight(int u, int v) const { return weight_[index(u, v)]; }
  bool has_edge(int u, int v) const { return u != v && weight(u, v) != kAbsent; }
  const Omega& task(int u, int v) const { return task_[index(u, v)]; }
  /// True when both arm assignments of the pair cost the same.
  bool orientation_free(int u, int v) const { return free_[index(u, v)] != 0; }
  void set_edge(int u, int v, double w, const Omega& task, bool orientation_free = false);
  void remove_edge(int u, int v);

  /// Directed transfer evaluations performed while building.
  std::size_t evaluations = 0;

 private:
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(u) * vertices_ + v; }

  int vertices_ = 0;
  int objects_ = 0;
  std::vector<double> weight_;
  std::vector<Omega> task_;
  std::vector<char> free_;
};

/// Evaluates all P(n,2) directed transfers (and n single-arm transfers for
/// odd n). Blocked transfers remove the undirected edge; swapping the arms of
/// a transfer gives the same motion, so both orientations fail together.
TransferGraph build_transfer_graph(CostModel& costs, const BlockedSet* blocked = nullptr);

struct Matching {
  bool perfect = false;
  std::vector<std::pair<int, int>> pairs;  // u < v, sorted by u
  double weight = std::numeric_limits<double>::infinity();
};

/// Sum of pair weights in canonical (sorted) order.
double matching_weight(const TransferGraph& g, const std::vector<std::pair<int, int>>& pairs);

/// Oriented tasks of a matching, pseudo vertices mapped to NO_ACT.
std::vector<Omega> matching_tasks(const TransferGraph& g, const Matching& m);

/// Maximum-weight matching on integer weights (Edmonds' blossom algorithm
/// with dual variables). Returns mate[v] or -1.
std::vector<int> max_weight_matching(int vertices,
                                     const std::vector<std::tuple<int, int, std::int64_t>>& edges,
                                     bool max_cardinality);

/// Exact minimum-weight perfect matching via the blossom algorithm. Costs are
/// scaled to integers for the solver; the reported weight is recomputed in
/// doubles. perfect is false when no perfect matching exists.
Matching min_weight_perfect_matching(const TransferGraph& g);

inline constexpr int kBruteforceMatchingCap = 12;
inline constexpr int kSubsetMatchingCap = 20;

/// Enumerates all (n-1)!! perfect matchings. Throws std::invalid_argument
/// above kBruteforceMatchingCap vertices.
Matching matching_bruteforce_oracle(const TransferGraph& g, std::uint64_t* enumerated = nullptr);

/// Subset dynamic program over vertex sets. Throws std::invalid_argument
/// above kSubsetMatchingCap vertices.
Matching matching_subset_dp(const TransferGraph& g);

}  // namespace dualarm
