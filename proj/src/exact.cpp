#include "dualarm/exact.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace dualarm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t task_mask(const Omega& t) {
  std::uint64_t m = 0;
  if (t.arm1 != kNoAct) m |= std::uint64_t{1} << t.arm1;
  if (t.arm2 != kNoAct) m |= std::uint64_t{1} << t.arm2;
  return m;
}

std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_size(int n) {
  if (n < 1 || n > 63) throw std::invalid_argument("solver supports 1..63 objects");
}

// Dense memo of transfer and move costs over a fixed task list; index
// tasks.size() stands for the safe configuration.
class CostTable {
 public:
  CostTable(CostModel& costs, const std::vector<Omega>& tasks)
      : costs_(costs), tasks_(tasks), safe_(static_cast<int>(tasks.size())),
        transfer_(tasks.size(), kUnset), move_((tasks.size() + 1) * (tasks.size() + 1), kUnset) {}

  int safe() const { return safe_; }

  double transfer(int t) {
    double& c = transfer_[t];
    if (std::isnan(c)) {
      c = costs_.transfer(tasks_[t]).cost;
      ++transfer_evaluations;
    }
    return c;
  }

  double move(int from, int to) {
    double& c = move_[static_cast<std::size_t>(from) * (safe_ + 1) + to];
    if (std::isnan(c)) {
      c = costs_.move(stop(from), stop(to)).cost;
      ++move_evaluations;
    }
    return c;
  }

  Stop stop(int t) const { return t == safe_ ? kSafe : Stop(tasks_[t]); }

  std::size_t transfer_evaluations = 0;
  std::size_t move_evaluations = 0;

 private:
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  CostModel& costs_;
  const std::vector<Omega>& tasks_;
  int safe_;
  std::vector<double> transfer_;
  std::vector<double> move_;
};

std::vector<Omega> allowed_tasks(int n, NoActPolicy policy, const BlockedSet* blocked) {
  std::vector<Omega> tasks = enumerate_tasks(n, policy);
  if (blocked) {
    std::erase_if(tasks, [&](const Omega& t) { return blocked->blocks(t); });
  }
  return tasks;
}

bool better(double candidate, double incumbent) {
  if (std::isinf(incumbent)) return candidate < incumbent;
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kTimeout: return "timeout";
    case SolveStatus::kUnsolvable: return "unsolvable";
  }
  return "?";
}

std::vector<Omega> enumerate_tasks(int n, NoActPolicy policy) {
  std::vector<Omega> tasks;
  const bool with_noact = policy == NoActPolicy::kFull || n % 2 == 1;
  for (int a = (policy == NoActPolicy::kFull ? kNoAct : 0); a < n; ++a) {
    for (int b = (with_noact ? kNoAct : 0); b < n; ++b) {
      if (a == b) continue;
      tasks.push_back({a, b});
    }
  }
  return tasks;
}

SearchResult exhaustive_solve(CostModel& costs, const ExactOptions& options) {
  const auto start = Clock::now();
  const Instance& inst = costs.instance();
  const int n = inst.size();
  check_size(n);
  if (n > options.max_objects) {
    throw std::invalid_argument("exhaustive_solve: " + std::to_string(n) +
                                " objects exceeds the cap of " + std::to_string(options.max_objects));
  }
  const BlockedSet* blocked = options.blocked;
  const std::vector<Omega> tasks = allowed_tasks(n, options.noact, blocked);
  const int num_tasks = static_cast<int>(tasks.size());
  std::vector<std::uint64_t> masks(tasks.size());
  std::transform(tasks.begin(), tasks.end(), masks.begin(), task_mask);

  // Move blocks resolved to task indices once.
  CostTable table(costs, tasks);
  std::vector<char> move_blocked;
  if (blocked && !blocked->moves.empty()) {
    move_blocked.assign(static_cast<std::size_t>(num_tasks + 1) * (num_tasks + 1), 0);
    for (int a = 0; a <= num_tasks; ++a) {
      for (int b = 0; b <= num_tasks; ++b) {
        if (blocked->blocks(table.stop(a), table.stop(b))) {
          move_blocked[static_cast<std::size_t>(a) * (num_tasks + 1) + b] = 1;
        }
      }
    }
  }
  auto is_move_blocked = [&](int a, int b) {
    return !move_blocked.empty() && move_blocked[static_cast<std::size_t>(a) * (num_tasks + 1) + b];
  };

  SearchResult result;
  std::vector<int> path;
  std::vector<int> best_path;
  double best = std::numeric_limits<double>::infinity();
  bool timed_out = false;
  std::size_t nodes = 0;

  std::function<void(std::uint64_t, int, double)> expand = [&](std::uint64_t remaining, int last,
                                                                 double so_far) {
    if (timed_out) return;
    if (remaining == 0) {
      if (is_move_blocked(last, table.safe())) return;
      const double total = so_far + table.move(last, table.safe());
      if (better(total, best)) {
        best = total;
        best_path = path;
      }
      return;
    }
    for (int t = 0; t < num_tasks; ++t) {
      if ((masks[t] & ~remaining) != 0) continue;
      if (is_move_blocked(last, t)) continue;
      if ((++nodes & 0xFFF) == 0 && seconds_since(start) > options.time_budget_secs) {
        timed_out = true;
        return;
      }
      const double g = so_far + table.move(last, t) + table.transfer(t);
      path.push_back(t);
      expand(remaining & ~masks[t], t, g);
      path.pop_back();
      if (timed_out) return;
    }
  };
  expand(full_mask(n), table.safe(), 0.0);

  for (int t : best_path) result.sequence.push_back(tasks[t]);
  result.objective = best;
  result.nodes = nodes;
  result.transfer_evaluations = table.transfer_evaluations;
  result.move_evaluations = table.move_evaluations;
  if (timed_out) {
    result.status = SolveStatus::kTimeout;
  } else if (best_path.empty()) {
    result.status = SolveStatus::kUnsolvable;
  } else {
    result.status = SolveStatus::kOptimal;
    result.lower_bound = best;
  }
  result.wall_time_secs = seconds_since(start);
  return result;
}

std::int64_t permutations(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0) throw std::domain_error("permutations: negative argument");
  if (k > n) return 0;
  std::int64_t p = 1;
  for (std::int64_t i = 0; i < k; ++i) p *= n - i;
  return p;
}

namespace {

void require_even(int n) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("query counts are defined for even n >= 2");
}

Rational reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace

QueryCount count_queries_exhaustive(int n) {
  require_even(n);
  const std::int64_t p = permutations(n, 2);
  return {p, p * permutations(n - 2, 2) + 2 * p};
}

std::int64_t count_queries_tom(int n) {
  require_even(n);
  return permutations(n, 2) + permutations(n / 2 + 1, 2);
}

Rational query_ratio(int n) {
  return reduced(count_queries_exhaustive(n).total(), count_queries_tom(n));
}

Rational query_ratio_closed_form(int n) {
  require_even(n);
  const std::int64_t m = n;
  return reduced(4 * (m - 1) * ((m - 5) * m + 9), 5 * m - 2);
}

std::uint64_t MilpGraph::object_mask(int v) const {
  return v == kSource ? 0 : task_mask(tasks[v - 1]);
}

MilpGraph build_milp_graph(CostModel& costs, NoActPolicy policy, const BlockedSet* blocked) {
  const int n = costs.instance().size();
  check_size(n);
  MilpGraph g;
  g.num_objects = n;
  g.tasks = allowed_tasks(n, policy, blocked);
  const int num_tasks = static_cast<int>(g.tasks.size());
  CostTable table(costs, g.tasks);
  auto stop_of = [&](int v) { return v == MilpGraph::kSource ? kSafe : Stop(g.tasks[v - 1]); };
  auto index_of = [&](int v) { return v == MilpGraph::kSource ? table.safe() : v - 1; };

  for (int u = 0; u <= num_tasks; ++u) {
    const std::uint64_t mu = g.object_mask(u);
    for (int v = 0; v <= num_tasks; ++v) {
      if (u == v) continue;
      if (u != MilpGraph::kSource && v != MilpGraph::kSource && (mu & g.object_mask(v)) != 0) continue;
      if (blocked && blocked->blocks(stop_of(u), stop_of(v))) continue;
      const double transfer = u == MilpGraph::kSource ? 0.0 : table.transfer(index_of(u));
      g.edges.push_back({u, v, transfer + table.move(index_of(u), index_of(v))});
    }
  }
  return g;
}

MilpSolution milp_solve(const MilpGraph& g, const MilpOptions& options) {
  const auto start = Clock::now();
  const int n = g.num_objects;
  const int num_vertices = g.vertex_count();
  const std::uint64_t full = full_mask(n);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<int>> out(num_vertices);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) out[g.edges[e].from].push_back(e);
  std::vector<std::uint64_t> masks(num_vertices);
  for (int v = 0; v < num_vertices; ++v) masks[v] = g.object_mask(v);

  // Admissible completion bound: each remaining object pays its share of the
  // cheapest out-edge of the task that will carry it.
  std::vector<double> min_out(num_vertices, kInf);
  for (const auto& e : g.edges) min_out[e.from] = std::min(min_out[e.from], e.cost);
  std::vector<double> object_share(n, kInf);
  for (int v = 1; v < num_vertices; ++v) {
    const double share = min_out[v] / std::popcount(masks[v]);
    for (std::uint64_t m = masks[v]; m; m &= m - 1) {
      const int o = std::countr_zero(m);
      object_share[o] = std::min(object_share[o], share);
    }
  }
  auto bound = [&](std::uint64_t covered, int v) {
    double h = min_out[v];
    for (std::uint64_t m = full & ~covered; m; m &= m - 1) h += object_share[std::countr_zero(m)];
    return h;
  };

  MilpSolution sol;
  if (std::any_of(object_share.begin(), object_share.end(), [](double s) { return std::isinf(s); })) {
    sol.wall_time_secs = seconds_since(start);
    return sol;
  }

  struct Node {
    double g;
    std::uint64_t covered;
    int vertex;
    int parent;  // node index
    int edge;    // edge into this node
    bool closed;  // tour returned to S
  };
  std::vector<Node> nodes;
  nodes.push_back({0.0, 0, MilpGraph::kSource, -1, -1, false});

  auto edge_path = [&](int node) {
    std::vector<int> edges;
    for (int i = node; nodes[i].parent >= 0; i = nodes[i].parent) edges.push_back(nodes[i].edge);
    std::reverse(edges.begin(), edges.end());
    return edges;
  };

  // Greedy dive for an initial incumbent.
  double incumbent = kInf;
  std::vector<int> incumbent_edges;
  {
    std::uint64_t covered = 0;
    int v = MilpGraph::kSource;
    double cost = 0.0;
    std::vector<int> edges;
    while (true) {
      int pick = -1;
      for (int e : out[v]) {
        const int w = g.edges[e].to;
        const bool valid = covered == full ? w == MilpGraph::kSource
                                           : w != MilpGraph::kSource && (masks[w] & covered) == 0;
        if (valid && (pick < 0 || g.edges[e].cost < g.edges[pick].cost)) pick = e;
      }
      if (pick < 0) break;
      edges.push_back(pick);
      cost += g.edges[pick].cost;
      v = g.edges[pick].to;
      if (v == MilpGraph::kSource) {
        incumbent = cost;
        incumbent_edges = edges;
        break;
      }
      covered |= masks[v];
    }
  }

  using Entry = std::pair<double, int>;  // (f, node index); ties go to older nodes
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  open.push({bound(0, MilpGraph::kSource), 0});
  std::unordered_map<std::uint64_t, double> best_g;
  auto state_key = [&](std::uint64_t covered, int v) {
    return covered * static_cast<std::uint64_t>(num_vertices) + static_cast<std::uint64_t>(v);
  };
  const double slack = 1e-12 * std::max(1.0, std::isinf(incumbent) ? 1.0 : incumbent);

  bool timed_out = false;
  int goal = -1;
  std::size_t expanded = 0;
  while (!open.empty()) {
    const auto [f, id] = open.top();
    open.pop();
    if (f > incumbent + slack) continue;
    const Node node = nodes[id];
    if (node.closed) {
      goal = id;
      break;
    }
    if (auto it = best_g.find(state_key(node.covered, node.vertex));
        it != best_g.end() && it->second < node.g) {
      continue;
    }
    if ((++expanded & 0xFF) == 0 &&
        (seconds_since(start) > options.time_budget_secs || nodes.size() > options.max_nodes)) {
      timed_out = true;
      sol.lower_bound = f;
      break;
    }
    for (int e : out[node.vertex]) {
      const MilpEdge& edge = g.edges[e];
      const int w = edge.to;
      const double gw = node.g + edge.cost;
      if (w == MilpGraph::kSource) {
        if (node.covered != full || node.vertex == MilpGraph::kSource) continue;
        if (gw > incumbent + slack) continue;
        nodes.push_back({gw, node.covered, w, id, e, true});
        open.push({gw, static_cast<int>(nodes.size()) - 1});
        continue;
      }
      if ((masks[w] & node.covered) != 0) continue;
      const std::uint64_t covered = node.covered | masks[w];
      const double fw = gw + bound(covered, w);
      if (fw > incumbent + slack) continue;
      const auto key = state_key(covered, w);
      if (auto it = best_g.find(key); it != best_g.end() && it->second <= gw) continue;
      best_g[key] = gw;
      nodes.push_back({gw, covered, w, id, e, false});
      open.push({fw, static_cast<int>(nodes.size()) - 1});
    }
  }

  sol.nodes = expanded;
  if (goal >= 0) {
    sol.status = SolveStatus::kOptimal;
    sol.selected = edge_path(goal);
    sol.objective = nodes[goal].g;
    sol.lower_bound = sol.objective;
  } else if (!timed_out && !incumbent_edges.empty()) {
    // Every open node was dominated by the incumbent.
    sol.status = SolveStatus::kOptimal;
    sol.selected = incumbent_edges;
    sol.objective = incumbent;
    sol.lower_bound = incumbent;
  } else if (timed_out) {
    sol.status = SolveStatus::kTimeout;
    sol.selected = incumbent_edges;
    sol.objective = incumbent;
  }
  for (int e : sol.selected) {
    const int v = g.edges[e].to;
    if (v != MilpGraph::kSource) sol.sequence.push_back(g.tasks[v - 1]);
  }
  sol.wall_time_secs = seconds_since(start);
  return sol;
}

std::vector<std::string> audit_milp_selection(const MilpGraph& g, const std::vector<int>& selected) {
  std::vector<std::string> violations;
  const int num_vertices = g.vertex_count();
  const int num_edges = static_cast<int>(g.edges.size());

  std::vector<int> x(num_edges, 0);
  for (int e : selected) {
    if (e < 0 || e >= num_edges) {
      violations.push_back("[B] edge index " + std::to_string(e) + " out of range");
      continue;
    }
    if (++x[e] > 1) violations.push_back("[B] edge " + std::to_string(e) + " selected twice");
  }

  std::vector<int> in(num_vertices, 0);
  std::vector<int> outdeg(num_vertices, 0);
  std::vector<int> successor(num_vertices, -1);
  for (int e = 0; e < num_edges; ++e) {
    if (!x[e]) continue;
    ++in[g.edges[e].to];
    ++outdeg[g.edges[e].from];
    successor[g.edges[e].from] = g.edges[e].to;
  }
  for (int v = 0; v < num_vertices; ++v) {
    if (in[v] > 1) violations.push_back("[C] in-degree of vertex " + std::to_string(v) + " exceeds 1");
    if (outdeg[v] > 1) violations.push_back("[D] out-degree of vertex " + std::to_string(v) + " exceeds 1");
    if (in[v] != outdeg[v]) violations.push_back("[E] flow not conserved at vertex " + std::to_string(v));
  }
  if (in[MilpGraph::kSource] != 1) violations.emplace_back("[F] S must have exactly one in-edge");
  if (outdeg[MilpGraph::kSource] != 1) violations.emplace_back("[G] S must have exactly one out-edge");

  for (int o = 0; o < g.num_objects; ++o) {
    int coverage = 0;
    for (int e = 0; e < num_edges; ++e) {
      if (x[e] && (g.object_mask(g.edges[e].from) >> o & 1)) coverage += x[e];
    }
    if (coverage != 1) {
      violations.push_back("[H] object " + std::to_string(o) + " covered " + std::to_string(coverage) + " times");
    }
  }

  // [I]: walking from S must reach every vertex that carries flow.
  std::vector<char> on_tour(num_vertices, 0);
  for (int v = MilpGraph::kSource, steps = 0; v >= 0 && !on_tour[v] && steps <= num_vertices; ++steps) {
    on_tour[v] = 1;
    v = successor[v];
  }
  for (int v = 0; v < num_vertices; ++v) {
    if (outdeg[v] > 0 && !on_tour[v]) {
      violations.push_back("[I] vertex " + std::to_string(v) + " lies on a subtour avoiding S");
      break;
    }
  }
  return violations;
}

namespace {

class CountingCosts final : public CostModel {
 public:
  explicit CountingCosts(CostModel& inner) : inner_(inner) {}
  const Instance& instance() const override { return inner_.instance(); }
  CoordCost transfer(const Omega& task) override {
    ++transfers;
    return inner_.transfer(task);
  }
  CoordCost move(const Stop& from, const Stop& to) override {
    ++moves;
    return inner_.move(from, to);
  }
  std::size_t transfers = 0;
  std::size_t moves = 0;

 private:
  CostModel& inner_;
};

}  // namespace

SearchResult milp_search(CostModel& costs, const ExactOptions& options) {
  const auto start = Clock::now();
  CountingCosts counting(costs);
  const MilpGraph g = build_milp_graph(counting, options.noact, options.blocked);
  MilpOptions milp;
  milp.time_budget_secs = std::max(0.0, options.time_budget_secs - seconds_since(start));
  const MilpSolution sol = milp_solve(g, milp);

  SearchResult result;
  result.status = sol.status;
  result.sequence = sol.sequence;
  result.objective = sol.objective;
  result.lower_bound = sol.lower_bound;
  result.nodes = sol.nodes;
  result.transfer_evaluations = counting.transfers;
  result.move_evaluations = counting.moves;
  result.wall_time_secs = seconds_since(start);
  return result;
}

}  // namespace dualarm
