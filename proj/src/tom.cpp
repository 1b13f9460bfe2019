#include "dualarm/tom.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>

namespace dualarm {

namespace {

constexpr int kOrientationCap = 14;  // pairs

// Both arm assignments of a pair have the same transfer cost when the arms
// are identical, but they differ in the moves around them. Picks the
// assignment of every such pair from the cheapest tour under lookup costs,
// which issues no oracle queries. Larger instances keep the graph's choice.
std::vector<Omega> orient_tasks(const Instance& inst, const TransferGraph& g, const Matching& m) {
  std::vector<Omega> tasks = matching_tasks(g, m);
  const int k = static_cast<int>(tasks.size());
  if (k < 1 || k > kOrientationCap) return tasks;

  // Stop 2c + o is pair c in orientation o; stop 2k is the safe stop.
  std::vector<Stop> stops(2 * k + 1, kSafe);
  std::vector<int> choices(k, 1);
  for (int c = 0; c < k; ++c) {
    const auto [u, v] = m.pairs[c];
    stops[2 * c] = tasks[c];
    stops[2 * c + 1] = Omega{tasks[c].arm2, tasks[c].arm1};
    if (g.orientation_free(u, v)) choices[c] = 2;
  }
  HeuristicCosts lookup(inst);
  const int safe = 2 * k;
  std::vector<double> move((2 * k + 1) * (2 * k + 1), 0.0);
  for (int a = 0; a <= safe; ++a) {
    for (int b = 0; b <= safe; ++b) {
      if (a / 2 != b / 2 || a == safe || b == safe) move[a * (safe + 1) + b] = lookup.move(stops[a], stops[b]).cost;
    }
  }
  auto cost = [&](int a, int b) { return move[a * (safe + 1) + b]; };

  // f[mask][stop]: cheapest lookup tour from the safe stop through the pairs
  // in mask, ending at stop.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::vector<double> f(static_cast<std::size_t>(full + 1) * 2 * k, kInf);
  auto at = [&](std::uint32_t mask, int stop) -> double& { return f[static_cast<std::size_t>(mask) * 2 * k + stop]; };
  for (int c = 0; c < k; ++c) {
    for (int o = 0; o < choices[c]; ++o) at(std::uint32_t{1} << c, 2 * c + o) = cost(safe, 2 * c + o);
  }
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int a = 0; a < 2 * k; ++a) {
      const double here = at(mask, a);
      if (!(mask >> (a / 2) & 1) || here == kInf) continue;
      for (int b = 0; b < 2 * k; ++b) {
        if ((mask >> (b / 2) & 1) || b % 2 >= choices[b / 2]) continue;
        double& next = at(mask | (std::uint32_t{1} << (b / 2)), b);
        next = std::min(next, here + cost(a, b));
      }
    }
  }

  // Walk the optimum backwards; the first stop attaining a value wins, so
  // the graph's orientation is kept on ties.
  double best = kInf;
  int last = -1;
  for (int a = 0; a < 2 * k; ++a) {
    if (a % 2 >= choices[a / 2]) continue;
    const double total = at(full, a) + cost(a, safe);
    if (total < best) {
      best = total;
      last = a;
    }
  }
  std::uint32_t mask = full;
  while (last >= 0) {
    tasks[last / 2] = *stops[last];
    const double value = at(mask, last);
    mask &= ~(std::uint32_t{1} << (last / 2));
    int prev = -1;
    for (int a = 0; a < 2 * k && mask; ++a) {
      if ((mask >> (a / 2) & 1) && a % 2 < choices[a / 2] && at(mask, a) + cost(a, last) == value) {
        prev = a;
        break;
      }
    }
    last = prev;
  }
  return tasks;
}

}  // namespace

TransitGraph build_transit_graph(CostModel& costs, const std::vector<Omega>& tasks,
                                 const BlockedSet* blocked) {
  TransitGraph g;
  g.stops.push_back(kSafe);
  for (const Omega& t : tasks) g.stops.emplace_back(t);
  const int m = static_cast<int>(g.stops.size());
  g.cost = CostMatrix(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double c = costs.move(g.stops[i], g.stops[j]).cost;
      ++g.evaluations;
      if (blocked && blocked->blocks(g.stops[i], g.stops[j])) continue;
      g.cost(i, j) = c;
    }
  }
  return g;
}

TomResult tom_solve(CostModel& costs, const TomOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  TomResult result;
  const TransferGraph transfer = build_transfer_graph(costs, options.blocked);
  result.transfer_evaluations = transfer.evaluations;
  result.matching = min_weight_perfect_matching(transfer);
  if (!result.matching.perfect) {
    result.wall_time_secs = elapsed();
    return result;
  }
  const std::vector<Omega> tasks = orient_tasks(costs.instance(), transfer, result.matching);

  const TransitGraph transit = build_transit_graph(costs, tasks, options.blocked);
  result.move_evaluations = transit.evaluations;
  AtspOptions atsp;
  atsp.held_karp_cap = options.held_karp_cap;
  atsp.time_budget_secs = std::max(0.0, options.time_budget_secs - elapsed());
  const Tour tour = solve_atsp(transit.cost, atsp);
  result.wall_time_secs = elapsed();
  if (tour.status != SolveStatus::kOptimal) {
    result.status = tour.status;
    return result;
  }

  for (std::size_t i = 1; i < tour.order.size(); ++i) result.sequence.push_back(*transit.stops[tour.order[i]]);
  result.transfer_cost = result.matching.weight;
  result.transit_cost = tour.cost;
  result.objective = result.transfer_cost + result.transit_cost;
  result.status = SolveStatus::kOptimal;
  return result;
}

}  // namespace dualarm
