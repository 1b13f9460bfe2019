#include "dualarm/atsp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dualarm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_square(const CostMatrix& c) {
  if (c.size < 1 || c.cost.size() != static_cast<std::size_t>(c.size) * c.size) {
    throw std::invalid_argument("ATSP cost matrix must be square and non-empty");
  }
}

Tour trivial_tour() {
  Tour t;
  t.status = SolveStatus::kOptimal;
  t.order = {0};
  t.cost = 0.0;
  return t;
}

Tour finish(const CostMatrix& c, std::vector<int> order, std::size_t nodes) {
  Tour t;
  t.nodes = nodes;
  if (order.empty()) return t;
  t.order = std::move(order);
  t.cost = tour_cost(c, t.order);
  t.status = std::isinf(t.cost) ? SolveStatus::kUnsolvable : SolveStatus::kOptimal;
  if (t.status == SolveStatus::kUnsolvable) t.order.clear();
  return t;
}

}  // namespace

double tour_cost(const CostMatrix& c, const std::vector<int>& order) {
  if (order.size() <= 1) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) sum += c(order[i], order[i + 1]);
  return sum + c(order.back(), order.front());
}

Tour held_karp(const CostMatrix& c) {
  require_square(c);
  const int m = c.size;
  if (m == 1) return trivial_tour();
  if (m > 24) throw std::invalid_argument("held_karp: too many nodes");

  // rest[mask][v]: cheapest way to start at v (already visited together with
  // mask), cover the remaining nodes and return to 0. Nodes 1..m-1 map to
  // bits 0..m-2.
  const int k = m - 1;
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::vector<double> rest(static_cast<std::size_t>(full + 1) * k, kInf);
  auto at = [&](std::uint32_t mask, int v) -> double& {
    return rest[static_cast<std::size_t>(mask) * k + (v - 1)];
  };
  for (int v = 1; v < m; ++v) at(full, v) = c(v, 0);
  for (std::uint32_t mask = full; mask-- > 0;) {
    for (int v = 1; v < m; ++v) {
      if (!(mask >> (v - 1) & 1)) continue;
      double best = kInf;
      for (int w = 1; w < m; ++w) {
        if (mask >> (w - 1) & 1) continue;
        best = std::min(best, c(v, w) + at(mask | (std::uint32_t{1} << (w - 1)), w));
      }
      at(mask, v) = best;
    }
  }

  // Forward reconstruction picking the smallest successor that attains the
  // optimum gives the lexicographically smallest optimal tour.
  double best = kInf;
  for (int w = 1; w < m; ++w) best = std::min(best, c(0, w) + at(std::uint32_t{1} << (w - 1), w));
  if (std::isinf(best)) return Tour{};
  std::vector<int> order{0};
  std::uint32_t mask = 0;
  int v = 0;
  double target = best;
  while (mask != full) {
    int pick = -1;
    double pick_value = kInf;
    for (int w = 1; w < m; ++w) {
      if (mask >> (w - 1) & 1) continue;
      const double value = c(v, w) + at(mask | (std::uint32_t{1} << (w - 1)), w);
      if (value == target) {
        pick = w;
        break;
      }
      if (pick < 0 || value < pick_value) {
        pick = w;
        pick_value = value;
      }
    }
    mask |= std::uint32_t{1} << (pick - 1);
    target = at(mask, pick);
    order.push_back(pick);
    v = pick;
  }
  return finish(c, std::move(order), static_cast<std::size_t>(full + 1) * k);
}

double min_cost_assignment(const CostMatrix& c, std::vector<int>* column_of_row) {
  const int n = c.size;
  if (n == 0) return 0.0;
  // Forbidden arcs get a cost large enough that any assignment using one is
  // recognizably worse than every finite assignment.
  double finite_max = 0.0;
  for (double x : c.cost) {
    if (std::isfinite(x)) finite_max = std::max(finite_max, std::abs(x));
  }
  const double big = (finite_max + 1.0) * (n + 1) * 4.0;
  auto cost = [&](int i, int j) {
    const double x = c(i, j);
    return std::isfinite(x) ? x : big;
  };

  // Shortest augmenting path formulation with potentials (1-indexed).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> col(n);
  for (int j = 1; j <= n; ++j) col[p[j] - 1] = j - 1;
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += c(i, col[i]);
  if (column_of_row) *column_of_row = col;
  return total;
}

Tour atsp_branch_and_bound(const CostMatrix& c, double time_budget_secs) {
  require_square(c);
  const int m = c.size;
  if (m == 1) return trivial_tour();
  const auto start = std::chrono::steady_clock::now();

  // Nearest-neighbour incumbent, if it closes.
  std::vector<int> best_order;
  double best = kInf;
  {
    std::vector<int> order{0};
    std::vector<char> seen(m, 0);
    seen[0] = 1;
    for (int step = 1; step < m; ++step) {
      int pick = -1;
      for (int w = 0; w < m; ++w) {
        const double cw = c(order.back(), w);
        if (!seen[w] && std::isfinite(cw) && (pick < 0 || cw < c(order.back(), pick))) {
          pick = w;
        }
      }
      if (pick < 0) break;
      seen[pick] = 1;
      order.push_back(pick);
    }
    if (static_cast<int>(order.size()) == m && std::isfinite(tour_cost(c, order))) {
      best = tour_cost(c, order);
      best_order = order;
    }
  }

  // Lower bound for completing a path at `last` through `unvisited` back to
  // 0: assignment of {last} + unvisited (rows) onto unvisited + {0} (cols).
  auto bound = [&](int last, const std::vector<int>& unvisited) {
    const int k = static_cast<int>(unvisited.size());
    CostMatrix sub(k + 1);
    std::vector<int> rows{last};
    rows.insert(rows.end(), unvisited.begin(), unvisited.end());
    std::vector<int> cols(unvisited);
    cols.push_back(0);
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) {
        if (rows[i] == cols[j]) continue;
        if (i == 0 && j == k && k > 0) continue;  // cannot close before visiting everything
        sub(i, j) = c(rows[i], cols[j]);
      }
    }
    return min_cost_assignment(sub);
  };

  std::vector<int> order{0};
  std::vector<char> seen(m, 0);
  seen[0] = 1;
  std::size_t nodes = 0;
  bool timed_out = false;
  const double eps = 1e-12;

  std::function<void(double)> dfs = [&](double so_far) {
    if (timed_out) return;
    if ((++nodes & 0x3F) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > time_budget_secs) {
      timed_out = true;
      return;
    }
    const int last = order.back();
    if (static_cast<int>(order.size()) == m) {
      const double total = so_far + c(last, 0);
      if (total < best - eps * std::max(1.0, std::abs(best))) {
        best = total;
        best_order = order;
      }
      return;
    }
    std::vector<int> unvisited;
    for (int w = 1; w < m; ++w) {
      if (!seen[w]) unvisited.push_back(w);
    }
    const double lb = so_far + bound(last, unvisited);
    // Keep equal-cost branches alive so the smallest order can win ties.
    if (!(lb <= best + eps * std::max(1.0, std::abs(best)))) return;
    for (int w : unvisited) {
      if (!std::isfinite(c(last, w))) continue;
      seen[w] = 1;
      order.push_back(w);
      dfs(so_far + c(last, w));
      order.pop_back();
      seen[w] = 0;
      if (timed_out) return;
    }
  };
  dfs(0.0);

  Tour t = finish(c, best_order, nodes);
  if (timed_out) t.status = SolveStatus::kTimeout;
  return t;
}

Tour solve_atsp(const CostMatrix& c, const AtspOptions& options) {
  require_square(c);
  if (c.size <= options.held_karp_cap) return held_karp(c);
  return atsp_branch_and_bound(c, options.time_budget_secs);
}

Tour atsp_bruteforce_oracle(const CostMatrix& c) {
  require_square(c);
  const int m = c.size;
  if (m > kBruteforceTourCap) {
    throw std::invalid_argument("atsp_bruteforce_oracle: more than " + std::to_string(kBruteforceTourCap) +
                                " nodes");
  }
  std::vector<int> perm(m - 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> best_order;
  double best = kInf;
  std::size_t count = 0;
  do {
    std::vector<int> order{0};
    order.insert(order.end(), perm.begin(), perm.end());
    const double cost = tour_cost(c, order);
    ++count;
    if (cost < best) {
      best = cost;
      best_order = order;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return finish(c, best_order, count);
}

}  // namespace dualarm
