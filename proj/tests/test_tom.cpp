#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "dualarm/atsp.hpp"
#include "dualarm/exact.hpp"
#include "dualarm/instance.hpp"
#include "dualarm/matching.hpp"
#include "dualarm/plan.hpp"
#include "dualarm/tom.hpp"

using namespace dualarm;

namespace {

CostParams baseline() {
  CostParams p;
  p.c_pd = 0.1;
  p.r = 0.02;
  return p;
}

TransferGraph random_graph(int n, std::mt19937_64& rng, bool integer) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> small(0, 4);
  TransferGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) g.set_edge(a, b, integer ? small(rng) : u(rng), Omega{a, b});
  }
  return g;
}

CostMatrix random_matrix(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  CostMatrix c(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) c(i, j) = u(rng);
    }
  }
  return c;
}

// Four vertical transfers with lengths 1, 1, 2, 2, spaced far apart.
Instance four_lengths() {
  Instance inst;
  inst.params.c_t = 1.0;
  const double len[] = {1.0, 1.0, 2.0, 2.0};
  for (int i = 0; i < 4; ++i) inst.objects.push_back({i, {3.0 * i, 0.0}, {3.0 * i, len[i]}});
  inst.safe = {Point2{-3.0, 0.0}, Point2{12.0, 0.0}};
  inst.workspace = {0.0, 0.0, 9.0, 2.0};
  return inst;
}

}  // namespace

TEST_CASE("equal lengths are matched together") {
  const Instance inst = four_lengths();
  MotionOracle oracle(inst);
  const TransferGraph g = build_transfer_graph(oracle);
  CHECK(g.evaluations == 12);
  const Matching m = min_weight_perfect_matching(g);
  REQUIRE(m.perfect);
  CHECK(m.weight == doctest::Approx(3.0));
  CHECK(m.pairs == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(matching_weight(g, {{0, 2}, {1, 3}}) == doctest::Approx(4.0));
  CHECK(matching_weight(g, {{0, 3}, {1, 2}}) == doctest::Approx(4.0));
}

TEST_CASE("transfer graph structure") {
  const Instance two = generate_instance(2, 1, Rect{}, baseline(), 0.0);
  MotionOracle o2(two);
  const TransferGraph g2 = build_transfer_graph(o2);
  CHECK(g2.vertex_count() == 2);
  CHECK(g2.has_edge(0, 1));
  const Matching m2 = min_weight_perfect_matching(g2);
  CHECK(m2.pairs == std::vector<std::pair<int, int>>{{0, 1}});

  const Instance four = generate_instance(4, 1, Rect{}, baseline(), 0.0);
  MotionOracle o4(four);
  const TransferGraph g4 = build_transfer_graph(o4);
  int edges = 0;
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      REQUIRE(g4.has_edge(u, v));
      ++edges;
      const double lower = std::max(distance(four.objects[u].start, four.objects[u].goal),
                                    distance(four.objects[v].start, four.objects[v].goal));
      CHECK(g4.weight(u, v) >= lower);
      CHECK(g4.weight(u, v) ==
            std::min(transfer_cost(four, {u, v}).cost, transfer_cost(four, {v, u}).cost));
    }
  }
  CHECK(edges == 6);

  const Instance five = generate_instance(5, 1, Rect{}, baseline(), 0.0);
  MotionOracle o5(five);
  const TransferGraph g5 = build_transfer_graph(o5);
  CHECK(g5.vertex_count() == 6);
  CHECK(g5.is_pseudo(5));
  CHECK(g5.evaluations == 20 + 5);
  CHECK(g5.task(2, 5) == Omega{2, kNoAct});
  CHECK(g5.weight(2, 5) == transfer_cost(five, {2, kNoAct}).cost);
}

TEST_CASE("crossing transfers carry the detour penalty") {
  Instance inst;
  inst.params.r = 0.05;
  inst.objects = {{0, {0, 0}, {1, 1}}, {1, {1, 0}, {0, 1}}};
  inst.safe = {Point2{-1, 0.5}, Point2{2, 0.5}};
  MotionOracle oracle(inst);
  const TransferGraph g = build_transfer_graph(oracle);
  const double penalty = 2 * std::numbers::pi * 0.05;
  CHECK(g.weight(0, 1) == doctest::Approx(std::sqrt(2.0) + penalty));
  CHECK(transfer_cost(inst, {1, 0}).cost == doctest::Approx(std::sqrt(2.0) + penalty));
}

TEST_CASE("blocked transfers drop the undirected edge") {
  const Instance inst = generate_instance(4, 3, Rect{}, baseline(), 0.0);
  MotionOracle oracle(inst);
  BlockedSet blocked;
  blocked.transfers.insert(Omega{2, 0});
  const TransferGraph g = build_transfer_graph(oracle, &blocked);
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(2, 0));
  CHECK(g.has_edge(0, 1));
  const Matching m = min_weight_perfect_matching(g);
  REQUIRE(m.perfect);
  for (auto [u, v] : m.pairs) CHECK_FALSE((u == 0 && v == 2));
}

TEST_CASE("brute-force matching enumerates every perfect matching") {
  std::mt19937_64 rng(5);
  std::uint64_t count = 0;
  matching_bruteforce_oracle(random_graph(4, rng, false), &count);
  CHECK(count == 3);
  matching_bruteforce_oracle(random_graph(6, rng, false), &count);
  CHECK(count == 15);
  matching_bruteforce_oracle(random_graph(10, rng, false), &count);
  CHECK(count == 945);
  CHECK_THROWS_AS(matching_bruteforce_oracle(random_graph(14, rng, false)), std::invalid_argument);
}

TEST_CASE("blossom equals brute force and subset DP") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + 2 * (t % 6);
    const TransferGraph g = random_graph(n, rng, t % 3 == 0);
    const Matching m = min_weight_perfect_matching(g);
    const Matching bf = matching_bruteforce_oracle(g);
    REQUIRE(m.perfect);
    CHECK(m.weight == bf.weight);
    CHECK(matching_subset_dp(g).weight == bf.weight);
    std::set<int> covered;
    for (auto [u, v] : m.pairs) {
      CHECK(u < v);
      covered.insert(u);
      covered.insert(v);
    }
    CHECK(static_cast<int>(covered.size()) == n);
  }
}

TEST_CASE("blossom on sparse graphs") {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution keep(0.5);
  int imperfect = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + 2 * (t % 4);
    TransferGraph g = random_graph(n, rng, false);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (!keep(rng)) g.remove_edge(a, b);
      }
    }
    const Matching m = min_weight_perfect_matching(g);
    const Matching bf = matching_bruteforce_oracle(g);
    CHECK(m.perfect == bf.perfect);
    if (bf.perfect) {
      CHECK(m.weight == bf.weight);
    } else {
      ++imperfect;
    }
  }
  CHECK(imperfect > 0);
}

TEST_CASE("atsp small cases") {
  CostMatrix two(2);
  two(0, 1) = 3.0;
  two(1, 0) = 4.0;
  const Tour t2 = solve_atsp(two);
  CHECK(t2.cost == 7.0);
  CHECK(t2.order == std::vector<int>{0, 1});

  CostMatrix three(3);
  const double w[3][3] = {{0, 1, 5}, {5, 0, 1}, {1, 5, 0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) three(i, j) = w[i][j];
    }
  }
  const Tour t3 = solve_atsp(three);
  CHECK(t3.cost == 3.0);
  CHECK(t3.order == std::vector<int>{0, 1, 2});
  CHECK(tour_cost(three, {0, 2, 1}) == 15.0);

  CostMatrix one(1);
  CHECK(solve_atsp(one).cost == 0.0);
}

TEST_CASE("held-karp and branch and bound equal brute force") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 8;
    const CostMatrix c = random_matrix(m, rng);
    const Tour bf = atsp_bruteforce_oracle(c);
    const Tour hk = held_karp(c);
    const Tour bb = atsp_branch_and_bound(c);
    CHECK(hk.cost == bf.cost);
    CHECK(hk.order == bf.order);
    CHECK(bb.cost == bf.cost);
    CHECK(tour_cost(c, bb.order) == bb.cost);
  }
}

TEST_CASE("branch and bound agrees with held-karp past the brute-force range") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const CostMatrix c = random_matrix(13, rng);
    CHECK(atsp_branch_and_bound(c).cost == doctest::Approx(held_karp(c).cost).epsilon(1e-12));
  }
  AtspOptions bb_only;
  bb_only.held_karp_cap = 2;
  const CostMatrix c = random_matrix(9, rng);
  CHECK(solve_atsp(c, bb_only).cost == doctest::Approx(atsp_bruteforce_oracle(c).cost).epsilon(1e-12));
}

TEST_CASE("forbidden arcs") {
  CostMatrix c(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) c(i, j) = 1.0;
    }
  }
  c(0, 1) = std::numeric_limits<double>::infinity();
  const Tour t = solve_atsp(c);
  CHECK(t.status == SolveStatus::kOptimal);
  CHECK(t.order[1] != 1);

  CostMatrix dead(3);
  dead(0, 1) = 1.0;
  dead(1, 2) = 1.0;
  const Tour none = solve_atsp(dead);
  CHECK(none.status == SolveStatus::kUnsolvable);
  CHECK(std::isinf(min_cost_assignment(dead)));
}

TEST_CASE("assignment lower bound") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    const CostMatrix c = random_matrix(6, rng);
    std::vector<int> col;
    const double bound = min_cost_assignment(c, &col);
    CHECK(bound <= atsp_bruteforce_oracle(c).cost + 1e-12);
    std::vector<int> sorted = col;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ids(6);
    std::iota(ids.begin(), ids.end(), 0);
    CHECK(sorted == ids);
  }
}

TEST_CASE("tom on two objects") {
  // Both orientations of the single pair tie on transfer cost; tom picks one
  // from lookup move costs. Those equal the true costs when r = 0.
  for (double r : {0.0, 0.02}) {
    for (int seed = 0; seed < 20; ++seed) {
      CostParams p = baseline();
      p.r = r;
      const Instance inst = generate_instance(2, static_cast<std::uint64_t>(seed), Rect{}, p, 0.0);
      MotionOracle oracle(inst);
      const TomResult t = tom_solve(oracle);
      const SearchResult ex = exhaustive_solve(oracle);
      REQUIRE(t.has_solution());
      if (r == 0.0) {
        CHECK(t.objective == doctest::Approx(ex.objective).epsilon(1e-12));
      } else {
        CHECK(t.objective >= ex.objective - 1e-12);
      }
    }
  }
}

TEST_CASE("tom query count") {
  for (int n : {2, 4, 6, 8, 12}) {
    const Instance inst = generate_instance(n, 5, Rect{}, baseline(), 0.0);
    MotionOracle oracle(inst);
    const TomResult t = tom_solve(oracle);
    CHECK(static_cast<std::int64_t>(oracle.queries()) == count_queries_tom(n));
    CHECK(t.transfer_evaluations + t.move_evaluations == oracle.queries());
  }
}

TEST_CASE("tom decomposes into matching and tour") {
  for (int n : {3, 4, 5, 6, 7, 8}) {
    for (int seed = 0; seed < 5; ++seed) {
      const Instance inst = generate_instance(n, static_cast<std::uint64_t>(seed), Rect{}, baseline(), 0.0);
      MotionOracle oracle(inst);
      const TomResult t = tom_solve(oracle);
      REQUIRE(t.has_solution());
      CHECK(validate_sequence(inst, t.sequence).ok());
      const DualArmPlan plan = assemble_plan(inst, t.sequence, oracle);
      CHECK(plan.transfer_cost() == doctest::Approx(t.transfer_cost).epsilon(1e-12));
      CHECK(plan.move_cost() == doctest::Approx(t.transit_cost).epsilon(1e-12));
      CHECK(plan.total_cost == doctest::Approx(t.objective).epsilon(1e-12));
    }
  }
}

TEST_CASE("the matching bounds the transfer total of every sequence") {
  for (int seed = 0; seed < 200; ++seed) {
    const int n = 2 + seed % 5;
    const Instance inst = generate_instance(n, static_cast<std::uint64_t>(500 + seed), Rect{}, baseline(), 0.0);
    MotionOracle oracle(inst);
    const TomResult t = tom_solve(oracle);
    REQUIRE(t.has_solution());
    // Every pairing with either orientation: the order does not change the
    // transfer total.
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (int i = 0; i + 1 < n; i += 2) total += oracle.transfer({ids[i], ids[i + 1]}).cost;
      if (n % 2) total += oracle.transfer({ids[n - 1], kNoAct}).cost;
      best = std::min(best, total);
    } while (std::next_permutation(ids.begin(), ids.end()));
    CHECK(t.transfer_cost <= best + 1e-12);
  }
}

TEST_CASE("milp never costs more than tom") {
  for (int n : {2, 3, 4, 5, 6}) {
    for (int seed = 0; seed < 10; ++seed) {
      const Instance inst = generate_instance(n, static_cast<std::uint64_t>(700 + seed), Rect{}, baseline(), 0.0);
      MotionOracle oracle(inst);
      CHECK(milp_search(oracle).objective <= tom_solve(oracle).objective + 1e-9);
    }
  }
}

TEST_CASE("tom scales to 24 objects") {
  const Instance inst = generate_instance(24, 1, Rect{}, baseline(), 0.01);
  MotionOracle oracle(inst);
  const TomResult t = tom_solve(oracle);
  REQUIRE(t.has_solution());
  CHECK(t.sequence.size() == 12);
  CHECK(verify_plan(inst, assemble_plan(inst, t.sequence, oracle)).ok);
  CHECK(t.wall_time_secs < 10.0);
}

TEST_CASE("tom reports an unsolvable blocked instance") {
  const Instance inst = generate_instance(2, 1, Rect{}, baseline(), 0.0);
  MotionOracle oracle(inst);
  BlockedSet blocked;
  blocked.transfers.insert(Omega{0, 1});
  TomOptions opt;
  opt.blocked = &blocked;
  CHECK(tom_solve(oracle, opt).status == SolveStatus::kUnsolvable);
}
