#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dualarm/exact.hpp"
#include "dualarm/instance.hpp"
#include "dualarm/plan.hpp"

using namespace dualarm;

namespace {

// Transfers cost the longer of the two lengths plus c_pd; moves are free.
class LengthCosts final : public CostModel {
 public:
  LengthCosts(const Instance& inst, std::vector<double> lengths, double c_pd)
      : inst_(&inst), lengths_(std::move(lengths)), c_pd_(c_pd) {}
  const Instance& instance() const override { return *inst_; }
  CoordCost transfer(const Omega& t) override {
    CoordCost c;
    c.len1 = t.arm1 == kNoAct ? 0.0 : lengths_[t.arm1];
    c.len2 = t.arm2 == kNoAct ? 0.0 : lengths_[t.arm2];
    c.cost = std::max(c.len1, c.len2) + c_pd_;
    return c;
  }
  CoordCost move(const Stop&, const Stop&) override { return {}; }

 private:
  const Instance* inst_;
  std::vector<double> lengths_;
  double c_pd_;
};

CostParams baseline() {
  CostParams p;
  p.c_pd = 0.1;
  p.r = 0.02;
  return p;
}

std::set<std::set<int>> pairing(const OmegaSequence& seq) {
  std::set<std::set<int>> out;
  for (const Omega& t : seq) out.insert({t.arm1, t.arm2});
  return out;
}

}  // namespace

TEST_CASE("task enumeration") {
  CHECK(enumerate_tasks(4, NoActPolicy::kPadOdd).size() == 12);
  CHECK(enumerate_tasks(5, NoActPolicy::kPadOdd).size() == 20 + 5);
  CHECK(enumerate_tasks(4, NoActPolicy::kFull).size() == 12 + 8);
  const auto tasks = enumerate_tasks(3, NoActPolicy::kFull);
  CHECK(std::is_sorted(tasks.begin(), tasks.end()));
  CHECK(tasks.front().arm1 == kNoAct);
  for (const Omega& t : tasks) CHECK(t.arm1 != t.arm2);
}

TEST_CASE("exhaustive on two objects picks the cheaper orientation") {
  const Instance inst = generate_instance(2, 3, Rect{}, baseline(), 0.0);
  MotionOracle oracle(inst);
  const SearchResult r = exhaustive_solve(oracle);
  REQUIRE(r.status == SolveStatus::kOptimal);
  REQUIRE(r.sequence.size() == 1);
  MotionOracle check(inst);
  const double a = sequence_cost({{0, 1}}, check);
  const double b = sequence_cost({{1, 0}}, check);
  CHECK(r.objective == doctest::Approx(std::min(a, b)).epsilon(1e-12));
  if (a == b) CHECK(r.sequence[0] == Omega{0, 1});
}

TEST_CASE("equal lengths are paired together") {
  Instance inst;
  inst.objects.resize(4);
  for (int i = 0; i < 4; ++i) inst.objects[i].id = i;
  LengthCosts costs(inst, {1.0, 1.0, 2.0, 2.0}, 0.1);
  const SearchResult r = exhaustive_solve(costs);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(3.0 + 2 * 0.1));
  CHECK(pairing(r.sequence) == std::set<std::set<int>>{{0, 1}, {2, 3}});
  CHECK(r.transfer_evaluations <= 12);
}

TEST_CASE("query counts") {
  CHECK(count_queries_exhaustive(2).transfers == 2);
  CHECK(count_queries_exhaustive(2).moves == 4);
  CHECK(count_queries_exhaustive(2).total() == 6);
  CHECK(count_queries_exhaustive(4).transfers == 12);
  CHECK(count_queries_exhaustive(4).moves == 48);
  CHECK(count_queries_exhaustive(4).total() == 60);
  CHECK(count_queries_tom(4) == 18);
  CHECK(count_queries_tom(8) == 76);
  CHECK(query_ratio(4) == Rational{10, 3});
  for (int n : {4, 6, 8, 10}) {
    const Rational q = query_ratio(n);
    CHECK(q == query_ratio_closed_form(n));
    CHECK(q.num * (5 * n - 2) == 4 * (n - 1) * ((n - 5) * n + 9) * q.den);
    CHECK(std::gcd(q.num, q.den) == 1);
  }
  CHECK(permutations(5, 2) == 20);
  CHECK(permutations(1, 2) == 0);
  CHECK_THROWS_AS(count_queries_exhaustive(5), std::domain_error);
  CHECK_THROWS_AS(query_ratio(3), std::domain_error);
}

TEST_CASE("memoized exhaustive queries stay within the count formula") {
  for (int n : {2, 4, 6}) {
    const Instance inst = generate_instance(n, 17, Rect{}, baseline(), 0.0);
    MotionOracle oracle(inst);
    const SearchResult r = exhaustive_solve(oracle);
    CHECK(static_cast<std::int64_t>(oracle.queries()) <= count_queries_exhaustive(n).total());
    CHECK(r.transfer_evaluations == oracle.transfer_queries());
    CHECK(r.move_evaluations == oracle.move_queries());
  }
}

TEST_CASE("milp graph structure") {
  const Instance two = generate_instance(2, 1, Rect{}, baseline(), 0.0);
  MotionOracle o2(two);
  const MilpGraph g2 = build_milp_graph(o2);
  CHECK(g2.vertex_count() == 3);
  CHECK(g2.edges.size() == 4);
  for (const MilpEdge& e : g2.edges) CHECK((e.from == MilpGraph::kSource || e.to == MilpGraph::kSource));

  const Instance four = generate_instance(4, 1, Rect{}, baseline(), 0.0);
  MotionOracle o4(four);
  const MilpGraph g4 = build_milp_graph(o4);
  CHECK(g4.vertex_count() == 13);
  int inner = 0;
  for (const MilpEdge& e : g4.edges) {
    if (e.from == MilpGraph::kSource) {
      CHECK(e.cost == doctest::Approx(move_cost(four, kSafe, g4.tasks[e.to - 1]).cost));
    } else if (e.to != MilpGraph::kSource) {
      ++inner;
      CHECK((g4.object_mask(e.from) & g4.object_mask(e.to)) == 0);
      const Omega& from = g4.tasks[e.from - 1];
      const Omega& to = g4.tasks[e.to - 1];
      CHECK(e.cost == doctest::Approx(transfer_cost(four, from).cost + move_cost(four, from, to).cost));
    }
  }
  CHECK(inner == 24);
}

TEST_CASE("milp matches exhaustive and passes the constraint audit") {
  for (int n : {2, 3, 4, 5, 6}) {
    for (int seed = 0; seed < 8; ++seed) {
      const Instance inst = generate_instance(n, static_cast<std::uint64_t>(100 + seed), Rect{}, baseline(), 0.0);
      MotionOracle oracle(inst);
      const SearchResult ex = exhaustive_solve(oracle);
      const MilpGraph g = build_milp_graph(oracle);
      const MilpSolution m = milp_solve(g);
      REQUIRE(m.status == SolveStatus::kOptimal);
      CHECK(std::abs(m.objective - ex.objective) <= 1e-9);
      CHECK(audit_milp_selection(g, m.selected).empty());
      CHECK(validate_sequence(inst, m.sequence).ok());
      CHECK(sequence_cost(m.sequence, oracle) == doctest::Approx(m.objective).epsilon(1e-12));
    }
  }
}

TEST_CASE("the audit rejects broken selections") {
  const Instance inst = generate_instance(4, 2, Rect{}, baseline(), 0.0);
  MotionOracle oracle(inst);
  const MilpGraph g = build_milp_graph(oracle);
  const MilpSolution m = milp_solve(g);
  REQUIRE(m.selected.size() == 3);

  std::vector<int> missing = m.selected;
  missing.pop_back();
  CHECK_FALSE(audit_milp_selection(g, missing).empty());

  std::vector<int> doubled = m.selected;
  doubled.push_back(m.selected.front());
  CHECK_FALSE(audit_milp_selection(g, doubled).empty());

  // S -> a -> S plus a disjoint two-cycle b <-> c away from S.
  auto find = [&](int from, int to) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].from == from && g.edges[e].to == to) return static_cast<int>(e);
    }
    return -1;
  };
  int a = -1;
  int b = -1;
  int c = -1;
  for (int u = 1; u < g.vertex_count() && a < 0; ++u) {
    for (int v = 1; v < g.vertex_count() && a < 0; ++v) {
      if (u != v && (g.object_mask(u) & g.object_mask(v)) == 0) {
        for (int w = 1; w < g.vertex_count(); ++w) {
          if (w != u && w != v && g.object_mask(w) == g.object_mask(u) && find(v, w) >= 0) {
            a = u;
            b = v;
            c = w;
            break;
          }
        }
      }
    }
  }
  REQUIRE(a > 0);
  const std::vector<int> subtour{find(0, a), find(a, 0), find(b, c), find(c, b)};
  for (int e : subtour) REQUIRE(e >= 0);
  CHECK_FALSE(audit_milp_selection(g, subtour).empty());
}

TEST_CASE("full NO_ACT never costs more than padding only") {
  for (int seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_instance(4, static_cast<std::uint64_t>(seed), Rect{}, baseline(), 0.0);
    MotionOracle oracle(inst);
    ExactOptions full;
    full.noact = NoActPolicy::kFull;
    const SearchResult with = exhaustive_solve(oracle, full);
    const SearchResult without = exhaustive_solve(oracle);
    CHECK(with.objective <= without.objective + 1e-12);
    CHECK(std::abs(milp_search(oracle, full).objective - with.objective) <= 1e-9);
  }
}

TEST_CASE("blocked transfers are avoided") {
  const Instance inst = generate_instance(4, 8, Rect{}, baseline(), 0.0);
  MotionOracle oracle(inst);
  const SearchResult free = exhaustive_solve(oracle);
  BlockedSet blocked;
  blocked.transfers.insert(free.sequence[0]);
  blocked.transfers.insert(Omega{free.sequence[0].arm2, free.sequence[0].arm1});
  ExactOptions opt;
  opt.blocked = &blocked;
  const SearchResult r = exhaustive_solve(oracle, opt);
  REQUIRE(r.status == SolveStatus::kOptimal);
  for (const Omega& t : r.sequence) CHECK_FALSE(blocked.blocks(t));
  CHECK(r.objective >= free.objective);
  CHECK(std::abs(milp_search(oracle, opt).objective - r.objective) <= 1e-9);
}

TEST_CASE("budget and size limits") {
  const Instance big = generate_instance(10, 1, Rect{}, baseline(), 0.0);
  MotionOracle oracle(big);
  ExactOptions tight;
  tight.time_budget_secs = 1e-4;
  const SearchResult r = exhaustive_solve(oracle, tight);
  CHECK(r.status == SolveStatus::kTimeout);

  const Instance huge = generate_instance(12, 1, Rect{}, baseline(), 0.0);
  MotionOracle o12(huge);
  CHECK_THROWS_AS(exhaustive_solve(o12), std::invalid_argument);
}
