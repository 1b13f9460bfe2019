#include "dualarm/lazy.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "dualarm/atsp.hpp"
#include "dualarm/tom.hpp"

namespace dualarm {

const char* to_string(SolverId id) {
  switch (id) {
    case SolverId::kExhaustive: return "exhaustive";
    case SolverId::kMilp: return "milp";
    case SolverId::kTom: return "tom";
    case SolverId::kRandomSplit: return "random_split";
  }
  return "?";
}

std::optional<SolverId> parse_solver(const std::string& name) {
  for (SolverId id : {SolverId::kExhaustive, SolverId::kMilp, SolverId::kTom, SolverId::kRandomSplit}) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

const char* to_string(LazyStatus status) {
  switch (status) {
    case LazyStatus::kSuccess: return "success";
    case LazyStatus::kUnsolvable: return "unsolvable";
    case LazyStatus::kTimeout: return "timeout";
    case LazyStatus::kRetriesExhausted: return "retries_exhausted";
  }
  return "?";
}

namespace {

constexpr int kSplitDraws = 1000;

bool uses_blocked(const OmegaSequence& seq, const BlockedSet& blocked) {
  for (const auto& [kind, stops] : execution_order(seq)) {
    if (kind == SegmentKind::kTransfer ? blocked.blocks(*stops.first)
                                       : blocked.blocks(stops.first, stops.second)) {
      return true;
    }
  }
  return false;
}

struct Candidate {
  SolveStatus status = SolveStatus::kUnsolvable;
  OmegaSequence sequence;
  double objective = 0.0;
};

Candidate plan_candidate(const Instance& inst, CostModel& costs, const LazyConfig& config,
                         const BlockedSet& blocked, double budget) {
  Candidate c;
  switch (config.solver) {
    case SolverId::kExhaustive:
    case SolverId::kMilp: {
      ExactOptions opt;
      opt.time_budget_secs = budget;
      opt.noact = config.noact;
      opt.blocked = &blocked;
      const SearchResult r =
          config.solver == SolverId::kExhaustive ? exhaustive_solve(costs, opt) : milp_search(costs, opt);
      c.status = r.status;
      c.sequence = r.sequence;
      c.objective = r.objective;
      break;
    }
    case SolverId::kTom: {
      TomOptions opt;
      opt.time_budget_secs = budget;
      opt.blocked = &blocked;
      const TomResult r = tom_solve(costs, opt);
      c.status = r.status;
      c.sequence = r.sequence;
      c.objective = r.objective;
      break;
    }
    case SolverId::kRandomSplit: {
      auto seq = random_split_sequence(inst.size(), config.seed, &blocked);
      if (seq) {
        c.status = SolveStatus::kOptimal;
        c.sequence = *seq;
        c.objective = sequence_cost(c.sequence, costs);
      }
      break;
    }
  }
  return c;
}

}  // namespace

LazyResult lazy_solve(const Instance& inst, MotionOracle& oracle, const LazyConfig& config) {
  if (config.time_budget_secs <= 0.0) throw std::invalid_argument("lazy_solve: time budget must be positive");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  HeuristicCosts heuristic(inst);
  CostModel& planning = config.heuristic ? static_cast<CostModel&>(heuristic) : oracle;

  LazyResult result;
  auto finish = [&](LazyStatus status, std::string message) {
    result.status = status;
    result.message = std::move(message);
    result.wall_time_secs = elapsed();
    return result;
  };

  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    const double remaining = config.time_budget_secs - elapsed();
    if (remaining <= 0.0) return finish(LazyStatus::kTimeout, "time budget exhausted before planning");

    ++result.solver_invocations;
    const Candidate candidate = plan_candidate(inst, planning, config, result.blocked, remaining);
    if (candidate.status == SolveStatus::kTimeout) {
      return finish(LazyStatus::kTimeout, "solver exceeded the time budget");
    }
    if (candidate.status == SolveStatus::kUnsolvable) {
      return finish(LazyStatus::kUnsolvable, "no candidate avoids the blocked edges");
    }
    result.candidate_costs.push_back(candidate.objective);

    bool valid = true;
    for (const auto& [kind, stops] : execution_order(candidate.sequence)) {
      if (elapsed() > config.time_budget_secs) {
        return finish(LazyStatus::kTimeout, "time budget exhausted during validation");
      }
      ++result.feasibility_checks;
      if (kind == SegmentKind::kTransfer) {
        if (!oracle.transfer_feasible(*stops.first)) {
          result.blocked.transfers.insert(*stops.first);
          valid = false;
          break;
        }
      } else if (!oracle.move_feasible(stops.first, stops.second)) {
        result.blocked.moves.insert(stops);
        valid = false;
        break;
      }
    }
    if (valid) {
      result.plan = assemble_plan(inst, candidate.sequence, oracle);
      return finish(LazyStatus::kSuccess, "");
    }
  }
  return finish(LazyStatus::kRetriesExhausted,
                "no valid plan after " + std::to_string(config.max_retries) + " retries");
}

std::optional<OmegaSequence> random_split_sequence(int n, std::uint64_t seed, const BlockedSet* blocked) {
  if (n < 1) throw std::invalid_argument("random_split_sequence: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  for (int draw = 0; draw < kSplitDraws; ++draw) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    OmegaSequence seq;
    for (int i = 0; i + 1 < n; i += 2) seq.push_back({order[i], order[i + 1]});
    if (n % 2 == 1) seq.push_back({order[n - 1], kNoAct});
    if (!blocked || !uses_blocked(seq, *blocked)) return seq;
  }
  return std::nullopt;
}

DualArmPlan random_split_solve(const Instance& inst, MotionOracle& oracle, std::uint64_t seed) {
  return assemble_plan(inst, *random_split_sequence(inst.size(), seed), oracle);
}

SingleArmResult single_arm_solve(const Instance& inst, MotionOracle& oracle, double time_budget_secs) {
  const int n = inst.size();
  if (n < 1) throw std::invalid_argument("single_arm_solve: empty instance");
  std::vector<Stop> stops{kSafe};
  SingleArmResult result;
  for (int o = 0; o < n; ++o) {
    stops.emplace_back(Omega{o, kNoAct});
    result.transfer_cost += oracle.transfer({o, kNoAct}).cost;
  }
  CostMatrix c(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i != j) c(i, j) = oracle.move(stops[i], stops[j]).cost;
    }
  }
  AtspOptions opt;
  opt.time_budget_secs = time_budget_secs;
  const Tour tour = solve_atsp(c, opt);
  result.status = tour.status;
  if (tour.order.empty()) return result;
  for (std::size_t i = 1; i < tour.order.size(); ++i) result.sequence.push_back(*stops[tour.order[i]]);
  result.transit_cost = tour.cost;
  result.cost = result.transfer_cost + result.transit_cost;
  return result;
}

}  // namespace dualarm
