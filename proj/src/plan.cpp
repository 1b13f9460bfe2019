#include "dualarm/plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dualarm/instance.hpp"

namespace dualarm {

const char* to_string(SegmentKind kind) {
  return kind == SegmentKind::kTransfer ? "transfer" : "move";
}

InfeasibleSegment::InfeasibleSegment(std::size_t index, SegmentKind kind)
    : std::runtime_error(std::string("infeasible ") + to_string(kind) + " segment at index " +
                         std::to_string(index)),
      index_(index),
      kind_(kind) {}

double DualArmPlan::transfer_cost() const {
  double sum = 0.0;
  for (const auto& s : segments) {
    if (s.kind == SegmentKind::kTransfer) sum += s.cost;
  }
  return sum;
}

double DualArmPlan::move_cost() const {
  double sum = 0.0;
  for (const auto& s : segments) {
    if (s.kind == SegmentKind::kMove) sum += s.cost;
  }
  return sum;
}

std::vector<std::pair<SegmentKind, std::pair<Stop, Stop>>> execution_order(const OmegaSequence& seq) {
  std::vector<std::pair<SegmentKind, std::pair<Stop, Stop>>> order;
  order.reserve(2 * seq.size() + 1);
  Stop prev = kSafe;
  for (const Omega& task : seq) {
    order.push_back({SegmentKind::kMove, {prev, task}});
    order.push_back({SegmentKind::kTransfer, {task, task}});
    prev = task;
  }
  order.push_back({SegmentKind::kMove, {prev, kSafe}});
  return order;
}

double sequence_cost(const OmegaSequence& seq, CostModel& costs) {
  double total = 0.0;
  for (const auto& [kind, stops] : execution_order(seq)) {
    total += kind == SegmentKind::kTransfer ? costs.transfer(*stops.first).cost
                                            : costs.move(stops.first, stops.second).cost;
  }
  return total;
}

DualArmPlan assemble_plan(const Instance& inst, const OmegaSequence& seq, MotionOracle& oracle) {
  const SequenceReport report = validate_sequence(inst, seq);
  if (!report.ok()) throw InvalidSequence("invalid sequence: " + report.describe());

  DualArmPlan plan;
  plan.sequence = seq;
  const auto order = execution_order(seq);
  plan.segments.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [kind, stops] = order[i];
    const bool is_transfer = kind == SegmentKind::kTransfer;
    const bool ok = is_transfer ? oracle.transfer_feasible(*stops.first)
                                : oracle.move_feasible(stops.first, stops.second);
    if (!ok) throw InfeasibleSegment(i, kind);

    PlanSegment seg;
    seg.kind = kind;
    seg.from = stops.first;
    seg.to = stops.second;
    const CoordQuery q = is_transfer ? transfer_query(inst, *stops.first)
                                     : move_query(inst, stops.first, stops.second);
    const CoordCost c = is_transfer ? oracle.transfer(*stops.first)
                                    : oracle.move(stops.first, stops.second);
    seg.paths = q.arms;
    seg.lengths = {c.len1, c.len2};
    seg.conflict = c.conflict;
    seg.cost = c.cost;
    plan.total_cost += c.cost;
    plan.segments.push_back(seg);
  }
  return plan;
}

namespace {

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

bool same_point(Point2 a, Point2 b, double tol) { return close(a.x, b.x, tol) && close(a.y, b.y, tol); }

}  // namespace

PlanCheck verify_plan(const Instance& inst, const DualArmPlan& stored, double tol) {
  PlanCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.problems.push_back(std::move(msg));
  };

  const SequenceReport report = validate_sequence(inst, stored.sequence);
  if (!report.ok()) {
    fail("invalid sequence: " + report.describe());
    return check;
  }
  const auto order = execution_order(stored.sequence);
  if (order.size() != stored.segments.size()) {
    fail("expected " + std::to_string(order.size()) + " segments, found " +
         std::to_string(stored.segments.size()));
    return check;
  }

  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [kind, stops] = order[i];
    const PlanSegment& seg = stored.segments[i];
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (seg.kind != kind || seg.from != stops.first || seg.to != stops.second) {
      fail(where + "kind or endpoints differ from the sequence");
      continue;
    }
    const bool is_transfer = kind == SegmentKind::kTransfer;
    const CoordQuery q = is_transfer ? transfer_query(inst, *stops.first) : move_query(inst, stops.first, stops.second);
    const CoordCost c = coordinated_cost(q, inst.params);
    if (!feasible(q, inst)) fail(where + "infeasible " + to_string(kind));
    for (int arm = 0; arm < 2; ++arm) {
      if (!same_point(seg.paths[arm].from, q.arms[arm].from, tol) ||
          !same_point(seg.paths[arm].to, q.arms[arm].to, tol)) {
        fail(where + "path of arm " + std::to_string(arm + 1) + " differs");
      }
    }
    if (!close(seg.lengths[0], c.len1, tol) || !close(seg.lengths[1], c.len2, tol)) {
      fail(where + "lengths differ");
    }
    if (seg.conflict != c.conflict) fail(where + "conflict flag differs");
    if (!close(seg.cost, c.cost, tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "cost %.17g, recomputed %.17g", seg.cost, c.cost);
      fail(where + buf);
    }
    total += c.cost;
  }
  if (!close(stored.total_cost, total, tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "total %.17g, recomputed %.17g", stored.total_cost, total);
    fail(buf);
  }
  return check;
}

}  // namespace dualarm
