#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualarm/motion.hpp"
#include "dualarm/oracle.hpp"
#include "dualarm/types.hpp"

namespace dualarm {

class InvalidSequence : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleSegment : public std::runtime_error {
 public:
  InfeasibleSegment(std::size_t index, SegmentKind kind);
  std::size_t index() const { return index_; }
  SegmentKind kind() const { return kind_; }

 private:
  std::size_t index_;
  SegmentKind kind_;
};

struct PlanSegment {
  SegmentKind kind = SegmentKind::kMove;
  Stop from;  // for transfers, from == to == the task
  Stop to;
  std::array<Segment, 2> paths{};
  std::array<double, 2> lengths{};
  bool conflict = false;
  double cost = 0.0;
};

/// Move, Transfer, Move, ..., Transfer, Move: the first and last moves
/// connect to the safe configurations.
struct DualArmPlan {
  OmegaSequence sequence;
  std::vector<PlanSegment> segments;
  double total_cost = 0.0;

  double transfer_cost() const;
  double move_cost() const;
};

/// Builds D(seq) with costs from the oracle. Throws InvalidSequence when seq
/// does not transfer every object exactly once, and InfeasibleSegment for
/// the first segment (in execution order) the oracle rejects.
DualArmPlan assemble_plan(const Instance& inst, const OmegaSequence& seq, MotionOracle& oracle);

/// Total of the Move/Transfer decomposition of seq under any cost model,
/// without feasibility checks.
double sequence_cost(const OmegaSequence& seq, CostModel& costs);

/// Execution-order list of (from, to) stops for seq; transfers have from == to.
std::vector<std::pair<SegmentKind, std::pair<Stop, Stop>>> execution_order(const OmegaSequence& seq);

const char* to_string(SegmentKind kind);

struct PlanCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Recomputes every segment of a stored plan independently: the sequence,
/// per-segment endpoints, feasibility, lengths and costs, and the total, all
/// within `tol`.
PlanCheck verify_plan(const Instance& inst, const DualArmPlan& stored, double tol = 1e-9);

}  // namespace dualarm
