#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>

#include "dualarm/motion.hpp"
#include "dualarm/types.hpp"

namespace dualarm {

/// Source of segment costs for the sequence solvers.
class CostModel {
 public:
  virtual ~CostModel() = default;
  virtual const Instance& instance() const = 0;
  virtual CoordCost transfer(const Omega& task) = 0;
  virtual CoordCost move(const Stop& from, const Stop& to) = 0;
};

/// The motion-planning oracle. Every distinct transfer or move is evaluated
/// once and memoized; counters report distinct evaluations, which is the
/// number of motion-planning queries a solver issued.
class MotionOracle final : public CostModel {
 public:
  explicit MotionOracle(const Instance& inst) : inst_(&inst) {}

  const Instance& instance() const override { return *inst_; }
  CoordCost transfer(const Omega& task) override;
  CoordCost move(const Stop& from, const Stop& to) override;

  bool transfer_feasible(const Omega& task);
  bool move_feasible(const Stop& from, const Stop& to);

  std::size_t transfer_queries() const { return transfers_.size(); }
  std::size_t move_queries() const { return moves_.size(); }
  std::size_t queries() const { return transfer_queries() + move_queries(); }
  std::size_t feasibility_checks() const { return feasibility_checks_; }

 private:
  const Instance* inst_;
  std::map<Omega, CoordCost> transfers_;
  std::map<std::pair<Stop, Stop>, CoordCost> moves_;
  std::map<Omega, bool> transfer_ok_;
  std::map<std::pair<Stop, Stop>, bool> move_ok_;
  std::size_t feasibility_checks_ = 0;
};

/// Lookup-style estimates that ignore arm-arm conflicts and obstacles.
class HeuristicCosts final : public CostModel {
 public:
  explicit HeuristicCosts(const Instance& inst) : inst_(&inst) {}

  const Instance& instance() const override { return *inst_; }
  CoordCost transfer(const Omega& task) override;
  CoordCost move(const Stop& from, const Stop& to) override;

 private:
  const Instance* inst_;
};

/// Transfers and moves that candidate sequences must avoid.
struct BlockedSet {
  std::set<Omega> transfers;
  std::set<std::pair<Stop, Stop>> moves;

  bool blocks(const Omega& task) const { return transfers.count(task) != 0; }
  bool blocks(const Stop& from, const Stop& to) const { return moves.count({from, to}) != 0; }
  bool empty() const { return transfers.empty() && moves.empty(); }
  std::size_t size() const { return transfers.size() + moves.size(); }
};

}  // namespace dualarm
