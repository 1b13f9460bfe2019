#include "dualarm/oracle.hpp"

namespace dualarm {

CoordCost MotionOracle::transfer(const Omega& task) {
  auto it = transfers_.find(task);
  if (it == transfers_.end()) it = transfers_.emplace(task, transfer_cost(*inst_, task)).first;
  return it->second;
}

CoordCost MotionOracle::move(const Stop& from, const Stop& to) {
  const auto key = std::make_pair(from, to);
  auto it = moves_.find(key);
  if (it == moves_.end()) it = moves_.emplace(key, move_cost(*inst_, from, to)).first;
  return it->second;
}

bool MotionOracle::transfer_feasible(const Omega& task) {
  ++feasibility_checks_;
  auto it = transfer_ok_.find(task);
  if (it == transfer_ok_.end()) {
    it = transfer_ok_.emplace(task, feasible(transfer_query(*inst_, task), *inst_)).first;
  }
  return it->second;
}

bool MotionOracle::move_feasible(const Stop& from, const Stop& to) {
  ++feasibility_checks_;
  const auto key = std::make_pair(from, to);
  auto it = move_ok_.find(key);
  if (it == move_ok_.end()) {
    it = move_ok_.emplace(key, feasible(move_query(*inst_, from, to), *inst_)).first;
  }
  return it->second;
}

namespace {

CoordCost estimate(const CoordQuery& q, const CostParams& params) {
  CoordCost out;
  out.len1 = q.arms[0].length();
  out.len2 = q.arms[1].length();
  out.cost = heuristic_cost(q, params);
  return out;
}

}  // namespace

CoordCost HeuristicCosts::transfer(const Omega& task) {
  return estimate(transfer_query(*inst_, task), inst_->params);
}

CoordCost HeuristicCosts::move(const Stop& from, const Stop& to) {
  return estimate(move_query(*inst_, from, to), inst_->params);
}

}  // namespace dualarm
