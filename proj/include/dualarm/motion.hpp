#pragma once

#include <array>

#include "dualarm/types.hpp"

namespace dualarm {

/// Straight-line end-effector motion; an idle arm has from == to.
struct Segment {
  Point2 from;
  Point2 to;

  double length() const { return distance(from, to); }
  Point2 at(double t) const { return from + t * (to - from); }
};

/// A synchronized motion of both arms. `active[k]` is false when arm k has no
/// task (NO_ACT): it holds its position and does not handle an object.
struct CoordQuery {
  std::array<Segment, 2> arms;
  std::array<bool, 2> active{true, true};
  SegmentKind kind = SegmentKind::kMove;
};

struct CoordCost {
  double len1 = 0.0;
  double len2 = 0.0;
  bool conflict = false;
  double cost = 0.0;
};

/// Minimum distance between two points traversing their segments linearly
/// over the same normalized time interval [0, 1].
double min_separation(const Segment& a, const Segment& b);

/// Normalized time in [0, 1] at which min_separation is attained.
double closest_approach_time(const Segment& a, const Segment& b);

double handling_cost(const CoordQuery& q, const CostParams& params);

/// Makespan cost of one synchronized segment: the longer arm's length times
/// c_t, plus the detour penalty on an arm-arm conflict (separation < 2r),
/// plus handling for transfers.
CoordCost coordinated_cost(const CoordQuery& q, const CostParams& params);

/// coordinated_cost without conflicts; a lower bound on it.
double heuristic_cost(const CoordQuery& q, const CostParams& params);

/// Distance from a segment to a closed rectangle; zero when they touch.
double segment_rect_distance(const Segment& s, const Rect& rect);

/// Motion-planner failure model. A query is infeasible when either arm sweeps
/// within r of a static obstacle, or when the arms conflict and neither of
/// them can circle around the other because the detour disk of radius 3r
/// around the waiting arm touches an obstacle.
bool feasible(const CoordQuery& q, const Instance& inst);

/// Where arm `arm` stands before a move out of `stop` (goal of its object, or
/// its safe point when the stop is safe or the slot is NO_ACT).
Point2 departure_point(const Instance& inst, const Stop& stop, int arm);
/// Where arm `arm` must be after a move into `stop`.
Point2 arrival_point(const Instance& inst, const Stop& stop, int arm);

CoordQuery transfer_query(const Instance& inst, const Omega& task);
CoordQuery move_query(const Instance& inst, const Stop& from, const Stop& to);

CoordCost transfer_cost(const Instance& inst, const Omega& task);
CoordCost move_cost(const Instance& inst, const Stop& from, const Stop& to);

}  // namespace dualarm
