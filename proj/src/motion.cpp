#include "dualarm/motion.hpp"

#include <algorithm>
#include <limits>

namespace dualarm {

double closest_approach_time(const Segment& a, const Segment& b) {
  // Relative position d(t) = d0 + t * dv is affine in t.
  const Point2 d0 = a.from - b.from;
  const Point2 dv = (a.to - a.from) - (b.to - b.from);
  const double vv = dot(dv, dv);
  if (vv == 0.0) return 0.0;
  return std::clamp(-dot(d0, dv) / vv, 0.0, 1.0);
}

double min_separation(const Segment& a, const Segment& b) {
  const double t = closest_approach_time(a, b);
  return distance(a.at(t), b.at(t));
}

double handling_cost(const CoordQuery& q, const CostParams& params) {
  if (q.kind != SegmentKind::kTransfer) return 0.0;
  const int carried = q.active[0] + q.active[1];
  if (params.handling == Handling::kPerObject) return carried * params.c_pd;
  return carried > 0 ? params.c_pd : 0.0;
}

CoordCost coordinated_cost(const CoordQuery& q, const CostParams& params) {
  CoordCost out;
  out.len1 = q.arms[0].length();
  out.len2 = q.arms[1].length();
  out.conflict = params.r > 0.0 && min_separation(q.arms[0], q.arms[1]) < 2.0 * params.r;
  out.cost = std::max(out.len1, out.len2) * params.c_t + handling_cost(q, params);
  if (out.conflict) out.cost += params.detour_penalty();
  return out;
}

double heuristic_cost(const CoordQuery& q, const CostParams& params) {
  return std::max(q.arms[0].length(), q.arms[1].length()) * params.c_t + handling_cost(q, params);
}

namespace {

double point_segment_distance(Point2 p, const Segment& s) {
  const Point2 d = s.to - s.from;
  const double dd = dot(d, d);
  const double t = dd == 0.0 ? 0.0 : std::clamp(dot(p - s.from, d) / dd, 0.0, 1.0);
  return distance(p, s.at(t));
}

double point_rect_distance(Point2 p, const Rect& r) {
  const double dx = std::max({r.xmin - p.x, 0.0, p.x - r.xmax});
  const double dy = std::max({r.ymin - p.y, 0.0, p.y - r.ymax});
  return std::hypot(dx, dy);
}

// Liang-Barsky clip of the segment against the rectangle.
bool segment_hits_rect(const Segment& s, const Rect& r) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = s.to.x - s.from.x;
  const double dy = s.to.y - s.from.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {s.from.x - r.xmin, r.xmax - s.from.x, s.from.y - r.ymin, r.ymax - s.from.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) {
        t0 = std::max(t0, t);
      } else {
        t1 = std::min(t1, t);
      }
      if (t0 > t1) return false;
    }
  }
  return true;
}

}  // namespace

double segment_rect_distance(const Segment& s, const Rect& rect) {
  if (segment_hits_rect(s, rect)) return 0.0;
  // Disjoint convex sets: the minimum is attained at a vertex of one of them.
  double best = std::min(point_rect_distance(s.from, rect), point_rect_distance(s.to, rect));
  const Point2 corners[4] = {{rect.xmin, rect.ymin}, {rect.xmax, rect.ymin},
                             {rect.xmax, rect.ymax}, {rect.xmin, rect.ymax}};
  for (Point2 c : corners) best = std::min(best, point_segment_distance(c, s));
  return best;
}

bool feasible(const CoordQuery& q, const Instance& inst) {
  if (inst.obstacles.empty()) return true;
  const double r = inst.params.r;
  for (const Segment& arm : q.arms) {
    for (const Rect& obs : inst.obstacles) {
      if (segment_rect_distance(arm, obs) <= r) return false;
    }
  }
  if (r > 0.0 && min_separation(q.arms[0], q.arms[1]) < 2.0 * r) {
    const double t = closest_approach_time(q.arms[0], q.arms[1]);
    auto detour_blocked = [&](int waiting) {
      const Point2 c = q.arms[waiting].at(t);
      return std::any_of(inst.obstacles.begin(), inst.obstacles.end(),
                         [&](const Rect& obs) { return point_rect_distance(c, obs) < 3.0 * r; });
    };
    if (detour_blocked(0) && detour_blocked(1)) return false;
  }
  return true;
}

Point2 departure_point(const Instance& inst, const Stop& stop, int arm) {
  if (!stop || stop->idle(arm)) return inst.safe[arm];
  return inst.objects.at((*stop)[arm]).goal;
}

Point2 arrival_point(const Instance& inst, const Stop& stop, int arm) {
  if (!stop || stop->idle(arm)) return inst.safe[arm];
  return inst.objects.at((*stop)[arm]).start;
}

CoordQuery transfer_query(const Instance& inst, const Omega& task) {
  CoordQuery q;
  q.kind = SegmentKind::kTransfer;
  for (int k = 0; k < 2; ++k) {
    if (task.idle(k)) {
      q.arms[k] = {inst.safe[k], inst.safe[k]};
      q.active[k] = false;
    } else {
      const auto& obj = inst.objects.at(task[k]);
      q.arms[k] = {obj.start, obj.goal};
    }
  }
  return q;
}

CoordQuery move_query(const Instance& inst, const Stop& from, const Stop& to) {
  CoordQuery q;
  q.kind = SegmentKind::kMove;
  for (int k = 0; k < 2; ++k) {
    q.arms[k] = {departure_point(inst, from, k), arrival_point(inst, to, k)};
  }
  return q;
}

CoordCost transfer_cost(const Instance& inst, const Omega& task) {
  return coordinated_cost(transfer_query(inst, task), inst.params);
}

CoordCost move_cost(const Instance& inst, const Stop& from, const Stop& to) {
  return coordinated_cost(move_query(inst, from, to), inst.params);
}

}  // namespace dualarm
