#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

namespace dualarm {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(Point2 p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct ObjectSpec {
  int id = 0;
  Point2 start;
  Point2 goal;
};

/// How pick/drop handling enters a synchronized transfer.
enum class Handling {
  kPerTransfer,  // one c_pd per transfer; the two arms pick and drop in parallel
  kPerObject,    // one c_pd per carried object (energy-style accounting)
};

struct CostParams {
  double c_t = 1.0;   // cost per unit end-effector distance
  double c_pd = 0.0;  // pick plus drop cost
  double r = 0.0;     // disk arm radius
  /// Penalty per resolved arm-arm conflict; 2*pi*r*c_t when unset.
  std::optional<double> detour_override;
  Handling handling = Handling::kPerTransfer;

  double detour_penalty() const {
    return detour_override ? *detour_override : 2.0 * std::numbers::pi * r * c_t;
  }
};

struct Instance {
  std::vector<ObjectSpec> objects;
  std::array<Point2, 2> safe{};
  CostParams params;
  std::vector<Rect> obstacles;
  Rect workspace;
  std::uint64_t seed = 0;
  double footprint = 0.0;  // object disk radius used for overlap checks

  int size() const { return static_cast<int>(objects.size()); }
};

inline constexpr int kNoAct = -1;

/// One synchronized task: the object carried by each arm, or kNoAct.
struct Omega {
  int arm1 = kNoAct;
  int arm2 = kNoAct;

  int operator[](int arm) const { return arm == 0 ? arm1 : arm2; }
  bool idle(int arm) const { return (*this)[arm] == kNoAct; }
  int active_count() const { return (arm1 != kNoAct) + (arm2 != kNoAct); }

  friend auto operator<=>(const Omega&, const Omega&) = default;
};

using OmegaSequence = std::vector<Omega>;

/// An endpoint of a move: a task, or the arms' safe configurations when empty.
using Stop = std::optional<Omega>;
inline constexpr std::nullopt_t kSafe = std::nullopt;

enum class SegmentKind { kMove, kTransfer };

}  // namespace dualarm
