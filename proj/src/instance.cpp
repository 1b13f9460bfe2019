#include "dualarm/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace dualarm {

namespace {

bool clear_of(const std::vector<Point2>& placed, Point2 p, double min_dist) {
  return std::all_of(placed.begin(), placed.end(),
                     [&](Point2 q) { return distance(p, q) >= min_dist; });
}

}  // namespace

Instance generate_instance(int n, std::uint64_t seed, const Rect& workspace,
                           const CostParams& params, double footprint) {
  if (n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
  if (footprint < 0.0) throw std::invalid_argument("generate_instance: negative footprint");
  const Rect inner{workspace.xmin + footprint, workspace.ymin + footprint,
                   workspace.xmax - footprint, workspace.ymax - footprint};
  if (inner.xmin > inner.xmax || inner.ymin > inner.ymax) {
    throw PackingFailure("footprint does not fit inside the workspace");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(inner.xmin, inner.xmax);
  std::uniform_real_distribution<double> uy(inner.ymin, inner.ymax);

  // Starts first, then goals; every disk must clear every other disk.
  const double min_dist = footprint > 0.0 ? 2.0 * footprint : 1e-12;
  std::vector<Point2> placed;
  placed.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < kPlacementRetries; ++attempt) {
      Point2 p{ux(rng), uy(rng)};
      if (clear_of(placed, p, min_dist)) {
        placed.push_back(p);
        done = true;
        break;
      }
    }
    if (!done) {
      std::ostringstream msg;
      msg << "could not place point " << i << " of " << 2 * n << " after "
          << kPlacementRetries << " draws (footprint " << footprint << ")";
      throw PackingFailure(msg.str());
    }
  }

  Instance inst;
  inst.params = params;
  inst.workspace = workspace;
  inst.seed = seed;
  inst.footprint = footprint;
  inst.objects.reserve(n);
  for (int i = 0; i < n; ++i) {
    inst.objects.push_back({i, placed[i], placed[n + i]});
  }
  const double margin = std::max(0.1 * workspace.width(), 4.0 * params.r + footprint);
  const double ymid = 0.5 * (workspace.ymin + workspace.ymax);
  inst.safe = {Point2{workspace.xmin - margin, ymid}, Point2{workspace.xmax + margin, ymid}};
  return inst;
}

std::vector<std::string> check_instance(const Instance& inst) {
  std::vector<std::string> problems;
  const int n = inst.size();
  const auto& p = inst.params;
  if (p.c_t < 0 || p.c_pd < 0 || p.r < 0 || p.detour_penalty() < 0) {
    problems.emplace_back("cost parameters must be non-negative");
  }
  std::vector<Point2> points;
  for (int i = 0; i < n; ++i) {
    const auto& o = inst.objects[i];
    if (o.id != i) problems.push_back("object at index " + std::to_string(i) + " has id " + std::to_string(o.id));
    for (Point2 q : {o.start, o.goal}) {
      if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
        problems.push_back("object " + std::to_string(i) + " has a non-finite coordinate");
      } else if (!inst.workspace.contains(q)) {
        problems.push_back("object " + std::to_string(i) + " lies outside the workspace");
      }
    }
    points.push_back(o.start);
  }
  for (const auto& o : inst.objects) points.push_back(o.goal);
  const double min_dist = 2.0 * inst.footprint;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const double d = distance(points[a], points[b]);
      if (d < min_dist || (min_dist == 0.0 && d == 0.0)) {
        auto label = [n](std::size_t k) {
          return (k < static_cast<std::size_t>(n) ? "start " : "goal ") + std::to_string(k % n);
        };
        problems.push_back(label(a) + " overlaps " + label(b));
      }
    }
  }
  return problems;
}

SequenceReport validate_sequence(const Instance& inst, const OmegaSequence& seq) {
  const int n = inst.size();
  SequenceReport report;
  std::vector<int> seen(n, 0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Omega& w = seq[i];
    if (w.arm1 == kNoAct && w.arm2 == kNoAct) report.empty_tasks.push_back(i);
    for (int id : {w.arm1, w.arm2}) {
      if (id == kNoAct) continue;
      if (id < 0 || id >= n) {
        report.unknown.push_back(id);
      } else {
        ++seen[id];
      }
    }
  }
  for (int id = 0; id < n; ++id) {
    if (seen[id] == 0) report.missing.push_back(id);
    if (seen[id] > 1) report.duplicated.push_back(id);
  }
  return report;
}

std::string SequenceReport::describe() const {
  std::ostringstream out;
  auto list = [&out](const char* what, const auto& ids) {
    if (ids.empty()) return;
    out << what << ":";
    for (auto id : ids) out << ' ' << id;
    out << "; ";
  };
  list("missing", missing);
  list("duplicated", duplicated);
  list("unknown", unknown);
  list("empty tasks at", empty_tasks);
  std::string s = out.str();
  return s.empty() ? "ok" : s.substr(0, s.size() - 2);
}

}  // namespace dualarm
