#include "dualarm/io.hpp"

#include <fstream>

namespace dualarm {

namespace {

Json point(Point2 p) { return Json::array({p.x, p.y}); }

Point2 point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [x, y], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Json rect(const Rect& r) { return Json::array({r.xmin, r.ymin, r.xmax, r.ymax}); }

Rect rect_from(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw FormatError("expected [xmin, ymin, xmax, ymax], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Json slot(int object) { return object == kNoAct ? Json(nullptr) : Json(object); }

int slot_from(const Json& j) {
  if (j.is_null()) return kNoAct;
  if (!j.is_number_integer()) throw FormatError("expected an object id or null, got " + j.dump());
  return j.get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const Omega& task) { return Json::array({slot(task.arm1), slot(task.arm2)}); }

Json to_json(const Stop& stop) { return stop ? to_json(*stop) : Json("safe"); }

Json to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.size();
  j["seed"] = inst.seed;
  j["footprint"] = inst.footprint;
  j["workspace"] = rect(inst.workspace);
  j["safe"] = Json::array({point(inst.safe[0]), point(inst.safe[1])});
  Json params;
  params["c_t"] = inst.params.c_t;
  params["c_pd"] = inst.params.c_pd;
  params["r"] = inst.params.r;
  if (inst.params.detour_override) params["detour_penalty"] = *inst.params.detour_override;
  params["handling"] = inst.params.handling == Handling::kPerObject ? "per_object" : "per_transfer";
  j["params"] = params;
  j["objects"] = Json::array();
  for (const auto& o : inst.objects) {
    j["objects"].push_back({{"id", o.id}, {"start", point(o.start)}, {"goal", point(o.goal)}});
  }
  j["obstacles"] = Json::array();
  for (const auto& r : inst.obstacles) j["obstacles"].push_back(rect(r));
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    Instance inst;
    inst.seed = j.value("seed", std::uint64_t{0});
    inst.footprint = j.value("footprint", 0.0);
    if (j.contains("workspace")) inst.workspace = rect_from(j["workspace"]);
    const Json& safe = field(j, "safe");
    if (!safe.is_array() || safe.size() != 2) throw FormatError("'safe' must hold two points");
    inst.safe = {point_from(safe[0]), point_from(safe[1])};
    if (j.contains("params")) {
      const Json& p = j["params"];
      inst.params.c_t = p.value("c_t", 1.0);
      inst.params.c_pd = p.value("c_pd", 0.0);
      inst.params.r = p.value("r", 0.0);
      if (p.contains("detour_penalty")) inst.params.detour_override = p["detour_penalty"].get<double>();
      const std::string handling = p.value("handling", std::string("per_transfer"));
      if (handling == "per_object") {
        inst.params.handling = Handling::kPerObject;
      } else if (handling != "per_transfer") {
        throw FormatError("unknown handling '" + handling + "'");
      }
    }
    for (const Json& o : field(j, "objects")) {
      inst.objects.push_back({field(o, "id").get<int>(), point_from(field(o, "start")), point_from(field(o, "goal"))});
    }
    if (j.contains("obstacles")) {
      for (const Json& r : j["obstacles"]) inst.obstacles.push_back(rect_from(r));
    }
    if (j.contains("n") && j["n"].get<int>() != inst.size()) {
      throw FormatError("'n' disagrees with the number of objects");
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed instance: ") + e.what());
  }
}

Omega omega_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [arm1, arm2], got " + j.dump());
  return {slot_from(j[0]), slot_from(j[1])};
}

Stop stop_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "safe") throw FormatError("unknown stop " + j.dump());
    return kSafe;
  }
  return omega_from_json(j);
}

Json to_json(const DualArmPlan& plan) {
  Json j;
  j["sequence"] = Json::array();
  for (const Omega& t : plan.sequence) j["sequence"].push_back(to_json(t));
  j["total_cost"] = plan.total_cost;
  j["transfer_cost"] = plan.transfer_cost();
  j["move_cost"] = plan.move_cost();
  j["segments"] = Json::array();
  for (const PlanSegment& s : plan.segments) {
    Json seg;
    seg["kind"] = to_string(s.kind);
    seg["from"] = to_json(s.from);
    seg["to"] = to_json(s.to);
    seg["paths"] = Json::array({Json::array({point(s.paths[0].from), point(s.paths[0].to)}),
                                Json::array({point(s.paths[1].from), point(s.paths[1].to)})});
    seg["lengths"] = Json::array({s.lengths[0], s.lengths[1]});
    seg["conflict"] = s.conflict;
    seg["cost"] = s.cost;
    j["segments"].push_back(seg);
  }
  return j;
}

DualArmPlan plan_from_json(const Json& j) {
  try {
    DualArmPlan plan;
    for (const Json& t : field(j, "sequence")) plan.sequence.push_back(omega_from_json(t));
    plan.total_cost = field(j, "total_cost").get<double>();
    for (const Json& s : field(j, "segments")) {
      PlanSegment seg;
      const std::string kind = field(s, "kind").get<std::string>();
      if (kind == "transfer") {
        seg.kind = SegmentKind::kTransfer;
      } else if (kind == "move") {
        seg.kind = SegmentKind::kMove;
      } else {
        throw FormatError("unknown segment kind '" + kind + "'");
      }
      seg.from = stop_from_json(field(s, "from"));
      seg.to = stop_from_json(field(s, "to"));
      const Json& paths = field(s, "paths");
      if (!paths.is_array() || paths.size() != 2) throw FormatError("'paths' must hold two segments");
      for (int arm = 0; arm < 2; ++arm) {
        if (!paths[arm].is_array() || paths[arm].size() != 2) throw FormatError("path must be [from, to]");
        seg.paths[arm] = {point_from(paths[arm][0]), point_from(paths[arm][1])};
      }
      const Json& lengths = field(s, "lengths");
      if (!lengths.is_array() || lengths.size() != 2) throw FormatError("'lengths' must hold two values");
      seg.lengths = {lengths[0].get<double>(), lengths[1].get<double>()};
      seg.conflict = field(s, "conflict").get<bool>();
      seg.cost = field(s, "cost").get<double>();
      plan.segments.push_back(seg);
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed plan: ") + e.what());
  }
}

Json to_json(const BlockedSet& blocked) {
  Json j;
  j["transfers"] = Json::array();
  for (const Omega& t : blocked.transfers) j["transfers"].push_back(to_json(t));
  j["moves"] = Json::array();
  for (const auto& [from, to] : blocked.moves) j["moves"].push_back(Json::array({to_json(from), to_json(to)}));
  return j;
}

Json to_json(const LazyResult& result) {
  Json j;
  j["status"] = to_string(result.status);
  j["solver_invocations"] = result.solver_invocations;
  j["retries"] = result.retries();
  j["feasibility_checks"] = result.feasibility_checks;
  j["candidate_costs"] = result.candidate_costs;
  j["wall_time_secs"] = result.wall_time_secs;
  j["blocked"] = to_json(result.blocked);
  if (!result.message.empty()) j["message"] = result.message;
  if (result.plan) j["plan"] = to_json(*result.plan);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace dualarm
