#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dualarm/lazy.hpp"
#include "dualarm/plan.hpp"
#include "dualarm/types.hpp"

namespace dualarm {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NO_ACT is written as null; the safe stop as the string "safe".
Json to_json(const Instance& inst);
Json to_json(const Omega& task);
Json to_json(const Stop& stop);
Json to_json(const DualArmPlan& plan);
Json to_json(const BlockedSet& blocked);
/// Lazy outcome: status, retries, invocations, blocked set and plan if any.
Json to_json(const LazyResult& result);

Instance instance_from_json(const Json& j);
Omega omega_from_json(const Json& j);
Stop stop_from_json(const Json& j);
DualArmPlan plan_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace dualarm
