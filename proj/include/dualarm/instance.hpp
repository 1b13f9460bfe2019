#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualarm/types.hpp"

namespace dualarm {

class PackingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kPlacementRetries = 10000;

/// Samples n objects with pairwise non-overlapping start and goal disks of
/// radius `footprint` inside `workspace`. Safe configurations sit outside the
/// left and right edges, clear of every object by more than the arm diameter.
/// Deterministic in all arguments. Throws PackingFailure when a point cannot
/// be placed within kPlacementRetries draws.
Instance generate_instance(int n, std::uint64_t seed, const Rect& workspace,
                           const CostParams& params, double footprint);

/// Problems that make an instance unusable; empty when valid.
std::vector<std::string> check_instance(const Instance& inst);

struct SequenceReport {
  std::vector<int> missing;           // object ids never transferred
  std::vector<int> duplicated;        // object ids transferred more than once
  std::vector<int> unknown;           // ids outside [0, n)
  std::vector<std::size_t> empty_tasks;  // indices of (NO_ACT, NO_ACT) tasks

  bool ok() const {
    return missing.empty() && duplicated.empty() && unknown.empty() && empty_tasks.empty();
  }
  std::string describe() const;
};

SequenceReport validate_sequence(const Instance& inst, const OmegaSequence& seq);

}  // namespace dualarm
