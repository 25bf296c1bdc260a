#pragma once

#include <string>
#include <vector>

#include "shardsched/report.hpp"
#include "shardsched/topology.hpp"
#include "shardsched/workload.hpp"

namespace shardsched {

struct HoldInterval {
  ObjectId object = 0;
  int txn = 0;
  long long from = 0;  // grant round
  long long to = 0;    // release round
};

struct LockAudit {
  std::vector<HoldInterval> intervals;
  std::vector<std::string> violations;  // filled by validate_lock_intervals
  long long dies = 0;                   // wait-die abort/retry events
};

struct LockOptions {
  long long stall_guard_factor = 4;  // stall after factor * D * s quiet rounds
};

// Two-phase-locking baseline: per-object locks at destination shards,
// wait-die prioritization (lower id = higher priority, younger requesters
// die and retry), four-step commit over the locked objects, then unlocks.
// Deterministic round-driven execution; ties broken by transaction id.
ExecutionReport schedule_lock_based(const ShardGraph& g, const std::vector<Transaction>& batch,
                                    const LockOptions& opts = {}, LockAudit* audit = nullptr);

// At most one holder per object at any round; conflicting committed
// transactions must not overlap in their lock-holding intervals on shared
// objects.
std::vector<std::string> validate_lock_intervals(const std::vector<HoldInterval>& intervals);

}  // namespace shardsched
