#pragma once

#include <vector>

#include "shardsched/commit_engine.hpp"
#include "shardsched/report.hpp"
#include "shardsched/topology.hpp"
#include "shardsched/workload.hpp"

namespace shardsched {

struct CentralOptions {
  int leader = -1;  // -1: lowest-index shard
  bool global_window_distance = false;
};

// Leader collection + greedy coloring (Phase 1), then one four-step window
// per color in ascending color order (Phase 2).
ExecutionReport schedule_centralized(const ShardGraph& g, const std::vector<Transaction>& batch,
                                     const CentralOptions& opts = {});

// Phase-2 processing-time bound: 4 * d * (k*l + 1).
long long makespan_upper_bound(long long k, long long l, long long d);

struct CentralCoreStats {
  long long phase1_rounds = 0;
  long long phase2_rounds = 0;
  int xi = 0;
};

// One full centralized run over `txns` starting at `start_round`, writing
// into shared state. Buckets and cluster levels are sequenced by callers.
CentralCoreStats run_centralized_core(const ShardGraph& g,
                                      const std::vector<const Transaction*>& txns, int leader,
                                      long long start_round, MessageLedger& ledger,
                                      std::vector<std::vector<ChainEntry>>& chains,
                                      std::map<int, TxnResult>& outcomes,
                                      const EngineOptions& engine_opts = {});

}  // namespace shardsched
