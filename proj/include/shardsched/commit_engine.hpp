#pragma once

#include <string>
#include <vector>

#include "shardsched/report.hpp"
#include "shardsched/topology.hpp"
#include "shardsched/workload.hpp"

namespace shardsched {

struct EngineOptions {
  // 0: each color window spans 4 * max(1, d_clr) rounds where d_clr is the
  // window's own max home<->destination distance. >0: force every window to
  // span 4 * forced_window_distance rounds (bound-exact replication).
  int forced_window_distance = 0;
};

struct ColorWindowResult {
  long long rounds_used = 0;
  std::vector<int> committed;
  std::vector<int> aborted;
  MessageLedger messages;
};

// Phase-2 of the centralized scheduler for one color class: the four-step
// send/vote/confirm/commit interaction. The window's transactions must be
// pairwise non-conflicting. Advances the clock, tallies messages, appends
// committed subtransactions to the per-shard chains, and records outcomes.
ColorWindowResult run_color_window(const ShardGraph& g,
                                   const std::vector<const Transaction*>& window, int color,
                                   RoundClock& clock, MessageLedger& ledger,
                                   std::vector<std::vector<ChainEntry>>& chains,
                                   std::map<int, TxnResult>& outcomes,
                                   const EngineOptions& opts = {});

// Per-shard local chains of a completed run.
const std::vector<std::vector<ChainEntry>>& commit_log(const ExecutionReport& report);

// Serializability audit: conflicting committed transactions must appear in
// the same relative order on every shard hosting both, consistent with their
// finish rounds. Returns human-readable violations; empty means ok.
std::vector<std::string> check_serializability(const std::vector<Transaction>& batch,
                                               const ExecutionReport& report);

}  // namespace shardsched
