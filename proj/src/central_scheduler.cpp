#include "shardsched/central_scheduler.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "shardsched/coloring.hpp"

namespace shardsched {

long long makespan_upper_bound(long long k, long long l, long long d) {
  return 4 * d * (k * l + 1);
}

CentralCoreStats run_centralized_core(const ShardGraph& g,
                                      const std::vector<const Transaction*>& txns, int leader,
                                      long long start_round, MessageLedger& ledger,
                                      std::vector<std::vector<ChainEntry>>& chains,
                                      std::map<int, TxnResult>& outcomes,
                                      const EngineOptions& engine_opts) {
  CentralCoreStats stats;
  if (txns.empty()) return stats;

  // Phase 1: homes report to the leader, leader colors, leader informs back.
  // One control message per remote home shard each direction; the round cost
  // is one collection sweep plus one inform sweep at the worst home distance
  // (self-reporting still consumes a unit round).
  int d_up = 0;
  std::set<ShardId> remote_homes;
  for (const Transaction* t : txns) {
    d_up = std::max(d_up, g.dist(t->home, leader));
    if (t->home != leader) remote_homes.insert(t->home);
  }
  stats.phase1_rounds = 2LL * std::max(1, d_up);
  ledger.control += 2LL * static_cast<long long>(remote_homes.size());

  std::vector<Transaction> local;
  local.reserve(txns.size());
  for (const Transaction* t : txns) local.push_back(*t);
  const ConflictGraph cg = build_conflict_graph(local);
  const Coloring coloring = greedy_color(cg);
  stats.xi = coloring.xi;

  EngineOptions opts = engine_opts;

  RoundClock clock{start_round + stats.phase1_rounds};
  std::map<int, const Transaction*> by_id;
  for (const Transaction* t : txns) by_id[t->id] = t;

  for (const auto& cls : coloring.classes()) {
    std::vector<const Transaction*> window;
    window.reserve(cls.size());
    for (int id : cls) window.push_back(by_id.at(id));
    const int color = coloring.color.at(cls.front());
    const auto res = run_color_window(g, window, color, clock, ledger, chains, outcomes, opts);
    stats.phase2_rounds += res.rounds_used;
  }
  return stats;
}

ExecutionReport schedule_centralized(const ShardGraph& g, const std::vector<Transaction>& batch,
                                     const CentralOptions& opts) {
  ExecutionReport report;
  report.chains.assign(g.shard_count(), {});
  if (batch.empty()) return report;

  int leader = opts.leader < 0 ? 0 : opts.leader;
  if (leader >= g.shard_count()) throw std::invalid_argument("leader shard out of range");

  EngineOptions engine_opts;
  if (opts.global_window_distance)
    engine_opts.forced_window_distance = std::max(1, max_txn_distance(g, batch));

  std::vector<const Transaction*> txns;
  txns.reserve(batch.size());
  for (const auto& t : batch) txns.push_back(&t);

  const auto stats =
      run_centralized_core(g, txns, leader, 0, report.messages, report.chains, report.per_txn, engine_opts);
  report.phase1_rounds = stats.phase1_rounds;
  report.phase2_rounds = stats.phase2_rounds;
  report.colors_used = stats.xi;
  report.makespan = stats.phase1_rounds + stats.phase2_rounds;
  finalize_report(report);
  return report;
}

}  // namespace shardsched
