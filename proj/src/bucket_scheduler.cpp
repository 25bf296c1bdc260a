#include "shardsched/bucket_scheduler.hpp"

#include <algorithm>
#include <map>

namespace shardsched {

int bucket_index_for(int z) {
  if (z <= 1) return 0;
  int i = 0;
  while ((2 << i) <= z) ++i;  // largest i with 2^i <= z
  return i;
}

std::vector<Bucket> assign_buckets(const ShardGraph& g, const std::vector<Transaction>& batch) {
  std::map<int, Bucket> buckets;
  std::map<int, int> min_id;
  for (const auto& t : batch) {
    const int i = bucket_index_for(t.max_access_distance(g));
    auto& b = buckets[i];
    b.index = i;
    b.txn_ids.push_back(t.id);
    auto it = min_id.find(i);
    if (it == min_id.end() || t.id < it->second) {
      min_id[i] = t.id;
      b.leader = t.home;
    }
  }
  std::vector<Bucket> out;
  out.reserve(buckets.size());
  for (auto& [i, b] : buckets) {
    std::sort(b.txn_ids.begin(), b.txn_ids.end());
    out.push_back(std::move(b));
  }
  return out;
}

ExecutionReport schedule_bucketed(const ShardGraph& g, const std::vector<Transaction>& batch,
                                  const BucketOptions& opts) {
  ExecutionReport report;
  report.chains.assign(g.shard_count(), {});
  if (batch.empty()) return report;

  std::map<int, const Transaction*> by_id;
  for (const auto& t : batch) by_id[t.id] = &t;

  const std::vector<Bucket> buckets = assign_buckets(g, batch);
  long long now = 0;
  for (size_t bi = 0; bi < buckets.size(); ++bi) {
    const Bucket& b = buckets[bi];
    std::vector<const Transaction*> txns;
    txns.reserve(b.txn_ids.size());
    for (int id : b.txn_ids) txns.push_back(by_id.at(id));

    EngineOptions engine_opts;
    if (opts.global_window_distance) {
      int d = 0;
      for (const Transaction* t : txns) d = std::max(d, t->max_access_distance(g));
      engine_opts.forced_window_distance = std::max(1, d);
    }

    BucketStats stats;
    stats.index = b.index;
    stats.txn_count = static_cast<int>(b.txn_ids.size());
    stats.start_round = now;
    {
      std::vector<Transaction> members;
      members.reserve(txns.size());
      for (const Transaction* t : txns) members.push_back(*t);
      stats.l_i = max_object_load(members);
    }

    const auto core = run_centralized_core(g, txns, b.leader, now, report.messages, report.chains,
                                           report.per_txn, engine_opts);
    stats.phase1_rounds = core.phase1_rounds;
    stats.phase2_rounds = core.phase2_rounds;
    stats.xi = core.xi;
    now += core.phase1_rounds + core.phase2_rounds;
    report.colors_used += core.xi;

    // completion handoff to the next bucket's leader
    if (bi + 1 < buckets.size()) {
      const int hop = g.dist(b.leader, buckets[bi + 1].leader);
      stats.handoff_rounds = hop;
      now += hop;
      if (hop > 0) report.messages.control += 1;
    }
    report.buckets.push_back(stats);
  }

  report.makespan = now;
  for (const auto& b : report.buckets) {
    report.phase1_rounds += b.phase1_rounds;
    report.phase2_rounds += b.phase2_rounds;
  }
  finalize_report(report);
  return report;
}

}  // namespace shardsched
