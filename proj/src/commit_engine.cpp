#include "shardsched/commit_engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace shardsched {

void finalize_report(ExecutionReport& r) {
  const size_t n = r.per_txn.size();
  if (n == 0 || r.makespan == 0) {
    r.throughput = 0.0;
    r.avg_latency = 0.0;
    return;
  }
  r.throughput = static_cast<double>(n) / static_cast<double>(r.makespan);
  long long sum = 0;
  for (const auto& [id, res] : r.per_txn) sum += res.finish_round;
  r.avg_latency = static_cast<double>(sum) / static_cast<double>(n);
}

ColorWindowResult run_color_window(const ShardGraph& g,
                                   const std::vector<const Transaction*>& window, int color,
                                   RoundClock& clock, MessageLedger& ledger,
                                   std::vector<std::vector<ChainEntry>>& chains,
                                   std::map<int, TxnResult>& outcomes, const EngineOptions& opts) {
  // schedule validity: same-color transactions must not conflict
  {
    std::map<ObjectId, std::pair<int, int>> use;  // object -> (readers+writers, writers)
    std::map<ObjectId, int> first_user;
    for (const Transaction* t : window) {
      for (const auto& a : t->accesses) {
        auto& u = use[a.object];
        if (u.first > 0 && (a.write || u.second > 0))
          throw std::invalid_argument("conflicting transactions " + std::to_string(first_user[a.object]) +
                                      " and " + std::to_string(t->id) +
                                      " share object at " + shard_name(owner_of(a.object)) +
                                      " in one color window");
        if (u.first == 0) first_user[a.object] = t->id;
        u.first += 1;
        u.second += a.write ? 1 : 0;
      }
    }
  }

  int d_clr = 0;
  for (const Transaction* t : window) d_clr = std::max(d_clr, t->max_access_distance(g));
  long long span = 4LL * std::max(1, d_clr);
  if (opts.forced_window_distance > 0) span = 4LL * opts.forced_window_distance;

  ColorWindowResult result;
  result.rounds_used = span;
  const long long finish = clock.now + span;

  // deterministic per-window order: ascending transaction id
  std::vector<const Transaction*> sorted(window);
  std::sort(sorted.begin(), sorted.end(),
            [](const Transaction* a, const Transaction* b) { return a->id < b->id; });

  for (const Transaction* t : sorted) {
    int remote = 0;
    for (const auto& a : t->accesses)
      if (owner_of(a.object) != t->home) ++remote;
    // Step 1: subtransactions to destinations; Step 2: votes back;
    // Step 3: confirm commit/abort per destination; Step 4 is local.
    result.messages.subtxn_send += remote;
    result.messages.vote += remote;
    result.messages.confirm += remote;

    const bool commits = t->condition_ok;
    if (commits) {
      for (const auto& a : t->accesses)
        chains[owner_of(a.object)].push_back({t->id, a.object, finish});
      result.committed.push_back(t->id);
    } else {
      result.aborted.push_back(t->id);
    }
    outcomes[t->id] = TxnResult{color, commits, finish};
  }

  ledger += result.messages;
  clock.advance(span);
  return result;
}

const std::vector<std::vector<ChainEntry>>& commit_log(const ExecutionReport& report) {
  return report.chains;
}

std::vector<std::string> check_serializability(const std::vector<Transaction>& batch,
                                               const ExecutionReport& report) {
  std::vector<std::string> violations;
  const ConflictGraph cg = build_conflict_graph(batch);

  // position of each committed transaction in each shard's chain
  std::map<std::pair<int, int>, size_t> pos;  // (shard, txn) -> index
  for (size_t shard = 0; shard < report.chains.size(); ++shard)
    for (size_t i = 0; i < report.chains[shard].size(); ++i)
      pos[{static_cast<int>(shard), report.chains[shard][i].txn}] = i;

  std::map<int, const Transaction*> by_id;
  for (const auto& t : batch) by_id[t.id] = &t;

  for (const auto& e : cg.edges) {
    auto ra = report.per_txn.find(e.a);
    auto rb = report.per_txn.find(e.b);
    if (ra == report.per_txn.end() || rb == report.per_txn.end()) continue;
    if (!ra->second.committed || !rb->second.committed) continue;
    // color-window schedulers place conflicting transactions in disjoint
    // windows, so their finish rounds must differ
    if (ra->second.color > 0 && rb->second.color > 0 &&
        ra->second.finish_round == rb->second.finish_round) {
      violations.push_back("conflicting transactions " + std::to_string(e.a) + " and " +
                           std::to_string(e.b) + " commit in the same round " +
                           std::to_string(ra->second.finish_round));
    }
    // every shard hosting subtransactions of both must serialize them in the
    // same relative order
    int order = 0;  // +1: a before b, -1: b before a
    for (const auto& acc : by_id.at(e.a)->accesses) {
      const int shard = owner_of(acc.object);
      auto pa = pos.find({shard, e.a});
      auto pb = pos.find({shard, e.b});
      if (pa == pos.end() || pb == pos.end()) continue;
      const int here = pa->second < pb->second ? 1 : -1;
      if (order == 0) {
        order = here;
      } else if (order != here) {
        violations.push_back("chain order for " + std::to_string(e.a) + "/" + std::to_string(e.b) +
                             " disagrees across shards (seen at " + shard_name(shard) + ")");
      }
    }
    if (order == 0)
      violations.push_back("conflicting committed pair " + std::to_string(e.a) + "/" +
                           std::to_string(e.b) + " shares no chain");
  }
  return violations;
}

}  // namespace shardsched
