#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace shardsched {

// Logical cluster-sending transfers: one payload over any distance counts 1,
// regardless of intra-shard replication. Local deliveries (dest == src) are
// free.
struct MessageLedger {
  long long subtxn_send = 0;
  long long vote = 0;
  long long confirm = 0;
  long long commit_ack = 0;
  long long control = 0;

  long long total() const { return subtxn_send + vote + confirm + commit_ack + control; }

  MessageLedger& operator+=(const MessageLedger& o) {
    subtxn_send += o.subtxn_send;
    vote += o.vote;
    confirm += o.confirm;
    commit_ack += o.commit_ack;
    control += o.control;
    return *this;
  }
  bool operator==(const MessageLedger& o) const = default;
};

struct RoundClock {
  long long now = 0;
  void advance(long long rounds) { now += rounds; }
};

struct TxnResult {
  int color = 0;  // per-scheduling-unit color; 0 for the lock baseline
  bool committed = false;
  long long finish_round = 0;
  bool operator==(const TxnResult& o) const = default;
};

struct ChainEntry {
  int txn = 0;
  int object = 0;
  long long round = 0;
};

struct BucketStats {
  int index = 0;
  int txn_count = 0;
  int l_i = 0;   // max object load within the bucket
  int xi = 0;
  long long start_round = 0;
  long long phase1_rounds = 0;
  long long phase2_rounds = 0;
  long long handoff_rounds = 0;  // rounds spent reaching the *next* leader
};

struct ClusterStats {
  int layer = 0;
  int sublayer = 0;
  int cluster_index = 0;
  int txn_count = 0;
  int k_max = 0;
  int l_max = 0;  // object load among the cluster's transactions
  int d_max = 0;  // max home<->destination distance among them
  int xi = 0;
  long long phase1_rounds = 0;
  long long phase2_rounds = 0;
};

// Common output of every scheduler.
struct ExecutionReport {
  long long makespan = 0;
  std::map<int, TxnResult> per_txn;
  double throughput = 0.0;   // |batch| / makespan
  double avg_latency = 0.0;  // mean finish round, injection at round 0
  MessageLedger messages;
  int colors_used = 0;       // total color windows executed
  long long phase1_rounds = 0;
  long long phase2_rounds = 0;
  std::vector<std::vector<ChainEntry>> chains;  // per-shard local blockchains
  std::vector<BucketStats> buckets;             // bucketed runs only
  std::vector<ClusterStats> clusters;           // distributed runs only
};

// Fills throughput/avg_latency from per_txn and makespan.
void finalize_report(ExecutionReport& r);

}  // namespace shardsched
