#pragma once

#include <vector>

#include "shardsched/central_scheduler.hpp"

namespace shardsched {

struct Bucket {
  int index = 0;                // 2^i <= z(T) < 2^{i+1}; z = 0 joins B_0
  std::vector<int> txn_ids;     // ascending
  ShardId leader = 0;           // home shard of the member with smallest id
};

// Distance buckets of a batch; empty buckets are omitted, each transaction
// appears exactly once.
std::vector<Bucket> assign_buckets(const ShardGraph& g, const std::vector<Transaction>& batch);

int bucket_index_for(int z);

struct BucketOptions {
  bool global_window_distance = false;
};

// Runs the centralized scheduler per bucket in ascending index order with a
// leader handoff between consecutive non-empty buckets.
ExecutionReport schedule_bucketed(const ShardGraph& g, const std::vector<Transaction>& batch,
                                  const BucketOptions& opts = {});

}  // namespace shardsched
