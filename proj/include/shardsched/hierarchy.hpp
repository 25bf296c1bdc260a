#pragma once

#include <string>
#include <vector>

#include "shardsched/central_scheduler.hpp"
#include "shardsched/report.hpp"
#include "shardsched/topology.hpp"
#include "shardsched/workload.hpp"

namespace shardsched {

struct Cluster {
  std::vector<ShardId> members;  // sorted
  ShardId leader = 0;

  bool contains(ShardId x) const;
};

struct Sublayer {
  std::vector<Cluster> clusters;  // a partition of the shard set
};

struct Layer {
  std::vector<Sublayer> sublayers;
};

// Layered sparse cover of the shard graph. Layer q covers every shard's
// (2^q - 1)-neighborhood with at most two partitions per layer; heights
// (layer, sublayer) are ordered lexicographically and lower heights are
// scheduled first.
struct ClusterHierarchy {
  TopologyKind kind = TopologyKind::Clique;
  int shard_count = 0;
  std::vector<Layer> layers;

  int layer_count() const { return static_cast<int>(layers.size()); }
  int max_sublayers() const;  // H_2
};

// Line/grid use 1-D blocks of width 4*(2^q - 1) with a half-shifted second
// partition (grids span the full extent of every non-slab axis); layer 0 is
// singletons and the top layer is one cluster of all shards. Clique yields
// the single-cluster hierarchy. Hypercube is rejected.
ClusterHierarchy build_hierarchy(const ShardGraph& g);

// Checked sparse-cover properties: sublayer partitions, (2^q-1)-neighborhood
// coverage, participation <= 2 per layer, cluster diameter <= 4 * 2^q * H_2,
// leader neighborhood containment. Returns violations; empty means ok.
std::vector<std::string> verify_hierarchy(const ClusterHierarchy& h, const ShardGraph& g);

struct ClusterRef {
  int layer = 0;
  int sublayer = 0;
  int index = 0;
};

// Lowest-height cluster containing the transaction's home shard and every
// destination shard. The top cluster always qualifies.
ClusterRef home_cluster(const ClusterHierarchy& h, const Transaction& t);

struct DistributedOptions {
  bool global_window_distance = false;
};

// Level-by-level execution: within a height (q, r) every cluster with
// pending transactions runs the centralized scheduler concurrently; the
// level costs the max of its cluster makespans and the next level starts
// afterwards.
ExecutionReport schedule_distributed(const ShardGraph& g, const std::vector<Transaction>& batch,
                                     const DistributedOptions& opts = {});

}  // namespace shardsched
