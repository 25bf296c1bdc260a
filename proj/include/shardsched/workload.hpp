#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "shardsched/topology.hpp"

namespace shardsched {

// One object (account) per shard in generated workloads: object i lives on
// shard i.
using ObjectId = int;

inline ShardId owner_of(ObjectId o) { return o; }

struct Access {
  ObjectId object;
  bool write = true;
};

struct Transaction {
  int id = 0;
  ShardId home = 0;
  std::vector<Access> accesses;  // distinct objects, sorted ascending
  bool condition_ok = true;      // destination validation outcome

  // z(T): max home <-> destination distance; 0 when fully local.
  int max_access_distance(const ShardGraph& g) const;
  bool accesses_object(ObjectId o) const;
  bool writes_object(ObjectId o) const;
};

struct SubTransaction {
  int parent = 0;
  ShardId destination = 0;
  ObjectId object = 0;
  bool write = true;
  std::string condition;  // opaque phase payloads
  std::string action;
};

enum class AccessPattern { Random, Nearby };

struct WorkloadOptions {
  double abort_prob = 0.0;  // P(condition_ok = false) per transaction
  bool exactly_k = false;   // draw |accesses| = k instead of uniform 1..k
};

// One transaction per shard (home = that shard, id = shard index). Objects
// are drawn without replacement via seeded shuffle; |accesses| is uniform in
// 1..k ("at most k"), or k with exactly_k. All accesses are writes.
std::vector<Transaction> gen_random(const ShardGraph& g, int k, std::uint64_t seed,
                                    const WorkloadOptions& opts = {});

// Locality workload for line/grid: each transaction accesses a contiguous
// window (in snake order) of shards containing its home, so the max pairwise
// shard distance within a transaction is < k.
std::vector<Transaction> gen_nearby(const ShardGraph& g, int k, std::uint64_t seed,
                                    const WorkloadOptions& opts = {});

std::vector<Transaction> generate(const ShardGraph& g, AccessPattern pattern, int k,
                                  std::uint64_t seed, const WorkloadOptions& opts = {});

std::vector<SubTransaction> split(const Transaction& t);

// l: max number of transactions touching any single object (Lemma-1 bound).
int max_object_load(const std::vector<Transaction>& batch);

int max_accesses(const std::vector<Transaction>& batch);  // observed k
int max_txn_distance(const ShardGraph& g, const std::vector<Transaction>& batch);  // observed d

struct ConflictGraph {
  struct Edge {
    int a, b;           // transaction ids, a < b
    ObjectId witness;   // one shared object with a write
  };

  std::vector<int> ids;                    // sorted transaction ids
  std::unordered_map<int, int> index_of;   // id -> position in ids
  std::vector<std::vector<int>> adj;       // by position, sorted id lists
  std::vector<Edge> edges;

  int node_count() const { return static_cast<int>(ids.size()); }
  int max_degree() const;
  bool adjacent(int id_a, int id_b) const;
  const std::vector<int>& neighbors_of(int id) const;
};

// Definition-1 interference graph: an edge iff two transactions access a
// common object and at least one of the two accesses is a write.
ConflictGraph build_conflict_graph(const std::vector<Transaction>& batch);

}  // namespace shardsched
