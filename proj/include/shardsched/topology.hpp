#pragma once

#include <string>
#include <vector>

namespace shardsched {

using ShardId = int;

enum class TopologyKind { Clique, Line, Hypercube, Grid };

std::string to_string(TopologyKind kind);

// Display helper: internal ids are 0-based, the usual naming is S1..Ss.
inline std::string shard_name(ShardId i) { return "S" + std::to_string(i + 1); }

// Weighted shard topology under its shortest-path metric. Distances are
// precomputed into a dense s x s matrix; immutable after construction and
// safe to share across readers.
class ShardGraph {
 public:
  static constexpr int kMaxShards = 1024;

  // grid_dims is required (and only allowed) for Grid; product must equal s.
  static ShardGraph build(TopologyKind kind, int s, const std::vector<int>& grid_dims = {});

  // Accepts "clique", "line", "hypercube", "grid:<d1>x<d2>[x...]".
  // For grids, s must equal the dimension product.
  static ShardGraph parse(const std::string& topology, int s);

  int shard_count() const { return s_; }
  TopologyKind kind() const { return kind_; }
  int diameter() const { return diameter_; }
  const std::vector<int>& grid_dims() const { return grid_dims_; }

  int dist(ShardId a, ShardId b) const { return dist_[static_cast<size_t>(a) * s_ + b]; }

  // { x : dist(center, x) <= z }, sorted ascending. z = 0 yields {center}.
  std::vector<ShardId> neighborhood(ShardId center, int z) const;

  // Shard index -> grid coordinates (Grid only).
  std::vector<int> coords_of(ShardId id) const;

  // Boustrophedon enumeration of all shards: consecutive entries are at
  // distance 1. Line yields 0..s-1; used for locality-window generation.
  std::vector<ShardId> snake_order() const;

 private:
  ShardGraph() = default;

  int s_ = 0;
  TopologyKind kind_ = TopologyKind::Clique;
  int diameter_ = 0;
  std::vector<int> grid_dims_;
  std::vector<int> dist_;  // dense s*s
};

}  // namespace shardsched
