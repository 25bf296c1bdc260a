#include "shardsched/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace shardsched {

namespace {

constexpr int kDiameterConstant = 4;  // recorded constant in diameter <= C * 2^q * H_2

int ceil_log2(int x) {
  int e = 0;
  while ((1 << e) < x) ++e;
  return e;
}

// Slab machinery: line/grid hierarchies are built as consecutive blocks of
// positions along one axis (the longest axis on grids), spanning the full
// extent of every other axis.
struct SlabAxis {
  int length = 0;                 // positions along the axis
  std::vector<int> position_of;   // shard -> axis position
};

SlabAxis slab_axis_for(const ShardGraph& g) {
  SlabAxis ax;
  const int s = g.shard_count();
  ax.position_of.resize(s);
  if (g.kind() == TopologyKind::Line) {
    ax.length = s;
    for (int i = 0; i < s; ++i) ax.position_of[i] = i;
    return ax;
  }
  const auto& dims = g.grid_dims();
  size_t axis = 0;
  for (size_t j = 1; j < dims.size(); ++j)
    if (dims[j] > dims[axis]) axis = j;
  ax.length = dims[axis];
  for (int i = 0; i < s; ++i) ax.position_of[i] = g.coords_of(i)[axis];
  return ax;
}

Cluster make_slab_cluster(const SlabAxis& ax, int lo, int hi) {
  Cluster c;
  for (int i = 0; i < static_cast<int>(ax.position_of.size()); ++i)
    if (ax.position_of[i] >= lo && ax.position_of[i] <= hi) c.members.push_back(i);
  return c;
}

std::vector<Cluster> slab_partition(const SlabAxis& ax, int block, int offset) {
  std::vector<Cluster> out;
  int lo = 0;
  if (offset > 0) {
    out.push_back(make_slab_cluster(ax, 0, std::min(offset, ax.length) - 1));
    lo = offset;
  }
  while (lo < ax.length) {
    const int hi = std::min(lo + block, ax.length) - 1;
    out.push_back(make_slab_cluster(ax, lo, hi));
    lo = hi + 1;
  }
  return out;
}

// Member nearest the cluster's metric center whose clipped (2^q - 1)-
// neighborhood stays inside the cluster; boundary clusters rely on clipping.
ShardId pick_leader(const ShardGraph& g, const Cluster& c, int radius) {
  std::vector<double> center;
  {
    // coordinate-wise midpoint of the members' bounding box
    auto coords = [&](ShardId x) {
      if (g.kind() == TopologyKind::Grid) return g.coords_of(x);
      return std::vector<int>{x};
    };
    std::vector<int> lo = coords(c.members.front()), hi = lo;
    for (ShardId m : c.members) {
      const auto cm = coords(m);
      for (size_t j = 0; j < cm.size(); ++j) {
        lo[j] = std::min(lo[j], cm[j]);
        hi[j] = std::max(hi[j], cm[j]);
      }
    }
    for (size_t j = 0; j < lo.size(); ++j) center.push_back((lo[j] + hi[j]) / 2.0);
    std::vector<std::pair<double, ShardId>> ranked;
    for (ShardId m : c.members) {
      const auto cm = coords(m);
      double dist = 0;
      for (size_t j = 0; j < cm.size(); ++j) dist += std::abs(cm[j] - center[j]);
      ranked.push_back({dist, m});
    }
    std::sort(ranked.begin(), ranked.end());
    for (const auto& [dist, m] : ranked) {
      bool ok = true;
      for (ShardId x : g.neighborhood(m, radius))
        if (!c.contains(x)) {
          ok = false;
          break;
        }
      if (ok) return m;
    }
    return ranked.front().second;  // flagged later by verify_hierarchy
  }
}

}  // namespace

bool Cluster::contains(ShardId x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

int ClusterHierarchy::max_sublayers() const {
  int h2 = 0;
  for (const auto& l : layers) h2 = std::max(h2, static_cast<int>(l.sublayers.size()));
  return h2;
}

ClusterHierarchy build_hierarchy(const ShardGraph& g) {
  const int s = g.shard_count();
  ClusterHierarchy h;
  h.kind = g.kind();
  h.shard_count = s;

  if (g.kind() == TopologyKind::Hypercube)
    throw std::invalid_argument(
        "hierarchy not implemented for this topology; use central/bucket scheduler");

  if (g.kind() == TopologyKind::Clique || s == 1) {
    Cluster all;
    for (int i = 0; i < s; ++i) all.members.push_back(i);
    all.leader = 0;
    h.layers.push_back(Layer{{Sublayer{{all}}}});
    return h;
  }

  const SlabAxis ax = slab_axis_for(g);
  const int layer_count = std::max(ceil_log2(g.diameter()) + 1, 2);

  for (int q = 0; q < layer_count; ++q) {
    Layer layer;
    if (q == 0) {
      Sublayer sl;
      for (int i = 0; i < s; ++i) sl.clusters.push_back(Cluster{{i}, i});
      layer.sublayers.push_back(std::move(sl));
      h.layers.push_back(std::move(layer));
      continue;
    }
    const int radius = (1 << q) - 1;
    const int block = 4 * radius;
    if (block >= ax.length) {
      Cluster all;
      for (int i = 0; i < s; ++i) all.members.push_back(i);
      all.leader = pick_leader(g, all, radius);
      layer.sublayers.push_back(Sublayer{{all}});
    } else {
      for (int offset : {0, block / 2}) {
        Sublayer sl;
        sl.clusters = slab_partition(ax, block, offset);
        for (auto& c : sl.clusters) c.leader = pick_leader(g, c, radius);
        layer.sublayers.push_back(std::move(sl));
      }
    }
    h.layers.push_back(std::move(layer));
  }
  return h;
}

std::vector<std::string> verify_hierarchy(const ClusterHierarchy& h, const ShardGraph& g) {
  std::vector<std::string> violations;
  const int s = g.shard_count();
  const int h2 = h.max_sublayers();

  for (int q = 0; q < h.layer_count(); ++q) {
    const Layer& layer = h.layers[q];
    const int radius = (1 << q) - 1;
    const long long diameter_bound = static_cast<long long>(kDiameterConstant) * (1LL << q) * h2;

    for (size_t r = 0; r < layer.sublayers.size(); ++r) {
      std::vector<int> count(s, 0);
      for (const auto& c : layer.sublayers[r].clusters) {
        for (ShardId m : c.members) {
          if (m < 0 || m >= s) {
            violations.push_back("member out of range in layer " + std::to_string(q));
            continue;
          }
          ++count[m];
        }
        // diameter
        int diam = 0;
        for (ShardId a : c.members)
          for (ShardId b : c.members) diam = std::max(diam, g.dist(a, b));
        if (diam > diameter_bound)
          violations.push_back("diameter " + std::to_string(diam) + " exceeds bound " +
                               std::to_string(diameter_bound) + " at layer " + std::to_string(q) +
                               " sublayer " + std::to_string(r));
        // leader containment
        if (!c.contains(c.leader)) {
          violations.push_back("leader " + shard_name(c.leader) + " not a member at layer " +
                               std::to_string(q));
        } else {
          for (ShardId x : g.neighborhood(c.leader, radius))
            if (!c.contains(x)) {
              violations.push_back("leader " + shard_name(c.leader) + " neighborhood escapes its cluster at layer " +
                                   std::to_string(q) + " sublayer " + std::to_string(r));
              break;
            }
        }
      }
      for (int i = 0; i < s; ++i)
        if (count[i] != 1)
          violations.push_back("sublayer (" + std::to_string(q) + "," + std::to_string(r) +
                               ") is not a partition: shard " + shard_name(i) + " appears " +
                               std::to_string(count[i]) + " times");
    }

    // participation and coverage per shard
    for (int i = 0; i < s; ++i) {
      int participation = 0;
      for (const auto& sl : layer.sublayers)
        for (const auto& c : sl.clusters)
          if (c.contains(i)) ++participation;
      if (participation > 2)
        violations.push_back("shard " + shard_name(i) + " participates in " +
                             std::to_string(participation) + " clusters at layer " + std::to_string(q));
      const auto nbhd = g.neighborhood(i, radius);
      bool covered = false;
      for (const auto& sl : layer.sublayers) {
        for (const auto& c : sl.clusters) {
          if (!c.contains(i)) continue;
          bool all_in = true;
          for (ShardId x : nbhd)
            if (!c.contains(x)) {
              all_in = false;
              break;
            }
          if (all_in) {
            covered = true;
            break;
          }
        }
        if (covered) break;
      }
      if (!covered)
        violations.push_back("coverage violation: shard " + shard_name(i) + " at layer " +
                             std::to_string(q));
    }
  }
  return violations;
}

ClusterRef home_cluster(const ClusterHierarchy& h, const Transaction& t) {
  for (int q = 0; q < h.layer_count(); ++q) {
    const Layer& layer = h.layers[q];
    for (size_t r = 0; r < layer.sublayers.size(); ++r) {
      const auto& clusters = layer.sublayers[r].clusters;
      for (size_t ci = 0; ci < clusters.size(); ++ci) {
        const Cluster& c = clusters[ci];
        if (!c.contains(t.home)) continue;
        bool all_in = true;
        for (const auto& a : t.accesses)
          if (!c.contains(owner_of(a.object))) {
            all_in = false;
            break;
          }
        if (all_in) return {q, static_cast<int>(r), static_cast<int>(ci)};
        break;  // home is in exactly one cluster per sublayer
      }
    }
  }
  throw std::logic_error("no cluster covers transaction " + std::to_string(t.id) +
                         "; hierarchy lacks a top cluster");
}

ExecutionReport schedule_distributed(const ShardGraph& g, const std::vector<Transaction>& batch,
                                     const DistributedOptions& opts) {
  ExecutionReport report;
  report.chains.assign(g.shard_count(), {});
  if (batch.empty()) return report;

  const ClusterHierarchy h = build_hierarchy(g);

  // group transactions by home cluster
  std::map<std::tuple<int, int, int>, std::vector<const Transaction*>> assignment;
  for (const auto& t : batch) {
    const ClusterRef ref = home_cluster(h, t);
    assignment[{ref.layer, ref.sublayer, ref.index}].push_back(&t);
  }

  long long now = 0;
  for (int q = 0; q < h.layer_count(); ++q) {
    for (size_t r = 0; r < h.layers[q].sublayers.size(); ++r) {
      long long level_cost = 0;
      const auto& clusters = h.layers[q].sublayers[r].clusters;
      for (size_t ci = 0; ci < clusters.size(); ++ci) {
        auto it = assignment.find({q, static_cast<int>(r), static_cast<int>(ci)});
        if (it == assignment.end()) continue;
        const auto& txns = it->second;

        EngineOptions engine_opts;
        int d_max = 0;
        for (const Transaction* t : txns) d_max = std::max(d_max, t->max_access_distance(g));
        if (opts.global_window_distance) engine_opts.forced_window_distance = std::max(1, d_max);

        const auto core = run_centralized_core(g, txns, clusters[ci].leader, now, report.messages,
                                               report.chains, report.per_txn, engine_opts);
        level_cost = std::max(level_cost, core.phase1_rounds + core.phase2_rounds);
        report.colors_used += core.xi;
        report.phase1_rounds += core.phase1_rounds;
        report.phase2_rounds += core.phase2_rounds;

        ClusterStats cs;
        cs.layer = q;
        cs.sublayer = static_cast<int>(r);
        cs.cluster_index = static_cast<int>(ci);
        cs.txn_count = static_cast<int>(txns.size());
        cs.d_max = d_max;
        {
          std::vector<Transaction> members;
          for (const Transaction* t : txns) members.push_back(*t);
          cs.l_max = max_object_load(members);
          cs.k_max = max_accesses(members);
        }
        cs.xi = core.xi;
        cs.phase1_rounds = core.phase1_rounds;
        cs.phase2_rounds = core.phase2_rounds;
        report.clusters.push_back(cs);
      }
      now += level_cost;
    }
  }

  report.makespan = now;
  finalize_report(report);
  return report;
}

}  // namespace shardsched
