#include "shardsched/workload.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "shardsched/rng.hpp"

namespace shardsched {

int Transaction::max_access_distance(const ShardGraph& g) const {
  int z = 0;
  for (const auto& a : accesses) z = std::max(z, g.dist(home, owner_of(a.object)));
  return z;
}

bool Transaction::accesses_object(ObjectId o) const {
  for (const auto& a : accesses)
    if (a.object == o) return true;
  return false;
}

bool Transaction::writes_object(ObjectId o) const {
  for (const auto& a : accesses)
    if (a.object == o && a.write) return true;
  return false;
}

namespace {

int draw_access_count(std::mt19937_64& rng, int k, bool exactly_k) {
  if (exactly_k) return k;
  return 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
}

void finish_txn(Transaction& t, std::vector<int> objects, std::mt19937_64& rng, double abort_prob) {
  std::sort(objects.begin(), objects.end());
  t.accesses.clear();
  for (int o : objects) t.accesses.push_back({o, true});
  t.condition_ok = abort_prob <= 0.0 || uniform_unit(rng) >= abort_prob;
}

}  // namespace

std::vector<Transaction> gen_random(const ShardGraph& g, int k, std::uint64_t seed,
                                    const WorkloadOptions& opts) {
  const int s = g.shard_count();
  if (k < 1 || k > s)
    throw std::invalid_argument("k must be in [1, s]; k=" + std::to_string(k) +
                                ", s=" + std::to_string(s));
  std::mt19937_64 rng(seed);
  std::vector<Transaction> batch(s);
  for (int i = 0; i < s; ++i) {
    Transaction& t = batch[i];
    t.id = i;
    t.home = i;
    const int c = draw_access_count(rng, k, opts.exactly_k);
    finish_txn(t, sample_distinct(rng, s, c), rng, opts.abort_prob);
  }
  return batch;
}

std::vector<Transaction> gen_nearby(const ShardGraph& g, int k, std::uint64_t seed,
                                    const WorkloadOptions& opts) {
  const int s = g.shard_count();
  if (g.kind() != TopologyKind::Line && g.kind() != TopologyKind::Grid)
    throw std::invalid_argument("nearby workload requires line or grid topology, got " +
                                to_string(g.kind()));
  if (k < 1 || k > s)
    throw std::invalid_argument("k must be in [1, s]; k=" + std::to_string(k) +
                                ", s=" + std::to_string(s));

  const std::vector<ShardId> snake = g.snake_order();
  std::vector<int> pos_of(s);
  for (int p = 0; p < s; ++p) pos_of[snake[p]] = p;

  std::mt19937_64 rng(seed);
  std::vector<Transaction> batch(s);
  for (int i = 0; i < s; ++i) {
    Transaction& t = batch[i];
    t.id = i;
    t.home = i;
    const int c = draw_access_count(rng, k, opts.exactly_k);
    // contiguous window of c shards containing the home; windows that would
    // overflow the ends are clamped inward
    const int p = pos_of[i];
    const int lo = std::max(0, p - c + 1);
    const int hi = std::min(s - c, p);
    const int w = lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    std::vector<int> objects;
    objects.reserve(c);
    for (int j = 0; j < c; ++j) objects.push_back(snake[w + j]);
    finish_txn(t, std::move(objects), rng, opts.abort_prob);
  }
  return batch;
}

std::vector<Transaction> generate(const ShardGraph& g, AccessPattern pattern, int k,
                                  std::uint64_t seed, const WorkloadOptions& opts) {
  return pattern == AccessPattern::Random ? gen_random(g, k, seed, opts)
                                          : gen_nearby(g, k, seed, opts);
}

std::vector<SubTransaction> split(const Transaction& t) {
  std::vector<SubTransaction> subs;
  subs.reserve(t.accesses.size());
  for (const auto& a : t.accesses)
    subs.push_back({t.id, owner_of(a.object), a.object, a.write, {}, {}});
  return subs;
}

int max_object_load(const std::vector<Transaction>& batch) {
  std::map<ObjectId, int> load;
  for (const auto& t : batch)
    for (const auto& a : t.accesses) ++load[a.object];
  int l = 0;
  for (const auto& [o, n] : load) l = std::max(l, n);
  return l;
}

int max_accesses(const std::vector<Transaction>& batch) {
  int k = 0;
  for (const auto& t : batch) k = std::max(k, static_cast<int>(t.accesses.size()));
  return k;
}

int max_txn_distance(const ShardGraph& g, const std::vector<Transaction>& batch) {
  int d = 0;
  for (const auto& t : batch) d = std::max(d, t.max_access_distance(g));
  return d;
}

int ConflictGraph::max_degree() const {
  size_t deg = 0;
  for (const auto& n : adj) deg = std::max(deg, n.size());
  return static_cast<int>(deg);
}

bool ConflictGraph::adjacent(int id_a, int id_b) const {
  const auto& n = neighbors_of(id_a);
  return std::binary_search(n.begin(), n.end(), id_b);
}

const std::vector<int>& ConflictGraph::neighbors_of(int id) const {
  return adj[index_of.at(id)];
}

ConflictGraph build_conflict_graph(const std::vector<Transaction>& batch) {
  ConflictGraph cg;
  cg.ids.reserve(batch.size());
  for (const auto& t : batch) cg.ids.push_back(t.id);
  std::sort(cg.ids.begin(), cg.ids.end());
  if (std::adjacent_find(cg.ids.begin(), cg.ids.end()) != cg.ids.end())
    throw std::invalid_argument("transaction ids must be unique");
  for (size_t i = 0; i < cg.ids.size(); ++i) cg.index_of[cg.ids[i]] = static_cast<int>(i);
  cg.adj.assign(cg.ids.size(), {});

  // object -> (txn id, writes it) pairs
  std::map<ObjectId, std::vector<std::pair<int, bool>>> users;
  for (const auto& t : batch)
    for (const auto& a : t.accesses) users[a.object].push_back({t.id, a.write});

  std::map<std::pair<int, int>, ObjectId> seen;
  for (const auto& [obj, list] : users) {
    for (size_t i = 0; i < list.size(); ++i) {
      for (size_t j = i + 1; j < list.size(); ++j) {
        if (!list[i].second && !list[j].second) continue;  // two reads don't conflict
        auto key = std::minmax(list[i].first, list[j].first);
        seen.emplace(std::pair<int, int>{key.first, key.second}, obj);
      }
    }
  }
  for (const auto& [pair, witness] : seen) {
    cg.edges.push_back({pair.first, pair.second, witness});
    cg.adj[cg.index_of[pair.first]].push_back(pair.second);
    cg.adj[cg.index_of[pair.second]].push_back(pair.first);
  }
  for (auto& n : cg.adj) std::sort(n.begin(), n.end());
  return cg;
}

}  // namespace shardsched
