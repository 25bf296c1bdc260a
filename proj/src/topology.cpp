#include "shardsched/topology.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace shardsched {

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Clique: return "clique";
    case TopologyKind::Line: return "line";
    case TopologyKind::Hypercube: return "hypercube";
    case TopologyKind::Grid: return "grid";
  }
  return "?";
}

namespace {

std::vector<int> index_to_coords(int idx, const std::vector<int>& dims) {
  std::vector<int> c(dims.size());
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    c[j] = idx % dims[j];
    idx /= dims[j];
  }
  return c;
}

int coords_to_index(const std::vector<int>& c, const std::vector<int>& dims) {
  int idx = 0;
  for (size_t j = 0; j < dims.size(); ++j) idx = idx * dims[j] + c[j];
  return idx;
}

// Recursive boustrophedon walk: consecutive coordinate tuples differ by 1 in
// exactly one axis.
void snake_rec(const std::vector<int>& dims, size_t axis, std::vector<std::vector<int>>& out) {
  if (axis == dims.size()) {
    out.push_back({});
    return;
  }
  std::vector<std::vector<int>> tail;
  snake_rec(dims, axis + 1, tail);
  std::vector<std::vector<int>> merged;
  merged.reserve(tail.size() * dims[axis]);
  for (int i = 0; i < dims[axis]; ++i) {
    if (i % 2 == 0) {
      for (auto it = tail.begin(); it != tail.end(); ++it) {
        std::vector<int> c{i};
        c.insert(c.end(), it->begin(), it->end());
        merged.push_back(std::move(c));
      }
    } else {
      for (auto it = tail.rbegin(); it != tail.rend(); ++it) {
        std::vector<int> c{i};
        c.insert(c.end(), it->begin(), it->end());
        merged.push_back(std::move(c));
      }
    }
  }
  out = std::move(merged);
}

}  // namespace

ShardGraph ShardGraph::build(TopologyKind kind, int s, const std::vector<int>& grid_dims) {
  if (s < 1) throw std::invalid_argument("shard count must be >= 1, got " + std::to_string(s));
  if (s > kMaxShards)
    throw std::invalid_argument("shard count " + std::to_string(s) + " exceeds supported maximum " +
                                std::to_string(kMaxShards));
  if (kind == TopologyKind::Hypercube && !std::has_single_bit(static_cast<unsigned>(s)))
    throw std::invalid_argument("hypercube requires a power-of-two shard count, got " + std::to_string(s));
  if (kind == TopologyKind::Grid) {
    if (grid_dims.empty()) throw std::invalid_argument("grid requires dimensions, e.g. grid:8x16");
    long long prod = 1;
    for (int d : grid_dims) {
      if (d < 1) throw std::invalid_argument("grid dimensions must be positive");
      prod *= d;
    }
    if (prod != s)
      throw std::invalid_argument("grid dimensions multiply to " + std::to_string(prod) +
                                  " but shard count is " + std::to_string(s));
  } else if (!grid_dims.empty()) {
    throw std::invalid_argument("grid dimensions only apply to grid topology");
  }

  ShardGraph g;
  g.s_ = s;
  g.kind_ = kind;
  g.grid_dims_ = grid_dims;
  g.dist_.assign(static_cast<size_t>(s) * s, 0);

  std::vector<std::vector<int>> coords;
  if (kind == TopologyKind::Grid) {
    coords.reserve(s);
    for (int i = 0; i < s; ++i) coords.push_back(index_to_coords(i, grid_dims));
  }

  int diameter = 0;
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      int d = 0;
      switch (kind) {
        case TopologyKind::Clique: d = (a == b) ? 0 : 1; break;
        case TopologyKind::Line: d = std::abs(a - b); break;
        case TopologyKind::Hypercube: d = std::popcount(static_cast<unsigned>(a ^ b)); break;
        case TopologyKind::Grid: {
          for (size_t j = 0; j < grid_dims.size(); ++j) d += std::abs(coords[a][j] - coords[b][j]);
          break;
        }
      }
      g.dist_[static_cast<size_t>(a) * s + b] = d;
      diameter = std::max(diameter, d);
    }
  }
  g.diameter_ = diameter;
  return g;
}

ShardGraph ShardGraph::parse(const std::string& topology, int s) {
  if (topology == "clique") return build(TopologyKind::Clique, s);
  if (topology == "line") return build(TopologyKind::Line, s);
  if (topology == "hypercube") return build(TopologyKind::Hypercube, s);
  if (topology.rfind("grid:", 0) == 0) {
    std::vector<int> dims;
    std::string rest = topology.substr(5);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t next = rest.find('x', pos);
      std::string tok = rest.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (tok.empty()) throw std::invalid_argument("bad grid spec: " + topology);
      dims.push_back(std::stoi(tok));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return build(TopologyKind::Grid, s, dims);
  }
  throw std::invalid_argument("unknown topology: " + topology +
                              " (expected clique|line|hypercube|grid:<d1>x<d2>[x...])");
}

std::vector<ShardId> ShardGraph::neighborhood(ShardId center, int z) const {
  if (center < 0 || center >= s_) throw std::invalid_argument("shard out of range");
  if (z < 0) throw std::invalid_argument("neighborhood radius must be >= 0");
  std::vector<ShardId> out;
  for (int x = 0; x < s_; ++x)
    if (dist(center, x) <= z) out.push_back(x);
  return out;
}

std::vector<int> ShardGraph::coords_of(ShardId id) const {
  if (kind_ != TopologyKind::Grid) throw std::logic_error("coords_of only applies to grid topology");
  return index_to_coords(id, grid_dims_);
}

std::vector<ShardId> ShardGraph::snake_order() const {
  if (kind_ == TopologyKind::Line) {
    std::vector<ShardId> out(s_);
    for (int i = 0; i < s_; ++i) out[i] = i;
    return out;
  }
  if (kind_ != TopologyKind::Grid)
    throw std::logic_error("snake_order only applies to line or grid topologies");
  std::vector<std::vector<int>> seq;
  snake_rec(grid_dims_, 0, seq);
  std::vector<ShardId> out;
  out.reserve(s_);
  for (const auto& c : seq) out.push_back(coords_to_index(c, grid_dims_));
  return out;
}

}  // namespace shardsched
