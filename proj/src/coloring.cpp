#include "shardsched/coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace shardsched {

std::vector<std::vector<int>> Coloring::classes() const {
  std::vector<std::vector<int>> by_color(xi);
  for (const auto& [id, clr] : color) by_color[clr - 1].push_back(id);
  return by_color;
}

Coloring greedy_color(const ConflictGraph& cg, const std::vector<int>& order) {
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != cg.ids)
      throw std::invalid_argument("coloring order must be a permutation of the graph nodes");
  }
  Coloring c;
  std::vector<char> used;
  for (int id : order) {
    used.assign(c.xi + 2, 0);
    for (int nb : cg.neighbors_of(id)) {
      auto it = c.color.find(nb);
      if (it != c.color.end() && it->second < static_cast<int>(used.size())) used[it->second] = 1;
    }
    int clr = 1;
    while (used[clr]) ++clr;
    c.color[id] = clr;
    c.xi = std::max(c.xi, clr);
  }
  return c;
}

Coloring greedy_color(const ConflictGraph& cg) { return greedy_color(cg, cg.ids); }

std::vector<ColorViolation> validate_coloring(const ConflictGraph& cg, const Coloring& c) {
  std::vector<ColorViolation> out;
  for (const auto& e : cg.edges) {
    auto ia = c.color.find(e.a);
    auto ib = c.color.find(e.b);
    if (ia == c.color.end() || ib == c.color.end()) {
      out.push_back({e.a, e.b, 0});  // uncolored endpoint
    } else if (ia->second == ib->second) {
      out.push_back({e.a, e.b, ia->second});
    }
  }
  return out;
}

namespace {

bool color_with(const ConflictGraph& cg, int m, size_t v, std::vector<int>& assigned, int max_used) {
  if (v == cg.ids.size()) return true;
  // trying colors beyond max_used+1 only permutes color names
  const int limit = std::min(m, max_used + 1);
  for (int clr = 1; clr <= limit; ++clr) {
    bool ok = true;
    for (int nb : cg.adj[v]) {
      const int ni = cg.index_of.at(nb);
      if (static_cast<size_t>(ni) < v && assigned[ni] == clr) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    assigned[v] = clr;
    if (color_with(cg, m, v + 1, assigned, std::max(max_used, clr))) return true;
    assigned[v] = 0;
  }
  return false;
}

}  // namespace

int chromatic_oracle(const ConflictGraph& cg) {
  const int n = cg.node_count();
  if (n > kChromaticOracleMaxNodes)
    throw std::invalid_argument("chromatic oracle limited to " +
                                std::to_string(kChromaticOracleMaxNodes) + " nodes, got " +
                                std::to_string(n));
  if (n == 0) return 0;
  std::vector<int> assigned(n, 0);
  for (int m = 1; m <= n; ++m) {
    std::fill(assigned.begin(), assigned.end(), 0);
    if (color_with(cg, m, 0, assigned, 0)) return m;
  }
  return n;
}

}  // namespace shardsched
