#pragma once

#include <map>
#include <vector>

#include "shardsched/workload.hpp"

namespace shardsched {

struct Coloring {
  std::map<int, int> color;  // transaction id -> color in 1..xi
  int xi = 0;                // colors used

  std::vector<std::vector<int>> classes() const;  // txn ids grouped by color, 1-based outer
};

// First-fit greedy in the given order (must be a permutation of the nodes).
Coloring greedy_color(const ConflictGraph& cg, const std::vector<int>& order);

// Default order: ascending transaction id (ascending home shard in generated
// batches), which reproduces the worked four-shard schedule.
Coloring greedy_color(const ConflictGraph& cg);

struct ColorViolation {
  int a, b;
  int color;
};

// Every edge whose endpoints share a color; empty means valid.
std::vector<ColorViolation> validate_coloring(const ConflictGraph& cg, const Coloring& c);

// Exact chromatic number by branch and bound; test oracle, limited to small
// instances.
inline constexpr int kChromaticOracleMaxNodes = 12;
int chromatic_oracle(const ConflictGraph& cg);

}  // namespace shardsched
