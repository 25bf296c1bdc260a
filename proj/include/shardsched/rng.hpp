#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace shardsched {

// Deterministic RNG helpers. std::uniform_int_distribution is
// implementation-defined, so bounded draws are done by hand to keep
// generated workloads reproducible across compilers.

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // rejection sampling, unbiased
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// First `take` elements of a Fisher-Yates shuffle of 0..n-1.
inline std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int take) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < take; ++i) {
    const int j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

}  // namespace shardsched
