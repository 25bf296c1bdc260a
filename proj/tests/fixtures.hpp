#pragma once

#include <vector>

#include "shardsched/workload.hpp"

namespace shardsched::testing {

// The four-shard worked example: T1 accesses S2,S3; T2 accesses S2,S4;
// T3 accesses S1,S3; T4 accesses S3,S4 (all writes). Ids 1..4, homes S1..S4.
inline std::vector<Transaction> four_shard_example() {
  auto txn = [](int id, int home, std::vector<int> objects) {
    Transaction t;
    t.id = id;
    t.home = home;
    for (int o : objects) t.accesses.push_back({o, true});
    return t;
  };
  return {
      txn(1, 0, {1, 2}),
      txn(2, 1, {1, 3}),
      txn(3, 2, {0, 2}),
      txn(4, 3, {2, 3}),
  };
}

inline Transaction make_txn(int id, int home, std::vector<int> objects, bool write = true) {
  Transaction t;
  t.id = id;
  t.home = home;
  for (int o : objects) t.accesses.push_back({o, write});
  return t;
}

}  // namespace shardsched::testing
