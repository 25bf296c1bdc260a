#include <doctest.h>

#include "fixtures.hpp"
#include "shardsched/coloring.hpp"

using namespace shardsched;
using shardsched::testing::four_shard_example;
using shardsched::testing::make_txn;

TEST_CASE("greedy reproduces the worked example's colors") {
  const auto cg = build_conflict_graph(four_shard_example());
  const auto c = greedy_color(cg, {1, 2, 3, 4});
  CHECK(c.color.at(1) == 1);
  CHECK(c.color.at(2) == 2);
  CHECK(c.color.at(3) == 2);
  CHECK(c.color.at(4) == 3);
  CHECK(c.xi == 3);
  CHECK(validate_coloring(cg, c).empty());
}

TEST_CASE("edgeless graphs take one color, complete graphs take all") {
  std::vector<Transaction> disjoint = {make_txn(0, 0, {0}), make_txn(1, 1, {1}),
                                       make_txn(2, 2, {2})};
  const auto c1 = greedy_color(build_conflict_graph(disjoint));
  CHECK(c1.xi == 1);

  std::vector<Transaction> complete;
  for (int i = 0; i < 4; ++i) complete.push_back(make_txn(i, i, {0, 1, 2, 3}));
  const auto c2 = greedy_color(build_conflict_graph(complete));
  CHECK(c2.xi == 4);
}

TEST_CASE("order must be a permutation") {
  const auto cg = build_conflict_graph(four_shard_example());
  CHECK_THROWS_AS(greedy_color(cg, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(greedy_color(cg, {1, 2, 3, 3}), std::invalid_argument);
}

TEST_CASE("validate_coloring reports clashing edges") {
  const auto cg = build_conflict_graph(four_shard_example());
  Coloring all_same;
  for (int id : cg.ids) all_same.color[id] = 1;
  all_same.xi = 1;
  const auto violations = validate_coloring(cg, all_same);
  CHECK(violations.size() == cg.edges.size());
}

TEST_CASE("chromatic oracle on known instances") {
  CHECK(chromatic_oracle(build_conflict_graph(four_shard_example())) == 3);

  std::vector<Transaction> disjoint = {make_txn(0, 0, {0}), make_txn(1, 1, {1})};
  CHECK(chromatic_oracle(build_conflict_graph(disjoint)) == 1);

  // 5-cycle: txn i shares an object with txn i+1 mod 5
  std::vector<Transaction> cycle;
  for (int i = 0; i < 5; ++i) cycle.push_back(make_txn(i, i, {i, (i + 1) % 5}));
  CHECK(chromatic_oracle(build_conflict_graph(cycle)) == 3);
}

TEST_CASE("oracle rejects oversized instances") {
  std::vector<Transaction> big;
  for (int i = 0; i < 13; ++i) big.push_back(make_txn(i, i, {i}));
  CHECK_THROWS_AS(chromatic_oracle(build_conflict_graph(big)), std::invalid_argument);
}

TEST_CASE("greedy is valid and degree-bounded on random instances") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 20);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto batch = gen_random(g, 4, seed);
    const auto cg = build_conflict_graph(batch);
    const auto c = greedy_color(cg);
    CHECK(validate_coloring(cg, c).empty());
    CHECK(c.xi <= cg.max_degree() + 1);
    CHECK(c.xi >= max_object_load(batch));  // same-object writers form a clique
  }
}

TEST_CASE("oracle never beats the object-load clique bound, greedy never beats the oracle") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 10);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto batch = gen_random(g, 3, seed);
    const auto cg = build_conflict_graph(batch);
    const int chi = chromatic_oracle(cg);
    CHECK(chi >= max_object_load(batch));
    CHECK(greedy_color(cg).xi >= chi);
  }
}
