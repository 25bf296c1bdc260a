#include <doctest.h>

#include "fixtures.hpp"
#include "shardsched/central_scheduler.hpp"
#include "shardsched/coloring.hpp"
#include "shardsched/commit_engine.hpp"

using namespace shardsched;
using shardsched::testing::four_shard_example;
using shardsched::testing::make_txn;

TEST_CASE("the four-shard worked example runs to round 14") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  const auto batch = four_shard_example();
  const auto report = schedule_centralized(g, batch, {0, false});

  CHECK(report.colors_used == 3);
  CHECK(report.per_txn.at(1).color == 1);
  CHECK(report.per_txn.at(2).color == 2);
  CHECK(report.per_txn.at(3).color == 2);
  CHECK(report.per_txn.at(4).color == 3);
  // information sharing and coloring take rounds 1-2, then 4 rounds per color
  CHECK(report.phase1_rounds == 2);
  CHECK(report.per_txn.at(1).finish_round == 6);
  CHECK(report.per_txn.at(2).finish_round == 10);
  CHECK(report.per_txn.at(3).finish_round == 10);
  CHECK(report.per_txn.at(4).finish_round == 14);
  CHECK(report.makespan == 14);
  for (const auto& [id, res] : report.per_txn) CHECK(res.committed);
  CHECK(check_serializability(batch, report).empty());
}

TEST_CASE("a single local transaction with itself as leader finishes at round 6") {
  const auto g = ShardGraph::build(TopologyKind::Line, 8);
  const std::vector<Transaction> batch = {make_txn(0, 2, {2})};
  const auto report = schedule_centralized(g, batch, {2, false});
  CHECK(report.phase1_rounds == 2);  // self-report still burns the two scheduling rounds
  CHECK(report.makespan == 6);
  CHECK(report.messages.total() == 0);
}

TEST_CASE("disjoint batches collapse to one window regardless of size") {
  for (int s : {8, 64}) {
    const auto g = ShardGraph::build(TopologyKind::Clique, s);
    std::vector<Transaction> batch;
    for (int i = 0; i < s; ++i) batch.push_back(make_txn(i, i, {i}));
    const auto report = schedule_centralized(g, batch);
    CHECK(report.colors_used == 1);
    CHECK(report.makespan == 6);
  }
}

TEST_CASE("empty batches produce a trivial report") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  const auto report = schedule_centralized(g, {});
  CHECK(report.makespan == 0);
  CHECK(report.throughput == 0.0);
  CHECK(report.per_txn.empty());
}

TEST_CASE("phase 1 cost scales with the worst home-to-leader distance") {
  const auto g = ShardGraph::build(TopologyKind::Line, 16);
  const std::vector<Transaction> batch = {make_txn(0, 15, {15})};
  const auto report = schedule_centralized(g, batch, {0, false});  // leader S1
  CHECK(report.phase1_rounds == 30);
  CHECK(report.messages.control == 2);
  CHECK(report.makespan == 34);
}

TEST_CASE("makespan_upper_bound formula") {
  CHECK(makespan_upper_bound(2, 3, 1) == 28);
  CHECK(makespan_upper_bound(1, 1, 1) == 8);
  // the worked example's phase 2 sits under its bound
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  const auto report = schedule_centralized(g, four_shard_example());
  CHECK(report.phase2_rounds == 12);
  CHECK(report.phase2_rounds <= makespan_upper_bound(2, 3, 1));
}

TEST_CASE("phase-2 bound audit over a seed sweep") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 128);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto batch = gen_random(g, 8, seed);
    const auto report = schedule_centralized(g, batch);
    const long long k = max_accesses(batch);
    const long long l = max_object_load(batch);
    CHECK(report.phase2_rounds <= makespan_upper_bound(k, l, 1));
    CHECK(report.colors_used >= l);
    CHECK(4 * l <= report.phase2_rounds);  // every color window spans at least 4 rounds
    CHECK(report.throughput == doctest::Approx(128.0 / report.makespan));
  }
}

TEST_CASE("abort path: failed conditions abort, the rest commit") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 8);
  WorkloadOptions wopts;
  wopts.abort_prob = 0.4;
  const auto batch = gen_random(g, 2, 9, wopts);
  const auto report = schedule_centralized(g, batch);
  int aborted = 0;
  for (const auto& t : batch) {
    CHECK(report.per_txn.at(t.id).committed == t.condition_ok);
    aborted += t.condition_ok ? 0 : 1;
  }
  CHECK(aborted > 0);
  // aborted transactions still carry a finish round within the makespan
  for (const auto& [id, res] : report.per_txn) CHECK(res.finish_round <= report.makespan);
  CHECK(check_serializability(batch, report).empty());
}

TEST_CASE("all-abort runs leave every chain empty") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  auto batch = four_shard_example();
  for (auto& t : batch) t.condition_ok = false;
  const auto report = schedule_centralized(g, batch);
  for (const auto& chain : commit_log(report)) CHECK(chain.empty());
  CHECK(report.makespan == 14);  // same window costs either way
}

TEST_CASE("global window distance flag stretches phase 2 to the batch bound") {
  const auto g = ShardGraph::build(TopologyKind::Line, 16);
  // conflict on object 1 forces two colors; the near window is cheap unless padded
  std::vector<Transaction> batch = {make_txn(0, 0, {0, 1}), make_txn(1, 8, {1, 15})};
  const auto tight = schedule_centralized(g, batch, {0, false});
  const auto padded = schedule_centralized(g, batch, {0, true});
  CHECK(tight.phase2_rounds == 4 * 1 + 4 * 7);
  CHECK(padded.phase2_rounds == 2 * 4 * 7);  // both windows at the global d = 7
  CHECK(tight.phase2_rounds < padded.phase2_rounds);
}
