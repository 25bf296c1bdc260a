#include <doctest.h>

#include "fixtures.hpp"
#include "shardsched/commit_engine.hpp"
#include "shardsched/lock_scheduler.hpp"

using namespace shardsched;
using shardsched::testing::four_shard_example;
using shardsched::testing::make_txn;

TEST_CASE("two disjoint transactions commit concurrently with the expected traffic") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 6);
  const std::vector<Transaction> batch = {make_txn(0, 0, {1, 2}), make_txn(1, 3, {4, 5})};
  LockAudit audit;
  const auto report = schedule_lock_based(g, batch, {}, &audit);
  CHECK(report.per_txn.at(0).committed);
  CHECK(report.per_txn.at(1).committed);
  CHECK(report.per_txn.at(0).finish_round == report.per_txn.at(1).finish_round);
  // per txn: 2 lock + 2 grant + (2 exec + 2 vote + 2 confirm) + 2 unlock
  CHECK(report.messages.total() == 2 * (2 + 2 + 6 + 2));
  CHECK(audit.dies == 0);
  CHECK(audit.violations.empty());
}

TEST_CASE("the four-shard example commits under locking") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  const auto batch = four_shard_example();
  LockAudit audit;
  const auto report = schedule_lock_based(g, batch, {}, &audit);
  for (const auto& [id, res] : report.per_txn) CHECK(res.committed);
  CHECK(audit.violations.empty());
  CHECK(check_serializability(batch, report).empty());
  CHECK(report.makespan >= 6);
}

TEST_CASE("conflicting transactions serialize through the lock table") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  // everyone writes object 2
  std::vector<Transaction> batch = {make_txn(0, 0, {0, 2}), make_txn(1, 1, {1, 2}),
                                    make_txn(2, 3, {2, 3})};
  LockAudit audit;
  const auto report = schedule_lock_based(g, batch, {}, &audit);
  for (const auto& [id, res] : report.per_txn) CHECK(res.committed);
  CHECK(audit.violations.empty());
  CHECK(check_serializability(batch, report).empty());
  // holding intervals on the shared object are disjoint by construction;
  // make sure the audit actually saw them
  int shared_holds = 0;
  for (const auto& iv : audit.intervals) shared_holds += iv.object == 2 ? 1 : 0;
  CHECK(shared_holds >= 3);
}

TEST_CASE("wait-die generates dies and retries under contention but terminates") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 32);
  const auto batch = gen_random(g, 8, 21);
  LockAudit audit;
  const auto report = schedule_lock_based(g, batch, {}, &audit);
  for (const auto& [id, res] : report.per_txn) CHECK(res.committed);
  CHECK(audit.dies > 0);
  CHECK(audit.violations.empty());
  CHECK(check_serializability(batch, report).empty());
}

TEST_CASE("a failed condition aborts once without retry") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  std::vector<Transaction> batch = {make_txn(0, 0, {1, 2})};
  batch[0].condition_ok = false;
  const auto report = schedule_lock_based(g, batch);
  CHECK(report.per_txn.at(0).committed == false);
  CHECK(report.per_txn.at(0).finish_round > 0);
  for (const auto& chain : report.chains) CHECK(chain.empty());
}

TEST_CASE("determinism: identical runs produce identical reports") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 24);
  const auto batch = gen_random(g, 4, 9);
  const auto a = schedule_lock_based(g, batch);
  const auto b = schedule_lock_based(g, batch);
  CHECK(a.makespan == b.makespan);
  CHECK(a.per_txn == b.per_txn);
  CHECK(a.messages == b.messages);
}

TEST_CASE("line topologies pay distance delays") {
  const auto g = ShardGraph::build(TopologyKind::Line, 8);
  const std::vector<Transaction> batch = {make_txn(0, 0, {7})};
  const auto report = schedule_lock_based(g, batch);
  // request 7, grant 7, exec 7, vote 7, confirm 7 after the round-1 send
  CHECK(report.makespan == 1 + 5 * 7);
  CHECK(report.messages.total() == 6);  // lock, grant, exec, vote, confirm, unlock
}

TEST_CASE("overlap validator catches an injected double hold") {
  std::vector<HoldInterval> intervals = {{5, 0, 2, 10}, {5, 1, 6, 12}};
  const auto violations = validate_lock_intervals(intervals);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("S6") != std::string::npos);
}
