#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "shardsched/experiments.hpp"

using namespace shardsched;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.topology = "clique";
  cfg.shard_counts = {16};
  cfg.k_values = {2, 4};
  cfg.schedulers = {SchedulerKind::Central, SchedulerKind::Lock2PL};
  cfg.repetitions = 3;
  cfg.base_seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("a sweep yields one row per scheduler-s-k cell") {
  ExperimentConfig cfg;
  cfg.shard_counts = {16, 32, 64, 128};
  cfg.k_values = {2, 4, 8};
  cfg.repetitions = 2;
  const auto rows = run_experiment(cfg);
  CHECK(rows.size() == 12);
  for (const auto& row : rows) {
    CHECK(row.error.empty());
    CHECK(row.bound_violations == 0);
    CHECK(row.mean_throughput > 0);
  }
}

TEST_CASE("reruns are byte-identical") {
  const auto cfg = small_config();
  CHECK(to_csv(run_experiment(cfg)) == to_csv(run_experiment(cfg)));
}

TEST_CASE("csv round-trips through the parser") {
  const auto rows = run_experiment(small_config());
  const auto parsed = parse_csv(to_csv(rows));
  REQUIRE(parsed.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].topology == rows[i].topology);
    CHECK(parsed[i].s == rows[i].s);
    CHECK(parsed[i].k == rows[i].k);
    CHECK(parsed[i].scheduler == rows[i].scheduler);
    CHECK(parsed[i].mean_throughput == doctest::Approx(rows[i].mean_throughput).epsilon(1e-6));
    CHECK(parsed[i].mean_messages == doctest::Approx(rows[i].mean_messages).epsilon(1e-6));
    CHECK(parsed[i].bound_violations == rows[i].bound_violations);
  }
}

TEST_CASE("emit_csv writes the file and rejects empty row sets") {
  const auto rows = run_experiment(small_config());
  const std::string path = "test_rows.csv";
  emit_csv(rows, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line == csv_header());
  int lines = 1;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 1 + static_cast<int>(rows.size()));
  in.close();
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_csv({}, path), std::invalid_argument);
}

TEST_CASE("invalid combinations become per-row errors, the sweep continues") {
  ExperimentConfig cfg;
  cfg.topology = "hypercube";
  cfg.shard_counts = {16};
  cfg.k_values = {2};
  cfg.schedulers = {SchedulerKind::Distributed, SchedulerKind::Central};
  cfg.repetitions = 2;
  const auto rows = run_experiment(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].bound_violations == -1);
  CHECK(!rows[0].error.empty());
  CHECK(rows[1].error.empty());
  // the error survives the CSV round trip
  const auto parsed = parse_csv(to_csv(rows));
  CHECK(parsed[0].bound_violations == -1);
  CHECK(!parsed[0].error.empty());
}

TEST_CASE("nearby on non-metric topologies is a row error") {
  ExperimentConfig cfg;
  cfg.topology = "clique";
  cfg.access = AccessPattern::Nearby;
  cfg.shard_counts = {16};
  cfg.k_values = {2};
  cfg.repetitions = 1;
  const auto rows = run_experiment(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].bound_violations == -1);
}

TEST_CASE("audit flags nothing on clean runs and sees the worked example's bound") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 4);
  const auto batch = shardsched::testing::four_shard_example();
  const auto report = schedule_centralized(g, batch);
  const auto audit = audit_run(g, batch, report, SchedulerKind::Central);
  CHECK(audit.violations == 0);
  // phase-2 makespan 12 against the 4d(kl+1) = 28 cap, colors >= l
  CHECK(report.phase2_rounds == 12);
  CHECK(report.colors_used >= max_object_load(batch));
  CHECK(audit.makespan_over_lower_bound == doctest::Approx(14.0 / 3.0));
}

TEST_CASE("the lemma-4 load bound holds in at least 95 of 100 seeds") {
  const auto g = ShardGraph::build(TopologyKind::Clique, 64);
  const double cap = 2.0 * 4 + 4.0 * std::log(64.0);
  int over = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto batch = gen_random(g, 4, seed);
    if (max_object_load(batch) > cap) ++over;
  }
  CHECK(over <= 5);
}
