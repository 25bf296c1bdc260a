#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shardsched/report.hpp"
#include "shardsched/topology.hpp"
#include "shardsched/workload.hpp"

namespace shardsched {

enum class SchedulerKind { Central, Bucket, Distributed, Lock2PL };

std::string to_string(SchedulerKind kind);
SchedulerKind scheduler_from_string(const std::string& name);

struct ExperimentConfig {
  std::string topology = "clique";  // clique|line|hypercube|grid:<d1>x<d2>
  std::vector<int> shard_counts = {16, 32, 64, 128};
  std::vector<int> k_values = {2, 4, 8};
  AccessPattern access = AccessPattern::Random;
  std::vector<SchedulerKind> schedulers = {SchedulerKind::Central};
  int repetitions = 10;
  std::uint64_t base_seed = 1;
  int leader = -1;
  double abort_prob = 0.0;
  bool exactly_k = false;
  bool global_window_distance = false;
};

struct ResultRow {
  std::string topology;
  int s = 0;
  int k = 0;
  std::string access;
  std::string scheduler;
  int reps = 0;
  std::uint64_t seed = 0;
  double mean_throughput = 0, sd_throughput = 0;
  double mean_latency = 0, sd_latency = 0;
  double mean_messages = 0, sd_messages = 0;
  double mean_makespan = 0;
  double colors_mean = 0;
  long long bound_violations = 0;  // -1 marks an invalid combination
  double measured_ratio = 0;       // mean makespan / max(1, l) lower bound
  std::string error;               // non-empty for invalid combinations
};

// Per-run audit of every assertable bound invariant plus safety validators.
struct AuditRecord {
  long long violations = 0;
  std::vector<std::string> notes;
  double makespan_over_lower_bound = 0;  // measured / max(1, l)
};

AuditRecord audit_run(const ShardGraph& g, const std::vector<Transaction>& batch,
                      const ExecutionReport& report, SchedulerKind scheduler,
                      const std::vector<std::string>& lock_violations = {});

// One deterministic run for a single (scheduler, s, k, seed) cell.
ExecutionReport run_single(const ShardGraph& g, const std::vector<Transaction>& batch,
                           SchedulerKind scheduler, const ExperimentConfig& cfg,
                           std::vector<std::string>* lock_violations = nullptr);

// Full sweep: one row per (scheduler, s, k); deterministic in the config.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::string to_csv(const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> parse_csv(const std::string& text);  // round-trip oracle

}  // namespace shardsched
