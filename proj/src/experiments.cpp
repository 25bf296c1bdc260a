#include "shardsched/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shardsched/bucket_scheduler.hpp"
#include "shardsched/central_scheduler.hpp"
#include "shardsched/coloring.hpp"
#include "shardsched/commit_engine.hpp"
#include "shardsched/hierarchy.hpp"
#include "shardsched/lock_scheduler.hpp"

namespace shardsched {

std::string to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Central: return "central";
    case SchedulerKind::Bucket: return "bucket";
    case SchedulerKind::Distributed: return "distributed";
    case SchedulerKind::Lock2PL: return "lock2pl";
  }
  return "?";
}

SchedulerKind scheduler_from_string(const std::string& name) {
  if (name == "central") return SchedulerKind::Central;
  if (name == "bucket") return SchedulerKind::Bucket;
  if (name == "distributed") return SchedulerKind::Distributed;
  if (name == "lock2pl") return SchedulerKind::Lock2PL;
  throw std::invalid_argument("unknown scheduler: " + name +
                              " (expected central|bucket|distributed|lock2pl)");
}

ExecutionReport run_single(const ShardGraph& g, const std::vector<Transaction>& batch,
                           SchedulerKind scheduler, const ExperimentConfig& cfg,
                           std::vector<std::string>* lock_violations) {
  switch (scheduler) {
    case SchedulerKind::Central:
      return schedule_centralized(g, batch, {cfg.leader, cfg.global_window_distance});
    case SchedulerKind::Bucket:
      return schedule_bucketed(g, batch, {cfg.global_window_distance});
    case SchedulerKind::Distributed:
      return schedule_distributed(g, batch, {cfg.global_window_distance});
    case SchedulerKind::Lock2PL: {
      LockAudit audit;
      ExecutionReport report = schedule_lock_based(g, batch, {}, &audit);
      if (lock_violations) *lock_violations = audit.violations;
      return report;
    }
  }
  throw std::logic_error("unreachable");
}

AuditRecord audit_run(const ShardGraph& g, const std::vector<Transaction>& batch,
                      const ExecutionReport& report, SchedulerKind scheduler,
                      const std::vector<std::string>& lock_violations) {
  AuditRecord rec;
  auto flag = [&](const std::string& note) {
    rec.violations += 1;
    rec.notes.push_back(note);
  };

  const int k = max_accesses(batch);
  const int l = max_object_load(batch);
  const int d = std::max(1, max_txn_distance(g, batch));
  if (l > 0)
    rec.makespan_over_lower_bound = static_cast<double>(report.makespan) / static_cast<double>(l);

  // throughput identity
  if (!batch.empty() && report.makespan > 0) {
    const double expect = static_cast<double>(batch.size()) / static_cast<double>(report.makespan);
    if (std::abs(report.throughput - expect) > 1e-12) flag("throughput identity broken");
  }

  const bool color_scheduler = scheduler != SchedulerKind::Lock2PL;
  if (color_scheduler) {
    // Phase-2 processing-time bound 4d(kl+1) per centralized invocation
    if (scheduler == SchedulerKind::Central &&
        report.phase2_rounds > makespan_upper_bound(k, l, d))
      flag("phase-2 makespan " + std::to_string(report.phase2_rounds) + " exceeds 4d(kl+1)");
    if (scheduler == SchedulerKind::Central) {
      const ConflictGraph cg = build_conflict_graph(batch);
      if (report.colors_used > cg.max_degree() + 1) flag("greedy colors exceed max degree + 1");
      if (report.colors_used < l) flag("colors below the object-load clique bound");
    }
    for (const auto& b : report.buckets) {
      const long long cap = 4LL * (1LL << (b.index + 1)) * (static_cast<long long>(k) * b.l_i + 1);
      if (b.phase2_rounds > cap)
        flag("bucket " + std::to_string(b.index) + " phase-2 " + std::to_string(b.phase2_rounds) +
             " exceeds 4*2^{i+1}(k*l_i+1)=" + std::to_string(cap));
      if (b.xi < b.l_i) flag("bucket " + std::to_string(b.index) + " colors below l_i");
      if (g.kind() == TopologyKind::Line) {
        // schedule-length lower bound for any line schedule
        const double lower = static_cast<double>(1LL << b.index) +
                             static_cast<double>(b.l_i) * b.l_i / 8.0;
        if (static_cast<double>(b.phase1_rounds + b.phase2_rounds) < lower)
          flag("bucket " + std::to_string(b.index) + " beats the 2^i + l_i^2/8 lower bound");
      }
    }
    for (const auto& c : report.clusters) {
      const long long cap = makespan_upper_bound(c.k_max, c.l_max, std::max(1, c.d_max));
      if (c.phase2_rounds > cap)
        flag("cluster at (" + std::to_string(c.layer) + "," + std::to_string(c.sublayer) +
             ") phase-2 exceeds 4d(kl+1)");
    }
  }

  for (const auto& v : check_serializability(batch, report)) flag("serializability: " + v);
  for (const auto& v : lock_violations) flag("lock safety: " + v);

  // all-commit runs commit everything
  bool all_ok = true;
  for (const auto& t : batch) all_ok = all_ok && t.condition_ok;
  if (all_ok)
    for (const auto& [id, res] : report.per_txn)
      if (!res.committed) flag("transaction " + std::to_string(id) + " failed to commit");

  return rec;
}

namespace {

struct Series {
  std::vector<double> values;
  double mean() const {
    if (values.empty()) return 0;
    double s = 0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  double sd() const {
    if (values.size() < 2) return 0;
    const double m = mean();
    double acc = 0;
    for (double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  std::vector<ResultRow> rows;
  for (SchedulerKind scheduler : cfg.schedulers) {
    for (int s : cfg.shard_counts) {
      for (int k : cfg.k_values) {
        ResultRow row;
        row.topology = cfg.topology;
        row.s = s;
        row.k = k;
        row.access = cfg.access == AccessPattern::Random ? "random" : "nearby";
        row.scheduler = to_string(scheduler);
        row.reps = cfg.repetitions;
        row.seed = cfg.base_seed;
        try {
          const ShardGraph g = ShardGraph::parse(cfg.topology, s);
          Series throughput, latency, messages, makespan, colors, ratio;
          long long violations = 0;
          for (int rep = 0; rep < cfg.repetitions; ++rep) {
            const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(rep);
            WorkloadOptions wopts;
            wopts.abort_prob = cfg.abort_prob;
            wopts.exactly_k = cfg.exactly_k;
            const auto batch = generate(g, cfg.access, k, seed, wopts);
            std::vector<std::string> lock_violations;
            const ExecutionReport report = run_single(g, batch, scheduler, cfg, &lock_violations);
            const AuditRecord audit = audit_run(g, batch, report, scheduler, lock_violations);
            violations += audit.violations;
            throughput.values.push_back(report.throughput);
            latency.values.push_back(report.avg_latency);
            messages.values.push_back(static_cast<double>(report.messages.total()));
            makespan.values.push_back(static_cast<double>(report.makespan));
            colors.values.push_back(static_cast<double>(report.colors_used));
            ratio.values.push_back(audit.makespan_over_lower_bound);
          }
          row.mean_throughput = throughput.mean();
          row.sd_throughput = throughput.sd();
          row.mean_latency = latency.mean();
          row.sd_latency = latency.sd();
          row.mean_messages = messages.mean();
          row.sd_messages = messages.sd();
          row.mean_makespan = makespan.mean();
          row.colors_mean = colors.mean();
          row.bound_violations = violations;
          row.measured_ratio = ratio.mean();
        } catch (const std::exception& ex) {
          row.bound_violations = -1;
          row.error = ex.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string csv_header() {
  return "topology,s,k,access,scheduler,reps,seed,mean_throughput,sd_throughput,mean_latency,"
         "sd_latency,mean_messages,sd_messages,mean_makespan,colors_mean,bound_violations,"
         "measured_ratio";
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::string reason = r.error;
      std::replace(reason.begin(), reason.end(), ',', ';');
      out += r.topology + "," + std::to_string(r.s) + "," + std::to_string(r.k) + "," + r.access +
             "," + r.scheduler + "," + std::to_string(r.reps) + "," + std::to_string(r.seed) +
             ",nan,nan,nan,nan,nan,nan,nan,nan,-1,nan # " + reason + "\n";
      continue;
    }
    out += r.topology + "," + std::to_string(r.s) + "," + std::to_string(r.k) + "," + r.access +
           "," + r.scheduler + "," + std::to_string(r.reps) + "," + std::to_string(r.seed) + "," +
           fmt(r.mean_throughput) + "," + fmt(r.sd_throughput) + "," + fmt(r.mean_latency) + "," +
           fmt(r.sd_latency) + "," + fmt(r.mean_messages) + "," + fmt(r.sd_messages) + "," +
           fmt(r.mean_makespan) + "," + fmt(r.colors_mean) + "," +
           std::to_string(r.bound_violations) + "," + fmt(r.measured_ratio) + "\n";
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("refusing to emit an empty CSV");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV to " + path);
  out << to_csv(rows);
  if (!out) throw std::runtime_error("short write to " + path);
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (line != csv_header()) throw std::invalid_argument("unexpected CSV header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto hash = line.find(" # ");
    std::string error;
    if (hash != std::string::npos) {
      error = line.substr(hash + 3);
      line = line.substr(0, hash);
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 17) throw std::invalid_argument("bad CSV row: " + line);
    ResultRow r;
    r.topology = cells[0];
    r.s = std::stoi(cells[1]);
    r.k = std::stoi(cells[2]);
    r.access = cells[3];
    r.scheduler = cells[4];
    r.reps = std::stoi(cells[5]);
    r.seed = std::stoull(cells[6]);
    r.error = error;
    r.bound_violations = std::stoll(cells[15]);
    if (error.empty()) {
      r.mean_throughput = std::stod(cells[7]);
      r.sd_throughput = std::stod(cells[8]);
      r.mean_latency = std::stod(cells[9]);
      r.sd_latency = std::stod(cells[10]);
      r.mean_messages = std::stod(cells[11]);
      r.sd_messages = std::stod(cells[12]);
      r.mean_makespan = std::stod(cells[13]);
      r.colors_mean = std::stod(cells[14]);
      r.measured_ratio = std::stod(cells[16]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace shardsched
