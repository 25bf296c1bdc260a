// shardsim: batch transaction scheduling experiments on sharded topologies.
//
//   shardsim --topology clique --shards 16,32,64,128 --k 2,4,8 \
//            --access random --scheduler central,lock2pl --reps 10 --seed 1 \
//            --out results.csv
//
// Exits nonzero iff any run violated a hard invariant (bound audits,
// serializability, lock safety).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shardsched/experiments.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated integer list");
  return out;
}

void apply_config_file(const std::string& path, shardsched::ExperimentConfig& cfg,
                       std::string& schedulers, std::string& shards, std::string& ks,
                       std::string& access) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("topology")) cfg.topology = j["topology"].get<std::string>();
  if (j.contains("shards")) {
    shards.clear();
    for (const auto& v : j["shards"]) shards += (shards.empty() ? "" : ",") + std::to_string(v.get<int>());
  }
  if (j.contains("k")) {
    ks.clear();
    for (const auto& v : j["k"]) ks += (ks.empty() ? "" : ",") + std::to_string(v.get<int>());
  }
  if (j.contains("access")) access = j["access"].get<std::string>();
  if (j.contains("scheduler")) {
    if (j["scheduler"].is_array()) {
      schedulers.clear();
      for (const auto& v : j["scheduler"])
        schedulers += (schedulers.empty() ? "" : ",") + v.get<std::string>();
    } else {
      schedulers = j["scheduler"].get<std::string>();
    }
  }
  if (j.contains("reps")) cfg.repetitions = j["reps"].get<int>();
  if (j.contains("seed")) cfg.base_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("leader")) cfg.leader = j["leader"].get<int>();
  if (j.contains("abort_prob")) cfg.abort_prob = j["abort_prob"].get<double>();
  if (j.contains("exactly_k")) cfg.exactly_k = j["exactly_k"].get<bool>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"round-synchronous transaction scheduling simulator for blockchain sharding"};

  shardsched::ExperimentConfig cfg;
  std::string shards = "16,32,64,128";
  std::string ks = "2,4,8";
  std::string access = "random";
  std::string schedulers = "central";
  std::string out_path;
  std::string config_path;
  bool audit_details = false;

  app.add_option("--config", config_path, "JSON config file; CLI flags override its values");
  app.add_option("--topology", cfg.topology, "clique|line|hypercube|grid:<d1>x<d2>[x...]");
  app.add_option("--shards", shards, "comma-separated shard counts");
  app.add_option("--k", ks, "comma-separated max accesses per transaction");
  app.add_option("--access", access, "random|nearby");
  app.add_option("--scheduler", schedulers, "comma-separated: central|bucket|distributed|lock2pl");
  app.add_option("--reps", cfg.repetitions, "repetitions per configuration");
  app.add_option("--seed", cfg.base_seed, "base seed; rep r uses seed+r");
  app.add_option("--leader", cfg.leader, "leader shard for the centralized scheduler");
  app.add_option("--abort-prob", cfg.abort_prob, "per-transaction condition failure probability");
  app.add_flag("--exactly-k", cfg.exactly_k, "draw exactly k accesses instead of uniform 1..k");
  app.add_option("--out", out_path, "write CSV here instead of stdout");
  app.add_flag("--audit", audit_details, "print per-row audit outcome to stderr");

  // parse config file first so explicit flags win
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--config" && i + 1 < argc) {
      try {
        apply_config_file(argv[i + 1], cfg, schedulers, shards, ks, access);
      } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
      }
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.shard_counts = parse_int_list(shards);
    cfg.k_values = parse_int_list(ks);
    if (access == "random") {
      cfg.access = shardsched::AccessPattern::Random;
    } else if (access == "nearby") {
      cfg.access = shardsched::AccessPattern::Nearby;
    } else {
      throw std::invalid_argument("unknown access pattern: " + access);
    }
    cfg.schedulers.clear();
    std::istringstream in(schedulers);
    std::string tok;
    while (std::getline(in, tok, ','))
      cfg.schedulers.push_back(shardsched::scheduler_from_string(tok));
    if (cfg.schedulers.empty()) throw std::invalid_argument("no scheduler given");

    const auto rows = shardsched::run_experiment(cfg);
    if (out_path.empty()) {
      std::cout << shardsched::to_csv(rows);
    } else {
      shardsched::emit_csv(rows, out_path);
    }

    int exit_code = 0;
    for (const auto& row : rows) {
      if (!row.error.empty()) {
        std::cerr << "skipped " << row.scheduler << " s=" << row.s << " k=" << row.k << ": "
                  << row.error << "\n";
      } else if (row.bound_violations > 0) {
        std::cerr << "AUDIT FAILURE: " << row.scheduler << " s=" << row.s << " k=" << row.k << ": "
                  << row.bound_violations << " violation(s)\n";
        exit_code = 1;
      } else if (audit_details) {
        std::cerr << "audit ok: " << row.scheduler << " s=" << row.s << " k=" << row.k
                  << " ratio=" << row.measured_ratio << "\n";
      }
    }
    return exit_code;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
