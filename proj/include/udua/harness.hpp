#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "udua/channel.hpp"
#include "udua/config.hpp"
#include "udua/deployment.hpp"
#include "udua/knowledge.hpp"
#include "udua/types.hpp"

namespace udua {

/// One benchmark method column. `knn(w,k)` carries its database size and
/// neighbor count; the other kinds ignore w/k.
struct MethodSpec {
  enum class Kind { to, knn, sa_km, sa_greedy, rand_greedy };
  Kind kind = Kind::to;
  int w = 0;
  int k = 0;

  std::string name() const;
  static MethodSpec parse(const std::string& text);
};

struct ExperimentConfig {
  GridRegion region;
  ChannelParams params;
  std::vector<MethodSpec> methods;
  std::vector<double> mus{-1.0, -0.6, -0.2};
  std::vector<double> sigmas{0.2, 0.6, 1.0};
  int n_test = 20;
  std::uint64_t seed = 1;
  int max_resamples = 10000;
  long long exhaustive_budget = 10'000'000;
  SAConfig sa;              // per-run seed is derived, not taken from here
  std::string kb_path;      // optional pre-built knowledge database
  bool timing = false;      // serial execution for honest per-solve times
};

/// Keys on top of the channel/region ones: methods, mu, sigma, n_test,
/// seed, max_resamples, exhaustive_budget, kb (path), sa_initial_temperature,
/// sa_annealing_rate, sa_iterations_per_temperature, sa_min_temperature.
ExperimentConfig experiment_from_config(const Config& c);

struct RunRecord {
  std::string method;
  double mu = 0.0;
  double sigma = 0.0;
  int test = 0;
  int users = 0;
  double f = 0.0;
  bool feasible = false;
  double time_ms = 0.0;
  std::uint64_t scenario_seed = 0;
};

/// Aggregates per (method, mu, sigma) cell. Mean throughput is over the
/// successful runs only (0 when every run failed); mean time is over all
/// runs; failure_rate = n_fail / n_runs.
struct CellMetrics {
  std::string method;
  double mu = 0.0;
  double sigma = 0.0;
  double mean_throughput_bps = 0.0;
  double failure_rate = 0.0;
  double mean_time_ms = 0.0;
  int n_runs = 0;
  int n_fail = 0;
};

struct Metrics {
  std::vector<RunRecord> runs;
  std::vector<CellMetrics> cells;
};

/// Run every method on the same generated test scenarios (shared per-run
/// seeds; the annealing and random baselines also share their draw seed so
/// annealing starts from the random baseline's deployment). Wall time is
/// measured around each online solve only; database construction is
/// excluded.
Metrics run_experiment(const ExperimentConfig& cfg);

/// Writes results.csv, results.json, and runs.jsonl into out_dir
/// (creating it). Output order is fixed, so bytes are reproducible except
/// for the time fields.
void emit_results(const Metrics& m, const std::string& out_dir);

}  // namespace udua
