#pragma once

#include <cstdint>

#include "udua/association.hpp"
#include "udua/channel.hpp"
#include "udua/scenario.hpp"
#include "udua/types.hpp"

namespace udua {

/// Which association solver scores a deployment.
enum class InnerSolver { km, greedy };

/// A deployment together with the association outcome that scored it.
struct SearchResult {
  Deployment deployment;
  AssocResult result;
};

AssocResult evaluate_deployment(const UserSet& set, const Deployment& dep,
                                const GainTable& table,
                                const ChannelParams& params,
                                InnerSolver solver = InnerSolver::km);

struct ExhaustiveOptions {
  long long budget = 10'000'000;  // refuse above this many evaluations
  Exec exec = Exec::parallel;
  InnerSolver solver = InnerSolver::km;
};

/// Optimal deployment by scoring every candidate. The objective is
/// invariant under permuting UAVs, so only non-decreasing cell tuples are
/// evaluated; ties resolve to the lexicographically smallest tuple in
/// row-major cell order. Throws std::runtime_error when the candidate
/// count exceeds the budget.
SearchResult exhaustive_search(const UserSet& set, const GainTable& table,
                               const ChannelParams& params,
                               const ExhaustiveOptions& opts = {});

struct SAConfig {
  double initial_temperature = 0.0;  // <= 0: auto, 0.1 * eps_max * I
  double annealing_rate = 0.95;
  int iterations_per_temperature = 20;
  double min_temperature = 0.0;  // <= 0: auto, 1e-4 * initial
  std::uint64_t seed = 0;
  InnerSolver solver = InnerSolver::km;
};

/// Simulated annealing over deployments: single-UAV moves to a uniformly
/// random cell, Metropolis acceptance exp(df / T), geometric cooling.
/// Returns the best deployment ever visited (the initial one is drawn
/// exactly like random_deployment with the same seed).
SearchResult simulated_annealing(const UserSet& set, const GainTable& table,
                                 const ChannelParams& params,
                                 const SAConfig& cfg);

/// Uniformly random deployment of j UAVs (independent cells, duplicates
/// allowed).
Deployment random_deployment(const GridRegion& region, int j,
                             std::uint64_t seed);

namespace reference {

/// Serial oracle: literally scores all P^J ordered tuples with no
/// symmetry pruning. Kept for tests and benchmarks; agrees with
/// exhaustive_search on both objective and deployment.
SearchResult exhaustive_search(const UserSet& set, const GainTable& table,
                               const ChannelParams& params,
                               long long budget = 10'000'000,
                               InnerSolver solver = InnerSolver::km);

}  // namespace reference

}  // namespace udua
