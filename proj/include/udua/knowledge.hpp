#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "udua/association.hpp"
#include "udua/channel.hpp"
#include "udua/deployment.hpp"
#include "udua/scenario.hpp"
#include "udua/types.hpp"

namespace udua {

/// Similarity of two user distributions. With D_diff = D_1 - D_2:
///   m = |sum of D_diff|, n = min(sum of positives, sum of |negatives|),
///   Gamma = m + 2n  (smaller means more alike).
struct DifferenceDegree {
  long long m = 0;
  long long n = 0;
  long long gamma = 0;
};

DifferenceDegree difference_degree(const DistributionMatrix& d1,
                                   const DistributionMatrix& d2);

/// One knowledge-database record: a historical user distribution, the
/// offline-optimal deployment found for it, and provenance of the source
/// scenario.
struct KnowledgeEntry {
  DistributionMatrix dist;
  Deployment deployment;
  double best_f = 0.0;
  std::string scenario_id;
  std::uint64_t seed = 0;
};

struct KnowledgeDatabase {
  GridRegion region;
  std::string params_hash;  // channel_fingerprint of the build parameters
  std::vector<KnowledgeEntry> entries;
};

/// Hex FNV-1a digest of the channel parameters; queries against a database
/// built under different radio constants are rejected.
std::string channel_fingerprint(const ChannelParams& params);

/// Offline phase: solve every scenario exhaustively (optimal association
/// via the matching solver) and record the winning deployments. Scenarios
/// whose optimum is infeasible are skipped with a warning on stderr.
KnowledgeDatabase build_database(const std::vector<UserSet>& scenarios,
                                 const GainTable& table,
                                 const ChannelParams& params,
                                 long long budget = 10'000'000,
                                 Exec exec = Exec::parallel);

/// Indices of the k entries most similar to `d` (smallest Gamma, ties by
/// insertion order, so the top-k lists for growing k are prefixes of each
/// other). k is clamped to the database size.
std::vector<int> knn_query(const KnowledgeDatabase& db,
                           const DistributionMatrix& d, int k,
                           Exec exec = Exec::parallel);

struct OnlineResult {
  bool feasible = false;
  int entry_index = -1;  // winning database entry, -1 on failure
  Deployment deployment;
  AssocResult result;
};

/// Online phase: fetch the k nearest historical distributions, re-solve
/// the association for each stored deployment on the new user set, and
/// keep the best feasible outcome. Fails iff all k candidates are
/// infeasible.
OnlineResult solve_online(const KnowledgeDatabase& db, const UserSet& set,
                          int k, const GainTable& table,
                          const ChannelParams& params,
                          Exec exec = Exec::serial);

void save_database(const std::string& path, const KnowledgeDatabase& db);
KnowledgeDatabase load_database(const std::string& path);

namespace reference {

/// Serial k-nearest scan via a stable sort on the L1 distance between
/// distributions (an equivalent formulation of Gamma). Kept for tests and
/// benchmarks.
std::vector<int> knn_query(const KnowledgeDatabase& db,
                           const DistributionMatrix& d, int k);

/// Serial database build on top of the reference exhaustive search.
KnowledgeDatabase build_database(const std::vector<UserSet>& scenarios,
                                 const GainTable& table,
                                 const ChannelParams& params,
                                 long long budget = 10'000'000);

}  // namespace reference

}  // namespace udua
