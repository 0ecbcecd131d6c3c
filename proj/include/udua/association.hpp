#pragma once

#include <optional>
#include <vector>

#include "udua/channel.hpp"
#include "udua/scenario.hpp"
#include "udua/types.hpp"

namespace udua {

/// Per-link achievable rates for one (user set, deployment) pair, row-major
/// users x UAVs, plus the QoS threshold the association must meet.
struct RateMatrix {
  int users = 0;
  int uavs = 0;
  std::vector<double> rates;
  double qos = 0.0;

  double at(int i, int j) const { return rates[i * uavs + j]; }
};

/// A complete user association: uav_of_user[i] is the serving UAV index.
struct Association {
  std::vector<int> uav_of_user;
  double throughput = 0.0;
};

/// Solver outcome. When no association satisfies capacity and QoS, `assoc`
/// is empty and `f` carries the sentinel -I * W_pen, which loses every
/// comparison against a feasible objective.
struct AssocResult {
  std::optional<Association> assoc;
  double f = 0.0;

  bool feasible() const { return assoc.has_value(); }
};

/// Penalty weight W_pen used for QoS-violating links in the matching
/// reduction; large enough to dominate any feasible throughput sum.
inline double infeasible_penalty(double qos) { return 1e6 * qos; }

/// Sentinel objective for an infeasible instance with `users` users.
inline double infeasible_objective(int users, double qos) {
  return -static_cast<double>(users) * infeasible_penalty(qos);
}

RateMatrix build_rate_matrix(const UserSet& set, const Deployment& dep,
                             const GainTable& table,
                             const ChannelParams& params);

/// Optimal association via node-splitting: each UAV becomes min(phi, I)
/// capacity copies, users are padded with zero-weight dummy rows to a
/// square matrix, QoS-violating links get weight -W_pen, and a
/// maximum-weight perfect matching is extracted. Infeasible iff the
/// matching uses a penalty edge (or I exceeds total capacity J * phi).
AssocResult solve_km(const RateMatrix& rm, int phi);

/// Baseline: scan links by descending rate (ties toward lower user, then
/// lower UAV index) and greedily assign unserved users to UAVs with spare
/// capacity; QoS-violating links are never used. Infeasible if any user
/// remains unserved.
AssocResult solve_greedy(const RateMatrix& rm, int phi);

/// Exhaustive oracle over all J^I assignments (guarded to I <= 10).
AssocResult brute_force_association(const RateMatrix& rm, int phi);

/// Checks sizes, UAV index range, per-UAV capacity, and per-link QoS.
bool association_is_valid(const RateMatrix& rm, int phi,
                          const Association& assoc);

}  // namespace udua
