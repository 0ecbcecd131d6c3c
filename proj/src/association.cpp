#include "udua/association.hpp"

#include <algorithm>
#include <stdexcept>

#include "udua/kuhn_munkres.hpp"

namespace udua {

RateMatrix build_rate_matrix(const UserSet& set, const Deployment& dep,
                             const GainTable& table,
                             const ChannelParams& params) {
  set.validate();
  dep.validate(set.region);
  if (!(table.region() == set.region))
    throw std::invalid_argument("rate matrix: gain table region mismatch");
  RateMatrix rm;
  rm.users = set.user_count();
  rm.uavs = dep.uav_count();
  rm.qos = params.min_rate;
  rm.rates.resize(static_cast<std::size_t>(rm.users) * rm.uavs);
  for (int i = 0; i < rm.users; ++i) {
    const GridPos& u = set.users[i];
    for (int j = 0; j < rm.uavs; ++j) {
      const GridPos& p = dep.positions[j];
      rm.rates[i * rm.uavs + j] =
          link_rate(params, table.at(u.y - p.y, u.x - p.x));
    }
  }
  return rm;
}

namespace {

void check_phi(const RateMatrix& rm, int phi) {
  if (phi < 1) throw std::invalid_argument("association: phi must be >= 1");
  if (rm.rates.size() != static_cast<std::size_t>(rm.users) * rm.uavs)
    throw std::invalid_argument("association: malformed rate matrix");
}

AssocResult infeasible(const RateMatrix& rm) {
  AssocResult r;
  r.f = infeasible_objective(rm.users, rm.qos);
  return r;
}

AssocResult feasible(const RateMatrix& rm, std::vector<int> uav_of_user) {
  Association a;
  a.uav_of_user = std::move(uav_of_user);
  for (int i = 0; i < rm.users; ++i) a.throughput += rm.at(i, a.uav_of_user[i]);
  AssocResult r;
  r.f = a.throughput;
  r.assoc = std::move(a);
  return r;
}

}  // namespace

AssocResult solve_km(const RateMatrix& rm, int phi) {
  check_phi(rm, phi);
  if (rm.users == 0) return feasible(rm, {});
  if (static_cast<long long>(rm.uavs) * phi < rm.users) return infeasible(rm);

  // min(phi, I) copies per UAV suffice: no UAV can serve more users than
  // exist. Dummy user rows (weight 0 everywhere) square the matrix.
  const int cap = std::min(phi, rm.users);
  const int n = rm.uavs * cap;
  const double w_pen = infeasible_penalty(rm.qos);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < rm.users; ++i) {
    for (int j = 0; j < rm.uavs; ++j) {
      const double rate = rm.at(i, j);
      const double weight = rate >= rm.qos ? rate : -w_pen;
      for (int c = 0; c < cap; ++c) w[i * n + j * cap + c] = weight;
    }
  }
  const std::vector<int> match = max_weight_perfect_matching(w, n);

  std::vector<int> uav_of_user(rm.users);
  for (int i = 0; i < rm.users; ++i) {
    const int j = match[i] / cap;
    if (rm.at(i, j) < rm.qos) return infeasible(rm);
    uav_of_user[i] = j;
  }
  return feasible(rm, std::move(uav_of_user));
}

AssocResult solve_greedy(const RateMatrix& rm, int phi) {
  check_phi(rm, phi);
  if (rm.users == 0) return feasible(rm, {});

  struct Link {
    double rate;
    int i, j;
  };
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(rm.users) * rm.uavs);
  for (int i = 0; i < rm.users; ++i)
    for (int j = 0; j < rm.uavs; ++j)
      if (rm.at(i, j) >= rm.qos) links.push_back({rm.at(i, j), i, j});
  std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<int> uav_of_user(rm.users, -1);
  std::vector<int> load(rm.uavs, 0);
  int assigned = 0;
  for (const Link& l : links) {
    if (uav_of_user[l.i] != -1 || load[l.j] >= phi) continue;
    uav_of_user[l.i] = l.j;
    ++load[l.j];
    ++assigned;
  }
  if (assigned < rm.users) return infeasible(rm);
  return feasible(rm, std::move(uav_of_user));
}

AssocResult brute_force_association(const RateMatrix& rm, int phi) {
  check_phi(rm, phi);
  if (rm.users > 10)
    throw std::invalid_argument(
        "brute_force_association: limited to 10 users");
  if (rm.users == 0) return feasible(rm, {});

  std::vector<int> current(rm.users, -1), best;
  std::vector<int> load(rm.uavs, 0);
  double best_sum = 0.0;
  bool found = false;

  auto dfs = [&](auto&& self, int i, double sum) -> void {
    if (i == rm.users) {
      if (!found || sum > best_sum) {
        found = true;
        best_sum = sum;
        best = current;
      }
      return;
    }
    for (int j = 0; j < rm.uavs; ++j) {
      if (load[j] >= phi || rm.at(i, j) < rm.qos) continue;
      current[i] = j;
      ++load[j];
      self(self, i + 1, sum + rm.at(i, j));
      --load[j];
      current[i] = -1;
    }
  };
  dfs(dfs, 0, 0.0);

  if (!found) return infeasible(rm);
  return feasible(rm, std::move(best));
}

bool association_is_valid(const RateMatrix& rm, int phi,
                          const Association& assoc) {
  if (static_cast<int>(assoc.uav_of_user.size()) != rm.users) return false;
  std::vector<int> load(rm.uavs, 0);
  for (int i = 0; i < rm.users; ++i) {
    const int j = assoc.uav_of_user[i];
    if (j < 0 || j >= rm.uavs) return false;
    if (rm.at(i, j) < rm.qos) return false;
    if (++load[j] > phi) return false;
  }
  return true;
}

}  // namespace udua
