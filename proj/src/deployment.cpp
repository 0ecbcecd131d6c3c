#include "udua/deployment.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "udua/rng.hpp"

namespace udua {
namespace {

AssocResult solve_with(const RateMatrix& rm, int phi, InnerSolver solver) {
  return solver == InnerSolver::km ? solve_km(rm, phi) : solve_greedy(rm, phi);
}

Deployment deployment_from_cells(const GridRegion& region,
                                 const std::vector<int>& cells) {
  Deployment d;
  d.positions.reserve(cells.size());
  for (int c : cells) d.positions.push_back(cell_at(region, c));
  return d;
}

struct Candidate {
  double f = 0.0;
  std::vector<int> cells;
  AssocResult result;
  bool valid = false;
};

// Strict weak order: higher objective first, then the lexicographically
// smaller cell tuple. Unique per candidate, so reductions are
// schedule-independent.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.f != b.f) return a.f > b.f;
  return a.cells < b.cells;
}

long long count_sorted_tuples(long long p, int j) {
  // C(p + j - 1, j), saturating at LLONG_MAX via a double overflow guard.
  double est = 1.0;
  long long exact = 1;
  for (int t = 1; t <= j; ++t) {
    est = est * static_cast<double>(p + t - 1) / t;
    if (est > 9e18) return (1LL << 62);
    exact = exact * (p + t - 1) / t;
  }
  return exact;
}

Deployment draw_deployment(const GridRegion& region, int j, rng::Engine& eng) {
  const std::uint64_t p = static_cast<std::uint64_t>(region.cell_count());
  std::vector<int> cells(j);
  for (int t = 0; t < j; ++t) cells[t] = static_cast<int>(eng.below(p));
  return deployment_from_cells(region, cells);
}

}  // namespace

AssocResult evaluate_deployment(const UserSet& set, const Deployment& dep,
                                const GainTable& table,
                                const ChannelParams& params,
                                InnerSolver solver) {
  const RateMatrix rm = build_rate_matrix(set, dep, table, params);
  return solve_with(rm, params.phi, solver);
}

SearchResult exhaustive_search(const UserSet& set, const GainTable& table,
                               const ChannelParams& params,
                               const ExhaustiveOptions& opts) {
  set.validate();
  params.validate();
  const GridRegion& region = set.region;
  const int p = region.cell_count();
  const int j = params.j_uavs;
  const long long required = count_sorted_tuples(p, j);
  if (required > opts.budget)
    throw std::runtime_error("exhaustive_search: " + std::to_string(required) +
                             " evaluations exceed budget " +
                             std::to_string(opts.budget));

  std::vector<Candidate> bests(omp_get_max_threads());
  const bool par = opts.exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (int c0 = 0; c0 < p; ++c0) {
    Candidate& local = bests[omp_get_thread_num()];
    std::vector<int> cells(j, c0);
    // Odometer over non-decreasing tuples with the first cell fixed.
    while (true) {
      const Deployment dep = deployment_from_cells(region, cells);
      const RateMatrix rm = build_rate_matrix(set, dep, table, params);
      Candidate cand{0.0, cells, solve_with(rm, params.phi, opts.solver), true};
      cand.f = cand.result.f;
      if (better(cand, local)) local = std::move(cand);
      int k = j - 1;
      while (k >= 1 && cells[k] == p - 1) --k;
      if (k < 1) break;
      ++cells[k];
      for (int m = k + 1; m < j; ++m) cells[m] = cells[k];
    }
  }

  Candidate best;
  for (Candidate& c : bests)
    if (better(c, best)) best = std::move(c);
  return SearchResult{deployment_from_cells(region, best.cells),
                      std::move(best.result)};
}

SearchResult simulated_annealing(const UserSet& set, const GainTable& table,
                                 const ChannelParams& params,
                                 const SAConfig& cfg) {
  set.validate();
  params.validate();
  if (!(cfg.annealing_rate > 0.0 && cfg.annealing_rate < 1.0))
    throw std::invalid_argument("sa: annealing rate must be in (0, 1)");
  if (cfg.iterations_per_temperature < 1)
    throw std::invalid_argument("sa: iterations per temperature must be >= 1");

  const GridRegion& region = set.region;
  const std::uint64_t p = static_cast<std::uint64_t>(region.cell_count());
  const int j = params.j_uavs;

  double t0 = cfg.initial_temperature;
  if (t0 <= 0.0) {
    const SystemBounds b = system_bounds(params, region);
    t0 = 0.1 * b.eps_max * std::max(set.user_count(), 1);
  }
  const double t_min =
      cfg.min_temperature > 0.0 ? cfg.min_temperature : 1e-4 * t0;

  rng::Engine eng(cfg.seed);
  Deployment cur = draw_deployment(region, j, eng);
  AssocResult cur_res = evaluate_deployment(set, cur, table, params, cfg.solver);
  Deployment best = cur;
  AssocResult best_res = cur_res;

  for (double t = t0; t >= t_min; t *= cfg.annealing_rate) {
    for (int it = 0; it < cfg.iterations_per_temperature; ++it) {
      Deployment cand = cur;
      const int u = static_cast<int>(eng.below(static_cast<std::uint64_t>(j)));
      cand.positions[u] = cell_at(region, static_cast<int>(eng.below(p)));
      AssocResult cand_res =
          evaluate_deployment(set, cand, table, params, cfg.solver);
      const double df = cand_res.f - cur_res.f;
      if (df >= 0.0 || eng.unit() < std::exp(df / t)) {
        cur = std::move(cand);
        cur_res = std::move(cand_res);
        if (cur_res.f > best_res.f) {
          best = cur;
          best_res = cur_res;
        }
      }
    }
  }
  return SearchResult{std::move(best), std::move(best_res)};
}

Deployment random_deployment(const GridRegion& region, int j,
                             std::uint64_t seed) {
  region.validate();
  if (j < 1) throw std::invalid_argument("random_deployment: j must be >= 1");
  rng::Engine eng(seed);
  return draw_deployment(region, j, eng);
}

namespace reference {

SearchResult exhaustive_search(const UserSet& set, const GainTable& table,
                               const ChannelParams& params, long long budget,
                               InnerSolver solver) {
  set.validate();
  params.validate();
  const GridRegion& region = set.region;
  const int p = region.cell_count();
  const int j = params.j_uavs;
  double est = 1.0;
  for (int t = 0; t < j; ++t) est *= p;
  if (est > static_cast<double>(budget))
    throw std::runtime_error("exhaustive_search: " +
                             std::to_string(static_cast<long long>(est)) +
                             " evaluations exceed budget " +
                             std::to_string(budget));

  std::vector<int> cells(j, 0);
  Candidate best;
  while (true) {
    const Deployment dep = deployment_from_cells(region, cells);
    const RateMatrix rm = build_rate_matrix(set, dep, table, params);
    AssocResult res = solve_with(rm, params.phi, solver);
    // Strictly-greater keeps the first maximizer in enumeration order: the
    // lexicographically smallest ordered tuple, which is non-decreasing
    // because the objective ignores UAV order.
    if (!best.valid || res.f > best.f) {
      best = Candidate{res.f, cells, std::move(res), true};
    }
    int k = j - 1;
    while (k >= 0 && cells[k] == p - 1) --k;
    if (k < 0) break;
    ++cells[k];
    for (int m = k + 1; m < j; ++m) cells[m] = 0;
  }
  return SearchResult{deployment_from_cells(region, best.cells),
                      std::move(best.result)};
}

}  // namespace reference

}  // namespace udua
