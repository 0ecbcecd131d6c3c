#include "udua/knowledge.hpp"

#include <omp.h>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace udua {
namespace {

using nlohmann::json;

void check_dims(const DistributionMatrix& d1, const DistributionMatrix& d2) {
  if (d1.n_y != d2.n_y || d1.n_x != d2.n_x)
    throw std::invalid_argument("difference_degree: dimension mismatch");
}

}  // namespace

DifferenceDegree difference_degree(const DistributionMatrix& d1,
                                   const DistributionMatrix& d2) {
  check_dims(d1, d2);
  long long pos = 0, neg = 0;
  for (std::size_t k = 0; k < d1.counts.size(); ++k) {
    const long long diff =
        static_cast<long long>(d1.counts[k]) - d2.counts[k];
    if (diff > 0)
      pos += diff;
    else
      neg -= diff;
  }
  DifferenceDegree dd;
  dd.m = std::llabs(pos - neg);
  dd.n = std::min(pos, neg);
  dd.gamma = dd.m + 2 * dd.n;
  return dd;
}

std::string channel_fingerprint(const ChannelParams& p) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|"
                "%.17g|%.17g|%d|%d",
                p.a, p.b, p.carrier_hz, p.light_speed, p.pathloss_exp,
                p.excess_los_db, p.excess_nlos_db, p.altitude, p.tx_power,
                p.noise_power, p.bandwidth, p.min_rate, p.phi, p.j_uavs);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* c = buf; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016" PRIx64, h);
  return hex;
}

KnowledgeDatabase build_database(const std::vector<UserSet>& scenarios,
                                 const GainTable& table,
                                 const ChannelParams& params,
                                 long long budget, Exec exec) {
  if (scenarios.empty())
    throw std::invalid_argument("build_database: need at least one scenario");
  params.validate();
  for (const auto& s : scenarios)
    if (!(s.region == table.region()))
      throw std::invalid_argument("build_database: scenario region mismatch");

  const int w = static_cast<int>(scenarios.size());
  std::vector<KnowledgeEntry> slots(w);
  std::vector<char> ok(w, 0);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (int i = 0; i < w; ++i) {
    ExhaustiveOptions opts;
    opts.budget = budget;
    opts.exec = Exec::serial;  // parallelism lives on the scenario loop
    const SearchResult sr = exhaustive_search(scenarios[i], table, params, opts);
    if (!sr.result.feasible()) continue;
    KnowledgeEntry e;
    e.dist = distribution_matrix(scenarios[i]);
    e.deployment = sr.deployment;
    e.best_f = sr.result.f;
    e.scenario_id = scenarios[i].id;
    e.seed = scenarios[i].gen ? scenarios[i].gen->seed : 0;
    slots[i] = std::move(e);
    ok[i] = 1;
  }

  KnowledgeDatabase db;
  db.region = table.region();
  db.params_hash = channel_fingerprint(params);
  for (int i = 0; i < w; ++i) {
    if (!ok[i]) {
      std::fprintf(stderr,
                   "build_database: scenario %s has no feasible deployment, "
                   "skipping\n",
                   scenarios[i].id.c_str());
      continue;
    }
    db.entries.push_back(std::move(slots[i]));
  }
  return db;
}

std::vector<int> knn_query(const KnowledgeDatabase& db,
                           const DistributionMatrix& d, int k, Exec exec) {
  if (k < 1) throw std::invalid_argument("knn_query: k must be >= 1");
  const int w = static_cast<int>(db.entries.size());
  // Validate up front so the parallel loop below cannot throw. Entries are
  // dimension-checked against the database region on construction and load.
  for (const auto& e : db.entries) check_dims(e.dist, d);

  // Gamma equals the elementwise L1 distance (|sum(diff)| + 2 min(pos, neg)
  // == pos + neg), which accumulates branch-free.
  std::vector<long long> gamma(w);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < w; ++i) {
    const std::vector<int>& e = db.entries[i].dist.counts;
    long long l1 = 0;
    for (std::size_t c = 0; c < e.size(); ++c)
      l1 += std::llabs(static_cast<long long>(e[c]) - d.counts[c]);
    gamma[i] = l1;
  }

  std::vector<int> idx(w);
  std::iota(idx.begin(), idx.end(), 0);
  const auto mid = idx.begin() + std::min(k, w);
  std::partial_sort(idx.begin(), mid, idx.end(), [&](int a, int b) {
    if (gamma[a] != gamma[b]) return gamma[a] < gamma[b];
    return a < b;  // insertion order; makes top-k lists prefix-stable
  });
  idx.resize(std::min(k, w));
  return idx;
}

OnlineResult solve_online(const KnowledgeDatabase& db, const UserSet& set,
                          int k, const GainTable& table,
                          const ChannelParams& params, Exec exec) {
  set.validate();
  if (!(db.region == set.region))
    throw std::invalid_argument("solve_online: database region mismatch");
  if (db.params_hash != channel_fingerprint(params))
    throw std::invalid_argument("solve_online: database fingerprint mismatch");

  const DistributionMatrix d = distribution_matrix(set);
  const std::vector<int> nearest = knn_query(db, d, k, exec);

  OnlineResult out;
  out.result.f = infeasible_objective(set.user_count(), params.min_rate);
  for (int idx : nearest) {
    const Deployment& dep = db.entries[idx].deployment;
    const RateMatrix rm = build_rate_matrix(set, dep, table, params);
    AssocResult res = solve_km(rm, params.phi);
    if (!res.feasible()) continue;
    if (!out.feasible || res.f > out.result.f) {
      out.feasible = true;
      out.entry_index = idx;
      out.deployment = dep;
      out.result = std::move(res);
    }
  }
  return out;
}

namespace {

json dist_to_json(const DistributionMatrix& d) {
  return json(d.counts);
}

json entry_to_json(const KnowledgeEntry& e) {
  json dep = json::array();
  for (const auto& p : e.deployment.positions)
    dep.push_back(json::array({p.x, p.y}));
  return json{{"dist", dist_to_json(e.dist)},
              {"deployment", dep},
              {"best_f", e.best_f},
              {"provenance", json{{"id", e.scenario_id}, {"seed", e.seed}}}};
}

KnowledgeEntry entry_from_json(const json& j, const GridRegion& region) {
  KnowledgeEntry e;
  e.dist.n_y = region.n_y;
  e.dist.n_x = region.n_x;
  e.dist.counts = j.at("dist").get<std::vector<int>>();
  if (e.dist.counts.size() !=
      static_cast<std::size_t>(region.n_y) * region.n_x)
    throw std::invalid_argument("knowledge: entry distribution size mismatch");
  for (const auto& p : j.at("deployment"))
    e.deployment.positions.push_back(GridPos{p[0].get<int>(), p[1].get<int>()});
  e.deployment.validate(region);
  e.best_f = j.at("best_f").get<double>();
  if (j.contains("provenance")) {
    e.scenario_id = j["provenance"].value("id", std::string{});
    e.seed = j["provenance"].value("seed", std::uint64_t{0});
  }
  return e;
}

}  // namespace

void save_database(const std::string& path, const KnowledgeDatabase& db) {
  json j;
  j["format"] = "udua-kb-v1";
  j["fingerprint"] = json{{"n_y", db.region.n_y},
                          {"n_x", db.region.n_x},
                          {"delta_d", db.region.delta_d},
                          {"params_hash", db.params_hash}};
  json entries = json::array();
  for (const auto& e : db.entries) entries.push_back(entry_to_json(e));
  j["entries"] = entries;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path);
  if (!f) throw std::runtime_error("knowledge: cannot open for write: " + path);
  f << j.dump(2) << '\n';
}

KnowledgeDatabase load_database(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("knowledge: cannot open for read: " + path);
  json j = json::parse(f);
  if (j.value("format", std::string{}) != "udua-kb-v1")
    throw std::invalid_argument("knowledge: unrecognized database format");
  KnowledgeDatabase db;
  const json& fp = j.at("fingerprint");
  db.region.n_y = fp.at("n_y").get<int>();
  db.region.n_x = fp.at("n_x").get<int>();
  db.region.delta_d = fp.at("delta_d").get<double>();
  db.region.validate();
  db.params_hash = fp.at("params_hash").get<std::string>();
  for (const auto& e : j.at("entries"))
    db.entries.push_back(entry_from_json(e, db.region));
  return db;
}

namespace reference {

std::vector<int> knn_query(const KnowledgeDatabase& db,
                           const DistributionMatrix& d, int k) {
  if (k < 1) throw std::invalid_argument("knn_query: k must be >= 1");
  const int w = static_cast<int>(db.entries.size());
  // Gamma equals the elementwise L1 distance: |sum(diff)| + 2 * min(pos,
  // neg) == pos + neg.
  std::vector<long long> l1(w, 0);
  for (int i = 0; i < w; ++i) {
    const DistributionMatrix& e = db.entries[i].dist;
    check_dims(e, d);
    for (std::size_t c = 0; c < e.counts.size(); ++c)
      l1[i] += std::llabs(static_cast<long long>(e.counts[c]) - d.counts[c]);
  }
  std::vector<int> idx(w);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return l1[a] < l1[b]; });
  idx.resize(std::min(k, w));
  return idx;
}

KnowledgeDatabase build_database(const std::vector<UserSet>& scenarios,
                                 const GainTable& table,
                                 const ChannelParams& params,
                                 long long budget) {
  if (scenarios.empty())
    throw std::invalid_argument("build_database: need at least one scenario");
  KnowledgeDatabase db;
  db.region = table.region();
  db.params_hash = channel_fingerprint(params);
  for (const auto& s : scenarios) {
    const SearchResult sr =
        reference::exhaustive_search(s, table, params, budget);
    if (!sr.result.feasible()) {
      std::fprintf(stderr,
                   "build_database: scenario %s has no feasible deployment, "
                   "skipping\n",
                   s.id.c_str());
      continue;
    }
    KnowledgeEntry e;
    e.dist = distribution_matrix(s);
    e.deployment = sr.deployment;
    e.best_f = sr.result.f;
    e.scenario_id = s.id;
    e.seed = s.gen ? s.gen->seed : 0;
    db.entries.push_back(std::move(e));
  }
  return db;
}

}  // namespace reference

}  // namespace udua
