// Compares the OpenMP kernels against their serial counterparts and the
// plain reference implementations, verifying agreement while timing.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "udua/channel.hpp"
#include "udua/deployment.hpp"
#include "udua/knowledge.hpp"
#include "udua/rng.hpp"
#include "udua/scenario.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    if (ms < best) best = ms;
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool agree) {
  std::printf("%-28s serial %10.2f ms   parallel %10.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  int grids = 6;
  int w = 24;
  int entries = 200000;
  int repeats = 3;
  CLI::App app{"Kernel benchmarks: serial reference vs OpenMP"};
  app.add_option("--grids", grids, "Region is grids x grids");
  app.add_option("--w", w, "Scenarios for the database build");
  app.add_option("--entries", entries, "Synthetic entries for the knn scan");
  app.add_option("--repeats", repeats, "Timing repeats (best-of)");
  CLI11_PARSE(app, argc, argv);

  udua::ChannelParams params;
  params.phi = 10;
  udua::GridRegion region{grids, grids, 30.0};
  const udua::GainTable table = udua::build_gain_table(params, region);
  std::printf("threads: %d, region: %dx%d, phi=%d, J=%d\n\n",
              omp_get_max_threads(), grids, grids, params.phi, params.j_uavs);

  std::vector<udua::UserSet> scen;
  for (int i = 0; i < w; ++i) {
    udua::ScenarioGenConfig g;
    g.gen.mu = -0.2;
    g.gen.sigma = 1.0;
    g.gen.seed = udua::rng::mix(7, i);
    g.id = "bench-" + std::to_string(i);
    scen.push_back(udua::sample_user_set(region, g, params));
  }

  // Exhaustive deployment search over one scenario.
  {
    udua::SearchResult ref, ser, par;
    const double t_ref = time_ms(
        [&] { ref = udua::reference::exhaustive_search(scen[0], table, params); },
        repeats);
    udua::ExhaustiveOptions opts;
    opts.exec = udua::Exec::serial;
    const double t_ser = time_ms(
        [&] { ser = udua::exhaustive_search(scen[0], table, params, opts); },
        repeats);
    opts.exec = udua::Exec::parallel;
    const double t_par = time_ms(
        [&] { par = udua::exhaustive_search(scen[0], table, params, opts); },
        repeats);
    const bool agree = ref.result.f == ser.result.f &&
                       ser.result.f == par.result.f &&
                       ref.deployment == ser.deployment &&
                       ser.deployment == par.deployment;
    std::printf("%-28s reference (no pruning) %10.2f ms\n",
                "exhaustive search", t_ref);
    report("exhaustive search", t_ser, t_par, agree);
  }

  // Knowledge database build across scenarios.
  {
    udua::KnowledgeDatabase ser, par;
    const double t_ser = time_ms(
        [&] {
          ser = udua::build_database(scen, table, params, 10'000'000,
                                     udua::Exec::serial);
        },
        repeats);
    const double t_par = time_ms(
        [&] {
          par = udua::build_database(scen, table, params, 10'000'000,
                                     udua::Exec::parallel);
        },
        repeats);
    bool agree = ser.entries.size() == par.entries.size();
    for (std::size_t i = 0; agree && i < ser.entries.size(); ++i)
      agree = ser.entries[i].best_f == par.entries[i].best_f &&
              ser.entries[i].deployment == par.entries[i].deployment;
    report("database build", t_ser, t_par, agree);
  }

  // Nearest-neighbor scan over a large synthetic database.
  {
    udua::KnowledgeDatabase db;
    db.region = region;
    db.params_hash = udua::channel_fingerprint(params);
    udua::rng::Engine eng(99);
    db.entries.resize(entries);
    for (auto& e : db.entries) {
      e.dist.n_y = region.n_y;
      e.dist.n_x = region.n_x;
      e.dist.counts.resize(region.cell_count());
      for (auto& c : e.dist.counts) c = static_cast<int>(eng.below(4));
      e.deployment.positions = {udua::GridPos{1, 1}, udua::GridPos{2, 2}};
    }
    const udua::DistributionMatrix probe = udua::distribution_matrix(scen[0]);
    std::vector<int> ref, ser, par;
    const double t_ref = time_ms(
        [&] { ref = udua::reference::knn_query(db, probe, 10); }, repeats);
    const double t_ser = time_ms(
        [&] { ser = udua::knn_query(db, probe, 10, udua::Exec::serial); },
        repeats);
    const double t_par = time_ms(
        [&] { par = udua::knn_query(db, probe, 10, udua::Exec::parallel); },
        repeats);
    const bool agree = ref == ser && ser == par;
    std::printf("%-28s reference (stable sort) %9.2f ms\n", "knn scan", t_ref);
    report("knn scan", t_ser, t_par, agree);
  }
  return 0;
}
