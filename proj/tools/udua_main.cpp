// Command-line front end: scenario generation, association oracle, single
// solves, knowledge-database construction, and the benchmark harness.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "udua/association.hpp"
#include "udua/channel.hpp"
#include "udua/config.hpp"
#include "udua/deployment.hpp"
#include "udua/harness.hpp"
#include "udua/knowledge.hpp"
#include "udua/rng.hpp"
#include "udua/scenario.hpp"

namespace {

using nlohmann::json;

udua::Config load_config(const std::string& path) {
  return path.empty() ? udua::Config::from_string("")
                      : udua::Config::from_file(path);
}

udua::UserSet pick_scenario(const std::string& path, std::size_t index) {
  const auto sets = udua::load_user_sets(path);
  if (index >= sets.size())
    throw std::runtime_error("scenario index " + std::to_string(index) +
                             " out of range (file has " +
                             std::to_string(sets.size()) + ")");
  return sets[index];
}

udua::Deployment parse_deployment(const std::string& spec,
                                  const udua::GridRegion& region) {
  json j;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream f(spec.substr(1));
    if (!f) throw std::runtime_error("cannot open deployment file: " + spec);
    j = json::parse(f);
    if (j.is_object() && j.contains("deployment")) j = j["deployment"];
  } else {
    j = json::parse(spec);
  }
  udua::Deployment d;
  for (const auto& p : j)
    d.positions.push_back(udua::GridPos{p[0].get<int>(), p[1].get<int>()});
  d.validate(region);
  return d;
}

json association_json(const udua::AssocResult& r) {
  if (!r.feasible()) return nullptr;
  return json(r.assoc->uav_of_user);
}

json deployment_json(const udua::Deployment& d) {
  json out = json::array();
  for (const auto& p : d.positions) out.push_back(json::array({p.x, p.y}));
  return out;
}

void write_or_print(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open for write: " + out);
    f << j.dump(2) << '\n';
  }
}

int cmd_gen(const std::string& cfg_path, double mu, double sigma, int count,
            std::uint64_t seed, const std::string& prefix,
            const std::string& out) {
  const udua::Config cfg = load_config(cfg_path);
  const udua::GridRegion region = udua::region_from_config(cfg);
  const udua::ChannelParams params = udua::channel_params_from_config(cfg);
  const int max_resamples = cfg.get_int("max_resamples", 10000);
  std::vector<udua::UserSet> sets;
  for (int i = 0; i < count; ++i) {
    udua::ScenarioGenConfig g;
    g.gen.mu = mu;
    g.gen.sigma = sigma;
    g.gen.seed = count == 1 ? seed : udua::rng::mix(seed, i);
    g.max_resamples = max_resamples;
    char id[64];
    std::snprintf(id, sizeof(id), "%s-%04d", prefix.c_str(), i);
    g.id = id;
    sets.push_back(udua::sample_user_set(region, g, params));
  }
  udua::save_user_sets(out, sets);
  std::cout << "wrote " << sets.size() << " scenario(s) to " << out << '\n';
  return 0;
}

int cmd_oracle(const std::string& cfg_path, const std::string& scenario,
               std::size_t index, const std::string& dep_spec,
               const std::string& solver) {
  const udua::Config cfg = load_config(cfg_path);
  const udua::ChannelParams params = udua::channel_params_from_config(cfg);
  const udua::UserSet set = pick_scenario(scenario, index);
  const udua::Deployment dep = parse_deployment(dep_spec, set.region);
  const udua::GainTable table = udua::build_gain_table(params, set.region);
  const udua::RateMatrix rm = udua::build_rate_matrix(set, dep, table, params);

  udua::AssocResult res;
  if (solver == "km")
    res = udua::solve_km(rm, params.phi);
  else if (solver == "greedy")
    res = udua::solve_greedy(rm, params.phi);
  else if (solver == "brute")
    res = udua::brute_force_association(rm, params.phi);
  else
    throw std::runtime_error("unknown solver: " + solver);

  write_or_print(json{{"solver", solver},
                      {"scenario_id", set.id},
                      {"users", set.user_count()},
                      {"f", res.f},
                      {"feasible", res.feasible()},
                      {"association", association_json(res)}},
                 "");
  return 0;
}

int cmd_solve(const std::string& cfg_path, const std::string& method,
              const std::string& scenario, std::size_t index,
              const std::string& out, const std::string& kb_path, int k,
              std::uint64_t seed, const std::string& inner, long long budget,
              bool serial) {
  const udua::Config cfg = load_config(cfg_path);
  const udua::ChannelParams params = udua::channel_params_from_config(cfg);
  const udua::UserSet set = pick_scenario(scenario, index);
  const udua::GainTable table = udua::build_gain_table(params, set.region);
  const udua::InnerSolver solver =
      inner == "greedy" ? udua::InnerSolver::greedy : udua::InnerSolver::km;
  const udua::Exec exec = serial ? udua::Exec::serial : udua::Exec::parallel;

  json j{{"method", method}, {"scenario_id", set.id},
         {"users", set.user_count()}};
  const auto t0 = std::chrono::steady_clock::now();
  if (method == "to") {
    udua::ExhaustiveOptions opts;
    opts.budget = budget;
    opts.exec = exec;
    opts.solver = solver;
    const udua::SearchResult sr =
        udua::exhaustive_search(set, table, params, opts);
    j["deployment"] = deployment_json(sr.deployment);
    j["f"] = sr.result.f;
    j["feasible"] = sr.result.feasible();
    j["association"] = association_json(sr.result);
  } else if (method == "sa") {
    udua::SAConfig sa;
    sa.seed = seed;
    sa.solver = solver;
    const udua::Config c = load_config(cfg_path);
    const std::string t0s = c.get_string("sa_initial_temperature", "auto");
    if (t0s != "auto") sa.initial_temperature = std::stod(t0s);
    sa.annealing_rate = c.get_double("sa_annealing_rate", sa.annealing_rate);
    sa.iterations_per_temperature = c.get_int("sa_iterations_per_temperature",
                                              sa.iterations_per_temperature);
    const udua::SearchResult sr =
        udua::simulated_annealing(set, table, params, sa);
    j["deployment"] = deployment_json(sr.deployment);
    j["f"] = sr.result.f;
    j["feasible"] = sr.result.feasible();
    j["association"] = association_json(sr.result);
  } else if (method == "rand") {
    const udua::Deployment dep =
        udua::random_deployment(set.region, params.j_uavs, seed);
    const udua::AssocResult r =
        udua::evaluate_deployment(set, dep, table, params,
                                  inner == "km" ? udua::InnerSolver::km
                                                : udua::InnerSolver::greedy);
    j["deployment"] = deployment_json(dep);
    j["f"] = r.f;
    j["feasible"] = r.feasible();
    j["association"] = association_json(r);
  } else if (method == "knn") {
    if (kb_path.empty()) throw std::runtime_error("knn requires --kb");
    const udua::KnowledgeDatabase db = udua::load_database(kb_path);
    const udua::OnlineResult r =
        udua::solve_online(db, set, k, table, params, exec);
    j["deployment"] = r.feasible ? deployment_json(r.deployment) : json();
    j["entry_index"] = r.entry_index;
    j["f"] = r.result.f;
    j["feasible"] = r.feasible;
    j["association"] = association_json(r.result);
  } else {
    throw std::runtime_error("unknown method: " + method);
  }
  j["time_ms"] = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  write_or_print(j, out);
  return 0;
}

int cmd_build_kb(const std::string& cfg_path, const std::string& dir,
                 const std::string& out, long long budget, bool serial) {
  const udua::Config cfg = load_config(cfg_path);
  const udua::ChannelParams params = udua::channel_params_from_config(cfg);
  std::vector<std::string> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".json")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(dir);
  }
  std::vector<udua::UserSet> sets;
  for (const auto& f : files)
    for (auto& s : udua::load_user_sets(f)) sets.push_back(std::move(s));
  if (sets.empty())
    throw std::runtime_error("no scenarios found under " + dir);
  const udua::GainTable table =
      udua::build_gain_table(params, sets.front().region);
  const udua::KnowledgeDatabase db = udua::build_database(
      sets, table, params, budget,
      serial ? udua::Exec::serial : udua::Exec::parallel);
  udua::save_database(out, db);
  std::cout << "wrote database with " << db.entries.size() << " entries to "
            << out << '\n';
  return 0;
}

int cmd_bench(const std::string& cfg_path, const std::string& out_dir,
              bool timing) {
  udua::ExperimentConfig cfg =
      udua::experiment_from_config(udua::Config::from_file(cfg_path));
  cfg.timing = timing;
  const udua::Metrics m = udua::run_experiment(cfg);
  udua::emit_results(m, out_dir);
  std::printf("%-14s %8s %8s %18s %12s %12s\n", "method", "mu", "sigma",
              "throughput[bps]", "fail_rate", "time[ms]");
  for (const auto& c : m.cells)
    std::printf("%-14s %8.3g %8.3g %18.6g %12.4g %12.3f\n", c.method.c_str(),
                c.mu, c.sigma, c.mean_throughput_bps, c.failure_rate,
                c.mean_time_ms);
  std::cout << "results written to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV base-station deployment and user-association toolkit"};
  app.require_subcommand(1);

  std::string cfg_path, scenario, out, dep_spec, kb_path, method, dir;
  std::string prefix = "gen", solver = "km", inner = "km";
  double mu = -0.6, sigma = 0.6;
  int count = 1, k = 10;
  std::size_t index = 0;
  std::uint64_t seed = 1;
  long long budget = 10'000'000;
  bool serial = false, timing = false;

  auto* gen = app.add_subcommand("gen", "Generate user scenarios");
  gen->add_option("--config", cfg_path, "Config file (defaults otherwise)");
  gen->add_option("--mu", mu, "Lognormal mu")->required();
  gen->add_option("--sigma", sigma, "Lognormal sigma")->required();
  gen->add_option("--count", count, "Number of scenarios")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Base seed");
  gen->add_option("--id-prefix", prefix, "Scenario id prefix");
  gen->add_option("--out", out, "Output file")->required();

  auto* oracle = app.add_subcommand("oracle", "Solve one association");
  oracle->add_option("--config", cfg_path, "Config file");
  oracle->add_option("--scenario", scenario, "Scenario file")->required();
  oracle->add_option("--index", index, "Scenario index in file");
  oracle->add_option("--deployment", dep_spec,
                     "Deployment as [[x,y],...] or @file")
      ->required();
  oracle->add_option("--solver", solver, "km | greedy | brute");

  auto* solve = app.add_subcommand("solve", "Deploy and associate");
  solve->add_option("--config", cfg_path, "Config file");
  solve->add_option("--method", method, "to | sa | rand | knn")->required();
  solve->add_option("--scenario", scenario, "Scenario file")->required();
  solve->add_option("--index", index, "Scenario index in file");
  solve->add_option("--out", out, "Output file (stdout otherwise)");
  solve->add_option("--kb", kb_path, "Knowledge database (knn)");
  solve->add_option("--k", k, "Neighbors to try (knn)");
  solve->add_option("--seed", seed, "Seed (sa, rand)");
  solve->add_option("--inner", inner, "Association solver: km | greedy");
  solve->add_option("--budget", budget, "Exhaustive evaluation budget");
  solve->add_flag("--serial", serial, "Disable OpenMP");

  auto* build_kb = app.add_subcommand("build-kb", "Build knowledge database");
  build_kb->add_option("--config", cfg_path, "Config file");
  build_kb
      ->add_option("--scenarios", dir,
                   "Scenario file, or a directory of scenario files")
      ->required();
  build_kb->add_option("--out", out, "Database output file")->required();
  build_kb->add_option("--budget", budget, "Exhaustive evaluation budget");
  build_kb->add_flag("--serial", serial, "Disable OpenMP");

  auto* bench = app.add_subcommand("bench", "Run the benchmark harness");
  bench->add_option("--config", cfg_path, "Experiment config")->required();
  bench->add_option("--out", out, "Output directory")->required();
  bench->add_flag("--timing", timing,
                  "Serial mode with trustworthy per-solve times");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(cfg_path, mu, sigma, count, seed, prefix, out);
    if (oracle->parsed())
      return cmd_oracle(cfg_path, scenario, index, dep_spec, solver);
    if (solve->parsed())
      return cmd_solve(cfg_path, method, scenario, index, out, kb_path, k,
                       seed, inner, budget, serial);
    if (build_kb->parsed())
      return cmd_build_kb(cfg_path, dir, out, budget, serial);
    if (bench->parsed()) return cmd_bench(cfg_path, out, timing);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
