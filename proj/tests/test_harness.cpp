#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "udua/harness.hpp"

using namespace udua;

namespace {

// A 3x3 desk-scale setup where the QoS floor of 1.8 Mb/s is met only
// within one grid of hop distance, so bad deployments genuinely fail.
ExperimentConfig tiny_experiment() {
  return experiment_from_config(Config::from_string(
      "n_y = 3\nn_x = 3\ndelta_d_m = 30\n"
      "phi = 3\nmin_rate_bps = 1.8e6\n"
      "methods = to, knn(8,2), knn(8,1), sa_km, sa_greedy, rand_greedy\n"
      "mu = -1\nsigma = 0.2\n"
      "n_test = 6\nseed = 3\n"
      "sa_iterations_per_temperature = 3\n"));
}

std::map<std::string, std::vector<RunRecord>> by_method(const Metrics& m) {
  std::map<std::string, std::vector<RunRecord>> out;
  for (const auto& r : m.runs) out[r.method].push_back(r);
  return out;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("experiment runs every method on shared scenarios") {
  const ExperimentConfig cfg = tiny_experiment();
  const Metrics m = run_experiment(cfg);
  REQUIRE(m.runs.size() == 6u * 6u);
  REQUIRE(m.cells.size() == 6u);

  const auto runs = by_method(m);
  REQUIRE(runs.size() == 6u);
  for (const auto& [name, rs] : runs) {
    REQUIRE(rs.size() == 6u);
    for (std::size_t t = 0; t < rs.size(); ++t) {
      CHECK(rs[t].test == static_cast<int>(t));
      // Same scenario per test index across methods.
      CHECK(rs[t].scenario_seed == runs.at("to")[t].scenario_seed);
      CHECK(rs[t].users == runs.at("to")[t].users);
      CHECK(rs[t].users >= 1);
    }
  }

  int to_feasible = 0, rand_fail = 0;
  for (std::size_t t = 0; t < 6; ++t) {
    const RunRecord& to = runs.at("to")[t];
    if (to.feasible) ++to_feasible;
    for (const auto& [name, rs] : runs) {
      // Exhaustive search dominates every other method run-by-run.
      if (rs[t].feasible) {
        REQUIRE(to.feasible);
        CHECK(to.f >= rs[t].f - 1e-9);
      }
    }
    // Looking at more neighbors can only help (nested candidate sets).
    const RunRecord& k2 = runs.at("knn(8,2)")[t];
    const RunRecord& k1 = runs.at("knn(8,1)")[t];
    if (k1.feasible) {
      REQUIRE(k2.feasible);
      CHECK(k2.f >= k1.f - 1e-9);
    }
    // Annealing starts from the random baseline's deployment, so it can
    // only improve on it.
    const RunRecord& sg = runs.at("sa_greedy")[t];
    const RunRecord& rg = runs.at("rand_greedy")[t];
    if (rg.feasible) {
      REQUIRE(sg.feasible);
      CHECK(sg.f >= rg.f - 1e-9);
    }
    if (!rg.feasible) ++rand_fail;
  }
  CHECK(to_feasible == 6);  // a central UAV covers the whole 3x3 region
  CHECK(rand_fail >= 1);    // corner deployments do fail at this QoS
}

TEST_CASE("cell metrics follow from the run records") {
  const ExperimentConfig cfg = tiny_experiment();
  const Metrics m = run_experiment(cfg);
  for (const auto& c : m.cells) {
    double sum = 0.0;
    int n_ok = 0, n_fail = 0, n_runs = 0;
    for (const auto& r : m.runs) {
      if (r.method != c.method || r.mu != c.mu || r.sigma != c.sigma) continue;
      ++n_runs;
      if (r.feasible) {
        sum += r.f;
        ++n_ok;
      } else {
        ++n_fail;
      }
    }
    CHECK(c.n_runs == n_runs);
    CHECK(c.n_fail == n_fail);
    CHECK(c.failure_rate == static_cast<double>(n_fail) / n_runs);
    if (n_ok > 0)
      CHECK(c.mean_throughput_bps == doctest::Approx(sum / n_ok).epsilon(1e-12));
    else
      CHECK(c.mean_throughput_bps == 0.0);
  }
}

TEST_CASE("results are identical across repeats and execution modes") {
  ExperimentConfig cfg = tiny_experiment();
  const Metrics a = run_experiment(cfg);
  const Metrics b = run_experiment(cfg);
  cfg.timing = true;  // serial path
  const Metrics c = run_experiment(cfg);
  REQUIRE(a.runs.size() == b.runs.size());
  REQUIRE(a.runs.size() == c.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    for (const Metrics* other : {&b, &c}) {
      const RunRecord& x = a.runs[i];
      const RunRecord& y = other->runs[i];
      CHECK(x.method == y.method);
      CHECK(x.f == y.f);  // bitwise equality, no tolerance
      CHECK(x.feasible == y.feasible);
      CHECK(x.users == y.users);
      CHECK(x.scenario_seed == y.scenario_seed);
    }
  }
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].mean_throughput_bps == b.cells[i].mean_throughput_bps);
    CHECK(a.cells[i].mean_throughput_bps == c.cells[i].mean_throughput_bps);
    CHECK(a.cells[i].n_fail == c.cells[i].n_fail);
  }
}

TEST_CASE("emission writes the three result files with stable content") {
  const ExperimentConfig cfg = tiny_experiment();
  const Metrics m = run_experiment(cfg);
  const std::string dir = "/tmp/udua_harness_emit";
  std::filesystem::remove_all(dir);
  emit_results(m, dir);

  std::ifstream csv(dir + "/results.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "method,mu,sigma,mean_throughput_bps,failure_rate,mean_time_ms,"
        "n_runs,n_fail");
  int lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == static_cast<int>(m.cells.size()));

  std::ifstream jf(dir + "/results.json");
  REQUIRE(jf.good());
  const nlohmann::json j = nlohmann::json::parse(jf);
  CHECK(j.at("format") == "udua-results-v1");
  REQUIRE(j.at("cells").size() == m.cells.size());
  CHECK(j["cells"][0].contains("mean_throughput_bps"));

  std::ifstream rl(dir + "/runs.jsonl");
  REQUIRE(rl.good());
  int rl_lines = 0;
  for (std::string line; std::getline(rl, line);) {
    const nlohmann::json r = nlohmann::json::parse(line);
    CHECK(r.contains("f"));
    CHECK(r.contains("feasible"));
    ++rl_lines;
  }
  CHECK(rl_lines == static_cast<int>(m.runs.size()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment validation catches empty method lists") {
  ExperimentConfig cfg = tiny_experiment();
  cfg.methods.clear();
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

}  // TEST_SUITE
