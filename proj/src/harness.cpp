#include "udua/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "udua/rng.hpp"

namespace udua {
namespace {

using nlohmann::json;

// Stream tags so scenario, method, and database seeds never collide.
constexpr std::uint64_t kScenarioTag = 0x5ce2a710;
constexpr std::uint64_t kMethodTag = 0x6e7d0d;
constexpr std::uint64_t kDatabaseTag = 0xdb151de;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::string MethodSpec::name() const {
  switch (kind) {
    case Kind::to:
      return "to";
    case Kind::knn:
      return "knn(" + std::to_string(w) + "," + std::to_string(k) + ")";
    case Kind::sa_km:
      return "sa_km";
    case Kind::sa_greedy:
      return "sa_greedy";
    case Kind::rand_greedy:
      return "rand_greedy";
  }
  return "?";
}

MethodSpec MethodSpec::parse(const std::string& text) {
  MethodSpec m;
  if (text == "to") {
    m.kind = Kind::to;
  } else if (text == "sa_km") {
    m.kind = Kind::sa_km;
  } else if (text == "sa_greedy") {
    m.kind = Kind::sa_greedy;
  } else if (text == "rand_greedy") {
    m.kind = Kind::rand_greedy;
  } else if (text.rfind("knn(", 0) == 0 && text.back() == ')') {
    m.kind = Kind::knn;
    const std::string inner = text.substr(4, text.size() - 5);
    const auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("method: expected knn(W,k): " + text);
    try {
      m.w = std::stoi(inner.substr(0, comma));
      m.k = std::stoi(inner.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("method: expected knn(W,k): " + text);
    }
    if (m.w < 1 || m.k < 1)
      throw std::invalid_argument("method: knn needs W >= 1 and k >= 1");
  } else {
    throw std::invalid_argument("method: unknown '" + text + "'");
  }
  return m;
}

ExperimentConfig experiment_from_config(const Config& c) {
  ExperimentConfig e;
  e.region = region_from_config(c);
  e.params = channel_params_from_config(c);
  const auto methods = c.get_string_list("methods");
  if (methods.empty()) {
    for (const char* m :
         {"to", "knn(300,10)", "sa_km", "sa_greedy", "rand_greedy"})
      e.methods.push_back(MethodSpec::parse(m));
  } else {
    for (const auto& m : methods) e.methods.push_back(MethodSpec::parse(m));
  }
  e.mus = c.get_double_list("mu", e.mus);
  e.sigmas = c.get_double_list("sigma", e.sigmas);
  e.n_test = c.get_int("n_test", e.n_test);
  if (e.n_test < 1) throw std::invalid_argument("config: n_test must be >= 1");
  e.seed = c.get_u64("seed", e.seed);
  e.max_resamples = c.get_int("max_resamples", e.max_resamples);
  e.exhaustive_budget = c.get_int64("exhaustive_budget", e.exhaustive_budget);
  e.kb_path = c.get_string("kb", e.kb_path);
  const std::string t0 = c.get_string("sa_initial_temperature", "auto");
  e.sa.initial_temperature = t0 == "auto" ? 0.0 : std::stod(t0);
  e.sa.annealing_rate = c.get_double("sa_annealing_rate", e.sa.annealing_rate);
  e.sa.iterations_per_temperature = c.get_int(
      "sa_iterations_per_temperature", e.sa.iterations_per_temperature);
  const std::string tmin = c.get_string("sa_min_temperature", "auto");
  e.sa.min_temperature = tmin == "auto" ? 0.0 : std::stod(tmin);
  return e;
}

Metrics run_experiment(const ExperimentConfig& cfg) {
  cfg.region.validate();
  cfg.params.validate();
  if (cfg.methods.empty())
    throw std::invalid_argument("experiment: no methods configured");
  const GainTable table = build_gain_table(cfg.params, cfg.region);

  // One shared database at the largest requested size; smaller sizes use a
  // prefix, so the databases are nested and comparisons across W are not
  // confounded by a fresh scenario draw.
  int w_max = 0;
  for (const auto& m : cfg.methods)
    if (m.kind == MethodSpec::Kind::knn) w_max = std::max(w_max, m.w);
  KnowledgeDatabase kb_full;
  if (w_max > 0) {
    if (!cfg.kb_path.empty()) {
      kb_full = load_database(cfg.kb_path);
      if (!(kb_full.region == cfg.region) ||
          kb_full.params_hash != channel_fingerprint(cfg.params))
        throw std::invalid_argument(
            "experiment: knowledge database was built for other parameters");
    } else {
      std::vector<UserSet> scen;
      scen.reserve(w_max);
      const int n_cells =
          static_cast<int>(cfg.mus.size() * cfg.sigmas.size());
      for (int t = 0; t < w_max; ++t) {
        const int cell = t % n_cells;
        char id[32];
        std::snprintf(id, sizeof(id), "kb-%04d", t);
        ScenarioGenConfig g;
        g.gen.mu = cfg.mus[cell / cfg.sigmas.size()];
        g.gen.sigma = cfg.sigmas[cell % cfg.sigmas.size()];
        g.gen.seed = rng::mix(cfg.seed, rng::mix(kDatabaseTag, t));
        g.max_resamples = cfg.max_resamples;
        g.id = id;
        scen.push_back(sample_user_set(cfg.region, g, cfg.params));
      }
      // Parallel even in timing mode: the build is excluded from the
      // per-solve wall times, which are what timing mode protects.
      kb_full = build_database(scen, table, cfg.params, cfg.exhaustive_budget,
                               Exec::parallel);
    }
  }
  std::vector<KnowledgeDatabase> method_db(cfg.methods.size());
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    const MethodSpec& m = cfg.methods[mi];
    if (m.kind != MethodSpec::Kind::knn) continue;
    KnowledgeDatabase db;
    db.region = kb_full.region;
    db.params_hash = kb_full.params_hash;
    const int w = std::min<int>(m.w, static_cast<int>(kb_full.entries.size()));
    db.entries.assign(kb_full.entries.begin(), kb_full.entries.begin() + w);
    method_db[mi] = std::move(db);
  }

  const int n_cells = static_cast<int>(cfg.mus.size() * cfg.sigmas.size());
  const int n_pairs = n_cells * cfg.n_test;
  const int n_methods = static_cast<int>(cfg.methods.size());
  Metrics out;
  out.runs.resize(static_cast<std::size_t>(n_pairs) * n_methods);
  std::vector<std::string> errors(n_pairs);

  const bool par = !cfg.timing;
#pragma omp parallel for schedule(dynamic) if (par)
  for (int rc = 0; rc < n_pairs; ++rc) {
    try {
      const int ci = rc / cfg.n_test;
      const int t = rc % cfg.n_test;
      const double mu = cfg.mus[ci / cfg.sigmas.size()];
      const double sigma = cfg.sigmas[ci % cfg.sigmas.size()];

      ScenarioGenConfig g;
      g.gen.mu = mu;
      g.gen.sigma = sigma;
      g.gen.seed = rng::mix(cfg.seed, rng::mix(kScenarioTag, rc));
      g.max_resamples = cfg.max_resamples;
      char id[32];
      std::snprintf(id, sizeof(id), "t-%02d-%03d", ci, t);
      g.id = id;
      const UserSet set = sample_user_set(cfg.region, g, cfg.params);
      const std::uint64_t method_seed =
          rng::mix(cfg.seed, rng::mix(kMethodTag, rc));

      for (int mi = 0; mi < n_methods; ++mi) {
        const MethodSpec& m = cfg.methods[mi];
        RunRecord rec;
        rec.method = m.name();
        rec.mu = mu;
        rec.sigma = sigma;
        rec.test = t;
        rec.users = set.user_count();
        rec.scenario_seed = g.gen.seed;

        const auto t0 = std::chrono::steady_clock::now();
        switch (m.kind) {
          case MethodSpec::Kind::to: {
            ExhaustiveOptions opts;
            opts.budget = cfg.exhaustive_budget;
            opts.exec = Exec::serial;  // runs are already parallel
            const SearchResult sr =
                exhaustive_search(set, table, cfg.params, opts);
            rec.f = sr.result.f;
            rec.feasible = sr.result.feasible();
            break;
          }
          case MethodSpec::Kind::knn: {
            const OnlineResult r = solve_online(method_db[mi], set, m.k, table,
                                                cfg.params, Exec::serial);
            rec.f = r.result.f;
            rec.feasible = r.feasible;
            break;
          }
          case MethodSpec::Kind::sa_km:
          case MethodSpec::Kind::sa_greedy: {
            SAConfig s = cfg.sa;
            s.seed = method_seed;
            s.solver = m.kind == MethodSpec::Kind::sa_km ? InnerSolver::km
                                                         : InnerSolver::greedy;
            const SearchResult sr =
                simulated_annealing(set, table, cfg.params, s);
            rec.f = sr.result.f;
            rec.feasible = sr.result.feasible();
            break;
          }
          case MethodSpec::Kind::rand_greedy: {
            const Deployment dep =
                random_deployment(cfg.region, cfg.params.j_uavs, method_seed);
            const AssocResult r = evaluate_deployment(set, dep, table,
                                                      cfg.params,
                                                      InnerSolver::greedy);
            rec.f = r.f;
            rec.feasible = r.feasible();
            break;
          }
        }
        rec.time_ms = elapsed_ms(t0);
        out.runs[static_cast<std::size_t>(rc) * n_methods + mi] =
            std::move(rec);
      }
    } catch (const std::exception& ex) {
      errors[rc] = ex.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("experiment: " + e);

  // Aggregate in fixed (method, mu, sigma) order.
  for (int mi = 0; mi < n_methods; ++mi) {
    for (int ci = 0; ci < n_cells; ++ci) {
      CellMetrics cm;
      cm.method = cfg.methods[mi].name();
      cm.mu = cfg.mus[ci / cfg.sigmas.size()];
      cm.sigma = cfg.sigmas[ci % cfg.sigmas.size()];
      double sum_f = 0.0, sum_t = 0.0;
      int n_ok = 0;
      for (int t = 0; t < cfg.n_test; ++t) {
        const RunRecord& r =
            out.runs[(static_cast<std::size_t>(ci) * cfg.n_test + t) *
                         n_methods +
                     mi];
        ++cm.n_runs;
        sum_t += r.time_ms;
        if (r.feasible) {
          sum_f += r.f;
          ++n_ok;
        } else {
          ++cm.n_fail;
        }
      }
      cm.mean_throughput_bps = n_ok > 0 ? sum_f / n_ok : 0.0;
      cm.failure_rate = static_cast<double>(cm.n_fail) / cm.n_runs;
      cm.mean_time_ms = sum_t / cm.n_runs;
      out.cells.push_back(std::move(cm));
    }
  }
  return out;
}

void emit_results(const Metrics& m, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    std::ofstream csv(out_dir + "/results.csv");
    if (!csv) throw std::runtime_error("harness: cannot write results.csv");
    csv << "method,mu,sigma,mean_throughput_bps,failure_rate,mean_time_ms,"
           "n_runs,n_fail\n";
    char line[256];
    for (const auto& c : m.cells) {
      // Method names like knn(300,10) contain commas and must be quoted.
      const std::string method =
          c.method.find(',') == std::string::npos ? c.method
                                                  : '"' + c.method + '"';
      std::snprintf(line, sizeof(line), "%s,%.6g,%.6g,%.10g,%.10g,%.3f,%d,%d\n",
                    method.c_str(), c.mu, c.sigma, c.mean_throughput_bps,
                    c.failure_rate, c.mean_time_ms, c.n_runs, c.n_fail);
      csv << line;
    }
  }
  {
    json cells = json::array();
    for (const auto& c : m.cells) {
      cells.push_back(json{{"method", c.method},
                           {"mu", c.mu},
                           {"sigma", c.sigma},
                           {"mean_throughput_bps", c.mean_throughput_bps},
                           {"failure_rate", c.failure_rate},
                           {"mean_time_ms", c.mean_time_ms},
                           {"n_runs", c.n_runs},
                           {"n_fail", c.n_fail}});
    }
    json j{{"format", "udua-results-v1"}, {"cells", cells}};
    std::ofstream f(out_dir + "/results.json");
    if (!f) throw std::runtime_error("harness: cannot write results.json");
    f << j.dump(2) << '\n';
  }
  {
    std::ofstream f(out_dir + "/runs.jsonl");
    if (!f) throw std::runtime_error("harness: cannot write runs.jsonl");
    for (const auto& r : m.runs) {
      json j{{"method", r.method},   {"mu", r.mu},
             {"sigma", r.sigma},     {"test", r.test},
             {"users", r.users},     {"f", r.f},
             {"feasible", r.feasible}, {"time_ms", r.time_ms},
             {"scenario_seed", r.scenario_seed}};
      f << j.dump() << '\n';
    }
  }
}

}  // namespace udua
