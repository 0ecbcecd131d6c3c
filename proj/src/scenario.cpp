#include "udua/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "udua/rng.hpp"

namespace udua {
namespace {

using nlohmann::json;

json region_to_json(const GridRegion& r) {
  return json{{"n_y", r.n_y}, {"n_x", r.n_x}, {"delta_d", r.delta_d}};
}

GridRegion region_from_json(const json& j) {
  GridRegion r;
  r.n_y = j.at("n_y").get<int>();
  r.n_x = j.at("n_x").get<int>();
  r.delta_d = j.at("delta_d").get<double>();
  r.validate();
  return r;
}

json user_set_to_json(const UserSet& s) {
  json j;
  j["format"] = "udua-scenario-v1";
  j["id"] = s.id;
  j["region"] = region_to_json(s.region);
  if (s.gen) {
    j["gen_params"] = json{{"mu", s.gen->mu},
                           {"sigma", s.gen->sigma},
                           {"seed", s.gen->seed}};
  }
  json users = json::array();
  for (const auto& u : s.users) users.push_back(json::array({u.x, u.y}));
  j["users"] = users;
  return j;
}

UserSet user_set_from_json(const json& j) {
  UserSet s;
  s.id = j.value("id", std::string{});
  s.region = region_from_json(j.at("region"));
  if (j.contains("gen_params")) {
    GenParams g;
    g.mu = j["gen_params"].at("mu").get<double>();
    g.sigma = j["gen_params"].at("sigma").get<double>();
    g.seed = j["gen_params"].value("seed", std::uint64_t{0});
    s.gen = g;
  }
  for (const auto& u : j.at("users")) {
    if (!u.is_array() || u.size() != 2)
      throw std::invalid_argument("scenario: user entries must be [X, Y] pairs");
    s.users.push_back(GridPos{u[0].get<int>(), u[1].get<int>()});
  }
  s.validate();
  return s;
}

}  // namespace

UserSet sample_user_set(const GridRegion& region, const ScenarioGenConfig& cfg,
                        const ChannelParams& params) {
  region.validate();
  params.validate();
  if (!(cfg.gen.sigma >= 0.0))
    throw std::invalid_argument("scenario: sigma must be >= 0");
  if (cfg.max_resamples < 1)
    throw std::invalid_argument("scenario: max_resamples must be >= 1");

  const long long max_users =
      static_cast<long long>(params.j_uavs) * params.phi;
  rng::Engine eng(cfg.gen.seed);
  for (int attempt = 0; attempt < cfg.max_resamples; ++attempt) {
    std::vector<GridPos> users;
    for (int ky = 1; ky <= region.n_y; ++ky) {
      for (int kx = 1; kx <= region.n_x; ++kx) {
        const long long count =
            std::llround(eng.lognormal(cfg.gen.mu, cfg.gen.sigma));
        for (long long c = 0; c < count; ++c)
          users.push_back(GridPos{kx, ky});
      }
    }
    const long long total = static_cast<long long>(users.size());
    if (total >= 1 && total <= max_users) {
      UserSet s;
      s.id = cfg.id;
      s.region = region;
      s.users = std::move(users);
      s.gen = cfg.gen;
      return s;
    }
  }
  char what[160];
  std::snprintf(what, sizeof(what),
                "scenario: no draw with 1 <= I <= %d users after %d attempts "
                "(mu=%g, sigma=%g; is the J*Phi window reachable?)",
                max_users, cfg.max_resamples, cfg.gen.mu, cfg.gen.sigma);
  throw std::runtime_error(what);
}

DistributionMatrix distribution_matrix(const UserSet& set) {
  set.validate();
  DistributionMatrix d;
  d.n_y = set.region.n_y;
  d.n_x = set.region.n_x;
  d.counts.assign(static_cast<std::size_t>(d.n_y) * d.n_x, 0);
  for (const auto& u : set.users) ++d.counts[(u.y - 1) * d.n_x + (u.x - 1)];
  return d;
}

void save_user_sets(const std::string& path,
                    const std::vector<UserSet>& sets) {
  json out;
  if (sets.size() == 1) {
    out = user_set_to_json(sets.front());
  } else {
    out = json::array();
    for (const auto& s : sets) out.push_back(user_set_to_json(s));
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path);
  if (!f) throw std::runtime_error("scenario: cannot open for write: " + path);
  f << out.dump(2) << '\n';
}

std::vector<UserSet> load_user_sets(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("scenario: cannot open for read: " + path);
  json j = json::parse(f);
  std::vector<UserSet> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(user_set_from_json(e));
  } else {
    out.push_back(user_set_from_json(j));
  }
  return out;
}

}  // namespace udua
