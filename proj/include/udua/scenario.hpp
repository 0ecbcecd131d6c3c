#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udua/channel.hpp"
#include "udua/types.hpp"

namespace udua {

/// Lognormal generation parameters for one user set.
struct GenParams {
  double mu = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  bool operator==(const GenParams&) const = default;
};

struct ScenarioGenConfig {
  GenParams gen;
  int max_resamples = 10000;
  std::string id;
};

/// One downlink scenario: I users at grid positions inside a region.
/// Users created by the generator carry their generation parameters.
struct UserSet {
  std::string id;
  GridRegion region;
  std::vector<GridPos> users;
  std::optional<GenParams> gen;

  int user_count() const { return static_cast<int>(users.size()); }
  void validate() const {
    region.validate();
    for (const auto& u : users)
      if (!region.contains(u.x, u.y))
        throw std::invalid_argument("user set: user outside region");
  }
};

/// Per-grid user counts D = [d_{ky,kx}], 1-based like the grid ordinals.
struct DistributionMatrix {
  int n_y = 0;
  int n_x = 0;
  std::vector<int> counts;  // row-major

  int at(int ky, int kx) const { return counts[(ky - 1) * n_x + (kx - 1)]; }
  long long total() const {
    long long t = 0;
    for (int c : counts) t += c;
    return t;
  }
  bool operator==(const DistributionMatrix&) const = default;
};

/// Draw one user set: the user count of each grid is an independent
/// lognormal(mu, sigma) draw rounded to the nearest integer, and the whole
/// set is resampled until 1 <= I <= J * phi (at most max_resamples
/// attempts, then std::runtime_error).
UserSet sample_user_set(const GridRegion& region, const ScenarioGenConfig& cfg,
                        const ChannelParams& params);

DistributionMatrix distribution_matrix(const UserSet& set);

/// Scenario files hold either a single scenario object or an array of them.
void save_user_sets(const std::string& path, const std::vector<UserSet>& sets);
std::vector<UserSet> load_user_sets(const std::string& path);

}  // namespace udua
