#pragma once

#include <cstdint>
#include <vector>

#include "udua/types.hpp"

namespace udua {

/// Air-to-ground channel and radio constants. Powers are linear (W), the
/// excess losses are in dB as conventionally quoted; converters from
/// dBm/dB live in the config layer.
struct ChannelParams {
  double a = 9.6117;              // environment constant (dense urban)
  double b = 0.2782;              // environment constant (dense urban)
  double carrier_hz = 2e9;        // carrier frequency f
  double light_speed = 2.99792458e8;
  double pathloss_exp = 3.0;      // gamma
  double excess_los_db = 1.0;     // mu_LoS
  double excess_nlos_db = 20.0;   // mu_NLoS
  double altitude = 20.0;         // UAV hover height h (m)
  double tx_power = 0.1;          // p_T per sub-channel (W), 20 dBm
  double noise_power = 3.1622776601683793e-16;  // sigma_n^2 (W), -125 dBm
  double bandwidth = 1e5;         // B per sub-channel (Hz)
  double min_rate = 3e5;          // QoS threshold C (bps)
  int phi = 50;                   // sub-channels per UAV
  int j_uavs = 2;                 // number of UAV-BSs J

  void validate() const;
};

/// Probability of a line-of-sight link at 3D distance r (requires r >= h):
///   P_LoS = 1 / (1 + a * exp(-b * (theta_deg - a))),  theta = asin(h / r).
double los_probability(const ChannelParams& p, double r);

/// Channel power gain at 3D distance r for a LoS or NLoS link:
///   g = (4 pi f / c)^-2 * r^-gamma * 10^(-mu/10).
double path_gain(const ChannelParams& p, double r, bool los);

/// LoS-probability-weighted mean gain:
///   E[g] = P_LoS * g_LoS + (1 - P_LoS) * g_NLoS.
double expected_gain(const ChannelParams& p, double r);

/// Shannon rate of one sub-channel: C = B * log2(1 + p_T * g / sigma_n^2).
double link_rate(const ChannelParams& p, double gain);

/// How a gain table resolves the LoS/NLoS state per displacement:
/// `expected` stores the probability-weighted mean gain; `sampled` draws the
/// state once per displacement from P_LoS using the stored seed.
enum class GainMode { expected, sampled };

/// Precomputed gain per user-UAV grid displacement (dy, dx), each in
/// [-(n_y-1), n_y-1] x [-(n_x-1), n_x-1]. The 3D distance for displacement
/// (dy, dx) is sqrt((dy*delta_d)^2 + (dx*delta_d)^2 + h^2).
class GainTable {
 public:
  GainTable() = default;
  GainTable(GridRegion region, GainMode mode, std::uint64_t seed,
            std::vector<double> gains);

  double at(int dy, int dx) const {
    return gains_[(dy + region_.n_y - 1) * (2 * region_.n_x - 1) +
                  (dx + region_.n_x - 1)];
  }
  const GridRegion& region() const { return region_; }
  GainMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

 private:
  GridRegion region_{};
  GainMode mode_ = GainMode::expected;
  std::uint64_t seed_ = 0;
  std::vector<double> gains_;
};

GainTable build_gain_table(const ChannelParams& p, const GridRegion& region,
                           GainMode mode = GainMode::expected,
                           std::uint64_t seed = 0);

/// Per-user rate bounds over a region: eps_max is the rate directly under a
/// UAV (r = h), eps_min the rate at the largest displacement the region
/// admits. Both use the expected gain.
struct SystemBounds {
  double eps_min = 0.0;
  double eps_max = 0.0;
};

SystemBounds system_bounds(const ChannelParams& p, const GridRegion& region);

}  // namespace udua
