#include "udua/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "udua/rng.hpp"

namespace udua {

void ChannelParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("channel: a and b must be > 0");
  if (!(carrier_hz > 0.0) || !(light_speed > 0.0))
    throw std::invalid_argument("channel: carrier and light speed must be > 0");
  if (!(pathloss_exp >= 2.0))
    throw std::invalid_argument("channel: pathloss exponent must be >= 2");
  if (excess_los_db > excess_nlos_db)
    throw std::invalid_argument("channel: LoS excess loss must not exceed NLoS");
  if (!(altitude > 0.0))
    throw std::invalid_argument("channel: altitude must be > 0");
  if (!(tx_power > 0.0) || !(noise_power > 0.0))
    throw std::invalid_argument("channel: powers must be > 0");
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("channel: bandwidth must be > 0");
  if (!(min_rate > 0.0))
    throw std::invalid_argument("channel: QoS rate must be > 0");
  if (phi < 1) throw std::invalid_argument("channel: phi must be >= 1");
  if (j_uavs < 1) throw std::invalid_argument("channel: UAV count must be >= 1");
}

double los_probability(const ChannelParams& p, double r) {
  if (r < p.altitude)
    throw std::domain_error("los_probability: r must be >= altitude");
  const double theta_deg = (180.0 / M_PI) * std::asin(p.altitude / r);
  return 1.0 / (1.0 + p.a * std::exp(-p.b * (theta_deg - p.a)));
}

double path_gain(const ChannelParams& p, double r, bool los) {
  if (!(r > 0.0)) throw std::domain_error("path_gain: r must be > 0");
  const double k = 4.0 * M_PI * p.carrier_hz / p.light_speed;
  const double mu_db = los ? p.excess_los_db : p.excess_nlos_db;
  return std::pow(k, -2.0) * std::pow(r, -p.pathloss_exp) *
         std::pow(10.0, -0.1 * mu_db);
}

double expected_gain(const ChannelParams& p, double r) {
  const double pl = los_probability(p, r);
  return pl * path_gain(p, r, true) + (1.0 - pl) * path_gain(p, r, false);
}

double link_rate(const ChannelParams& p, double gain) {
  if (gain < 0.0) throw std::domain_error("link_rate: gain must be >= 0");
  return p.bandwidth * std::log2(1.0 + p.tx_power * gain / p.noise_power);
}

GainTable::GainTable(GridRegion region, GainMode mode, std::uint64_t seed,
                     std::vector<double> gains)
    : region_(region), mode_(mode), seed_(seed), gains_(std::move(gains)) {}

GainTable build_gain_table(const ChannelParams& p, const GridRegion& region,
                           GainMode mode, std::uint64_t seed) {
  p.validate();
  region.validate();
  const int rows = 2 * region.n_y - 1;
  const int cols = 2 * region.n_x - 1;
  std::vector<double> gains(static_cast<std::size_t>(rows) * cols);
  rng::Engine eng(seed);
  for (int iy = 0; iy < rows; ++iy) {
    for (int ix = 0; ix < cols; ++ix) {
      const double dy = (iy - (region.n_y - 1)) * region.delta_d;
      const double dx = (ix - (region.n_x - 1)) * region.delta_d;
      const double r = std::sqrt(dy * dy + dx * dx + p.altitude * p.altitude);
      double g;
      if (mode == GainMode::expected) {
        g = expected_gain(p, r);
      } else {
        const bool los = eng.unit() < los_probability(p, r);
        g = path_gain(p, r, los);
      }
      gains[static_cast<std::size_t>(iy) * cols + ix] = g;
    }
  }
  return GainTable(region, mode, seed, std::move(gains));
}

SystemBounds system_bounds(const ChannelParams& p, const GridRegion& region) {
  p.validate();
  region.validate();
  const double dy = (region.n_y - 1) * region.delta_d;
  const double dx = (region.n_x - 1) * region.delta_d;
  const double r_far = std::sqrt(dy * dy + dx * dx + p.altitude * p.altitude);
  SystemBounds b;
  b.eps_max = link_rate(p, expected_gain(p, p.altitude));
  b.eps_min = link_rate(p, expected_gain(p, r_far));
  return b;
}

}  // namespace udua
