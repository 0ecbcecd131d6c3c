#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "udua/channel.hpp"
#include "udua/types.hpp"

namespace udua {

/// Flat `key = value` configuration ('#' comments, blank lines ignored).
/// Lists are comma-separated. All keys are optional; absent keys fall back
/// to the built-in defaults.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  long long get_int64(const std::string& key, long long dflt) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> dflt) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

 private:
  std::map<std::string, std::string> kv_;
};

/// dBm / dB to linear converters used by the power keys.
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Channel keys: a, b, carrier_hz, light_speed, pathloss_exponent,
/// excess_los_db, excess_nlos_db, altitude_m, tx_power_dbm | tx_power_w,
/// noise_dbm | noise_w, bandwidth_hz, min_rate_bps, phi, j_uavs.
ChannelParams channel_params_from_config(const Config& c);

/// Region keys: n_y, n_x, delta_d_m.
GridRegion region_from_config(const Config& c);

}  // namespace udua
