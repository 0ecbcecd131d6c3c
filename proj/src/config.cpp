#include "udua/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace udua {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits on commas outside parentheses, so entries like "knn(300,10)"
// survive as one item.
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  int depth = 0;
  auto flush = [&] {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
    item.clear();
  };
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')' && depth > 0) --depth;
    if (ch == ',' && depth == 0) {
      flush();
      continue;
    }
    item += ch;
  }
  flush();
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad number for '" + key + "': " + v);
  return d;
}

long long parse_int64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long n;
  try {
    n = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad integer for '" + key + "': " + v);
  return n;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return from_string(buf.str());
}

Config Config::from_string(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config: empty key on line " +
                                  std::to_string(lineno));
    c.kv_[key] = val;
  }
  return c;
}

std::string Config::get_string(const std::string& key,
                               const std::string& dflt) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? dflt : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int dflt) const {
  return static_cast<int>(get_int64(key, dflt));
}

long long Config::get_int64(const std::string& key, long long dflt) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? dflt : parse_int64(key, it->second);
}

std::uint64_t Config::get_u64(const std::string& key,
                              std::uint64_t dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  std::size_t pos = 0;
  std::uint64_t n;
  try {
    n = std::stoull(it->second, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for '" + key +
                                "': " + it->second);
  }
  if (pos != it->second.size())
    throw std::invalid_argument("config: bad integer for '" + key +
                                "': " + it->second);
  return n;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            std::vector<double> dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  std::vector<double> out;
  for (const auto& item : split_list(it->second))
    out.push_back(parse_double(key, item));
  if (out.empty())
    throw std::invalid_argument("config: empty list for '" + key + "'");
  return out;
}

std::vector<std::string> Config::get_string_list(const std::string& key) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? std::vector<std::string>{} : split_list(it->second);
}

ChannelParams channel_params_from_config(const Config& c) {
  ChannelParams p;
  p.a = c.get_double("a", p.a);
  p.b = c.get_double("b", p.b);
  p.carrier_hz = c.get_double("carrier_hz", p.carrier_hz);
  p.light_speed = c.get_double("light_speed", p.light_speed);
  p.pathloss_exp = c.get_double("pathloss_exponent", p.pathloss_exp);
  p.excess_los_db = c.get_double("excess_los_db", p.excess_los_db);
  p.excess_nlos_db = c.get_double("excess_nlos_db", p.excess_nlos_db);
  p.altitude = c.get_double("altitude_m", p.altitude);
  if (c.has("tx_power_dbm") && c.has("tx_power_w"))
    throw std::invalid_argument("config: give tx_power_dbm or tx_power_w, not both");
  if (c.has("tx_power_dbm"))
    p.tx_power = dbm_to_watt(c.get_double("tx_power_dbm", 0.0));
  else
    p.tx_power = c.get_double("tx_power_w", p.tx_power);
  if (c.has("noise_dbm") && c.has("noise_w"))
    throw std::invalid_argument("config: give noise_dbm or noise_w, not both");
  if (c.has("noise_dbm"))
    p.noise_power = dbm_to_watt(c.get_double("noise_dbm", 0.0));
  else
    p.noise_power = c.get_double("noise_w", p.noise_power);
  p.bandwidth = c.get_double("bandwidth_hz", p.bandwidth);
  p.min_rate = c.get_double("min_rate_bps", p.min_rate);
  p.phi = c.get_int("phi", p.phi);
  p.j_uavs = c.get_int("j_uavs", p.j_uavs);
  p.validate();
  return p;
}

GridRegion region_from_config(const Config& c) {
  GridRegion r;
  r.n_y = c.get_int("n_y", r.n_y);
  r.n_x = c.get_int("n_x", r.n_x);
  r.delta_d = c.get_double("delta_d_m", r.delta_d);
  r.validate();
  return r;
}

}  // namespace udua
