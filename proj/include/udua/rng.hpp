#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic random helpers. std::mt19937_64 is fully specified by the
// standard, but the *distributions* (uniform_int_distribution, etc.) are
// implementation-defined, so every draw here is derived from raw engine
// output only. Streams are reproducible across compilers and platforms.

namespace udua::rng {

/// splitmix64 step; used both as a stand-alone generator and a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Combine two 64-bit values into a well-mixed child seed.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  std::uint64_t r = splitmix64(s);
  s ^= b;
  return r ^ splitmix64(s);
}

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform double in [0, 1); 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double unit_open_low() { return 1.0 - unit(); }

  /// Uniform integer in [0, n) by rejection; unbiased for any n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  /// Standard normal via Box-Muller (cosine branch; two uniforms per draw).
  double normal() {
    const double u1 = unit_open_low();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Lognormal: exp(mu + sigma * Z).
  double lognormal(double mu, double sigma) {
    return std::exp(mu + sigma * normal());
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace udua::rng
