#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "udua/rng.hpp"

using namespace udua;

TEST_SUITE("rng") {

TEST_CASE("same seed, same stream; different seed, different stream") {
  rng::Engine a(42), b(42), c(43);
  bool same = true, differ = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next();
    same = same && va == b.next();
    differ = differ || va != c.next();
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("unit variants stay inside their half-open intervals") {
  rng::Engine e(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = e.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = e.unit_open_low();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("below() is in range and unbiased across 16 bins") {
  rng::Engine e(7);
  const int bins = 16, draws = 160000;
  std::vector<int> count(bins, 0);
  for (int i = 0; i < draws; ++i) {
    const auto v = e.below(bins);
    REQUIRE(v < static_cast<std::uint64_t>(bins));
    ++count[v];
  }
  const double expect = static_cast<double>(draws) / bins;
  double chi2 = 0.0;
  for (int c : count) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 30.57791416689249);  // chi-square 0.99 quantile, 15 dof
}

TEST_CASE("below() handles awkward moduli") {
  rng::Engine e(3);
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 5ULL, 81ULL, 1000003ULL}) {
    for (int i = 0; i < 200; ++i) CHECK(e.below(n) < n);
  }
}

TEST_CASE("Box-Muller normals have the right first two moments") {
  rng::Engine e(11);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = e.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("rounded lognormal mean lands near exp(mu + sigma^2/2)") {
  // Monte-Carlo check of the generator against the analytic lognormal
  // mean; the widened tolerance absorbs the integer-rounding bias.
  rng::Engine e(5);
  const double mu = -0.2, sigma = 1.0;
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::llround(e.lognormal(mu, sigma));
  const double analytic = std::exp(mu + 0.5 * sigma * sigma);
  CHECK(sum / n == doctest::Approx(analytic).epsilon(0.10));
}

TEST_CASE("mix() separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(rng::mix(a, b));
  CHECK(seen.size() == 400);  // no collisions across a small grid
  CHECK(rng::mix(1, 2) != rng::mix(2, 1));
}

}  // TEST_SUITE
