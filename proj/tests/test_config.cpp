#include <stdexcept>

#include "doctest.h"
#include "udua/config.hpp"
#include "udua/harness.hpp"

using namespace udua;

TEST_SUITE("config") {

TEST_CASE("key-value parsing with comments and blanks") {
  const Config c = Config::from_string(
      "# leading comment\n"
      "a = 1.5\n"
      "\n"
      "name = hello  # trailing comment\n"
      "list = 1, 2.5 ,3\n");
  CHECK(c.has("a"));
  CHECK(c.get_double("a", 0.0) == 1.5);
  CHECK(c.get_string("name", "") == "hello");
  CHECK(c.get_double_list("list", {}) == std::vector<double>{1.0, 2.5, 3.0});
  CHECK(c.get_int("missing", 7) == 7);
}

TEST_CASE("malformed lines and values are rejected") {
  CHECK_THROWS_AS(Config::from_string("just some text\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(Config::from_string("= value\n"), std::invalid_argument);
  const Config c = Config::from_string("x = 12abc\n");
  CHECK_THROWS_AS(c.get_double("x", 0.0), std::invalid_argument);
  CHECK_THROWS_AS(c.get_int("x", 0), std::invalid_argument);
  CHECK_THROWS_AS(Config::from_file("/tmp/udua_missing.conf"),
                  std::runtime_error);
}

TEST_CASE("default channel parameters match the published operating point") {
  const ChannelParams p = channel_params_from_config(Config::from_string(""));
  CHECK(p.bandwidth == 1e5);
  CHECK(p.min_rate == 3e5);
  CHECK(p.pathloss_exp == 3.0);
  CHECK(p.carrier_hz == 2e9);
  CHECK(p.altitude == 20.0);
  CHECK(p.tx_power == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(p.noise_power == doctest::Approx(3.1622776601683793e-16).epsilon(1e-15));
  CHECK(p.a == 9.6117);
  CHECK(p.b == 0.2782);
  CHECK(p.excess_los_db == 1.0);
  CHECK(p.excess_nlos_db == 20.0);
  CHECK(p.phi == 50);
  CHECK(p.j_uavs == 2);
  const GridRegion r = region_from_config(Config::from_string(""));
  CHECK(r.n_y == 9);
  CHECK(r.n_x == 9);
  CHECK(r.delta_d == 10.0);
}

TEST_CASE("power keys convert from dBm and refuse double specification") {
  const ChannelParams p = channel_params_from_config(Config::from_string(
      "tx_power_dbm = 20\nnoise_dbm = -125\n"));
  CHECK(p.tx_power == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(p.noise_power ==
        doctest::Approx(3.1622776601683793e-16).epsilon(1e-15));
  CHECK_THROWS_AS(channel_params_from_config(Config::from_string(
                      "tx_power_dbm = 20\ntx_power_w = 0.1\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(channel_params_from_config(Config::from_string(
                      "noise_dbm = -125\nnoise_w = 1e-16\n")),
                  std::invalid_argument);
}

TEST_CASE("invalid channel values fail validation at parse time") {
  CHECK_THROWS_AS(
      channel_params_from_config(Config::from_string("pathloss_exponent = 1\n")),
      std::invalid_argument);
  CHECK_THROWS_AS(region_from_config(Config::from_string("n_y = 0\n")),
                  std::invalid_argument);
}

TEST_CASE("method specs parse and print canonically") {
  CHECK(MethodSpec::parse("to").name() == "to");
  CHECK(MethodSpec::parse("sa_km").name() == "sa_km");
  CHECK(MethodSpec::parse("sa_greedy").name() == "sa_greedy");
  CHECK(MethodSpec::parse("rand_greedy").name() == "rand_greedy");
  const MethodSpec knn = MethodSpec::parse("knn(300,10)");
  CHECK(knn.kind == MethodSpec::Kind::knn);
  CHECK(knn.w == 300);
  CHECK(knn.k == 10);
  CHECK(knn.name() == "knn(300,10)");
  CHECK_THROWS_AS(MethodSpec::parse("knn(300)"), std::invalid_argument);
  CHECK_THROWS_AS(MethodSpec::parse("knn(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(MethodSpec::parse("magic"), std::invalid_argument);
}

TEST_CASE("experiment config wires everything together") {
  const ExperimentConfig e = experiment_from_config(Config::from_string(
      "n_y = 5\nn_x = 5\ndelta_d_m = 30\n"
      "min_rate_bps = 1.1e6\nphi = 10\n"
      "methods = to, knn(30,5), sa_km\n"
      "mu = -1, -0.2\nsigma = 0.6\n"
      "n_test = 4\nseed = 99\n"
      "sa_annealing_rate = 0.9\nsa_iterations_per_temperature = 3\n"
      "sa_initial_temperature = 1e7\n"));
  CHECK(e.region.n_y == 5);
  CHECK(e.params.min_rate == 1.1e6);
  CHECK(e.params.phi == 10);
  REQUIRE(e.methods.size() == 3);
  CHECK(e.methods[1].name() == "knn(30,5)");
  CHECK(e.mus == std::vector<double>{-1.0, -0.2});
  CHECK(e.sigmas == std::vector<double>{0.6});
  CHECK(e.n_test == 4);
  CHECK(e.seed == 99);
  CHECK(e.sa.annealing_rate == 0.9);
  CHECK(e.sa.iterations_per_temperature == 3);
  CHECK(e.sa.initial_temperature == 1e7);

  const ExperimentConfig d = experiment_from_config(Config::from_string(""));
  REQUIRE(d.methods.size() == 5);  // full default method set
  CHECK(d.methods[0].name() == "to");
  CHECK(d.methods[1].name() == "knn(300,10)");
  CHECK(d.sa.initial_temperature == 0.0);  // auto
  CHECK_THROWS_AS(experiment_from_config(Config::from_string("n_test = 0\n")),
                  std::invalid_argument);
}

}  // TEST_SUITE
