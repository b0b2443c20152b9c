#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "dfarpl/config.hpp"

using namespace dfarpl;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << body;
  return path;
}

} // namespace

TEST_CASE("defaults validate and match the documented profile") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.n_nodes == 100);
  CHECK(cfg.area_width == doctest::Approx(300.0));
  CHECK(cfg.area_height == doctest::Approx(300.0));
  CHECK(cfg.tx_range == doctest::Approx(60.0));
  CHECK(cfg.intruder_ratio == 0.0);
  CHECK(cfg.packet_size == 512);
  CHECK(cfg.sim_duration == doctest::Approx(200.0));
  CHECK(cfg.cbr_interval == doctest::Approx(1.0));
  CHECK(cfg.flood_interval < cfg.cbr_interval);
  CHECK(cfg.detection_enabled);
  CHECK(cfg.detection_window == doctest::Approx(5.0));
  CHECK(cfg.rtt_prior == doctest::Approx(0.25));
  CHECK(cfg.flag_factor > 1.0);
}

TEST_CASE("flood_until: negative means run-long") {
  SimConfig cfg;
  cfg.sim_duration = 120.0;
  cfg.flood_until = -1.0;
  CHECK(cfg.effective_flood_until() == doctest::Approx(120.0));
  cfg.flood_until = 40.0;
  CHECK(cfg.effective_flood_until() == doctest::Approx(40.0));
}

TEST_CASE("validate rejects broken invariants") {
  SimConfig cfg;

  SUBCASE("too few nodes") {
    cfg.n_nodes = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("flood slower than cbr") {
    cfg.flood_interval = 2.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("flag factor at or below 1") {
    cfg.flag_factor = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("ratio outside [0,1]") {
    cfg.intruder_ratio = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("nonpositive area") {
    cfg.area_width = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("nonpositive duration") {
    cfg.sim_duration = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}

TEST_CASE("apply_key_value parses each type and rejects junk") {
  SimConfig cfg;
  apply_key_value(cfg, "n_nodes", "42");
  CHECK(cfg.n_nodes == 42);
  apply_key_value(cfg, "tx_range", "75.5");
  CHECK(cfg.tx_range == doctest::Approx(75.5));
  apply_key_value(cfg, "detection_enabled", "0");
  CHECK_FALSE(cfg.detection_enabled);
  apply_key_value(cfg, "rng_seed", "123456789");
  CHECK(cfg.rng_seed == 123456789);

  CHECK_THROWS_AS(apply_key_value(cfg, "no_such_key", "1"), ConfigError);
  CHECK_THROWS_AS(apply_key_value(cfg, "n_nodes", "banana"), ConfigError);
}

TEST_CASE("load_config: comments, blanks, and overrides") {
  auto path = write_temp("dfarpl_cfg_ok.conf",
                         "# comment line\n"
                         "\n"
                         "n_nodes=30\n"
                         "intruder_ratio=0.2   # trailing comment\n"
                         "sim_duration=50\n");
  SimConfig cfg = load_config(path);
  CHECK(cfg.n_nodes == 30);
  CHECK(cfg.intruder_ratio == doctest::Approx(0.2));
  CHECK(cfg.sim_duration == doctest::Approx(50.0));
  // untouched keys keep defaults
  CHECK(cfg.tx_range == doctest::Approx(60.0));
  std::remove(path.c_str());
}

TEST_CASE("load_config: unknown key and missing file fail") {
  auto path = write_temp("dfarpl_cfg_bad.conf", "definitely_not_a_key=1\n");
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS(load_config("/tmp/dfarpl_no_such_file.conf"));
}
