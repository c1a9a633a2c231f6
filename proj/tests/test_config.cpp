#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "wavelab/config.hpp"
#include "wavelab/errors.hpp"

using namespace wavelab;

namespace {

const char* kMinimal = R"(
[[bump]]
component = 1
kind = f
center = "0, 0"
radius = 2
amplitude = 1
)";

template <class F>
std::string validation_field(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

template <class F>
int parse_line(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("minimal document takes the documented defaults") {
  const auto cfg = parse_scenario(kMinimal);
  CHECK(cfg.mode == SolverMode::cartesian2d);
  CHECK(cfg.h == 2.0 / 128.0);
  CHECK(cfg.cfl == kDefaultCfl);
  CHECK(cfg.cfl == 0.45);
  CHECK(cfg.T == 20.0);
  CHECK(cfg.data.epsilon == 0.1);
  REQUIRE(cfg.data.f[0].size() == 1);
  CHECK(cfg.data.f[0][0].radius == 2.0);
  CHECK(cfg.data.g[0].empty());
  CHECK(cfg.data.f[1].empty());
}

TEST_CASE("empty data defaults to unit resolution scale") {
  const auto cfg = parse_scenario("[grid]\nmode = radial\n");
  CHECK(cfg.h == 1.0 / 128.0);
  CHECK(cfg.mode == SolverMode::radial);
}

TEST_CASE("lists, thresholds and options are parsed") {
  const auto cfg = parse_scenario(R"(
[scenario]
name = epsilon-scaling
t_eval_factor = 3.5
[data]
epsilon = 0.4, 0.2, 0.1
sigma_samples = (-1, 0)
[thresholds]
residual_slope = 2.2
)");
  CHECK(cfg.scenario == "epsilon-scaling");
  CHECK(cfg.option("t_eval_factor", 0.0) == 3.5);
  CHECK(cfg.option("missing", -7.0) == -7.0);
  CHECK(cfg.threshold("residual_slope", 0.0) == 2.2);
  REQUIRE(cfg.epsilons.size() == 3);
  CHECK(cfg.data.epsilon == 0.4);
  CHECK(cfg.sigma_samples == std::vector<double>{-1.0, 0.0});
}

TEST_CASE("invalid values name the offending field") {
  CHECK(validation_field([] {
          parse_scenario("[[bump]]\ncomponent = 1\nkind = f\ncenter = \"0, 0\"\nradius = -1\namplitude = 1\n");
        }) == "bump[0].radius");
  CHECK(validation_field([] {
          parse_scenario("[grid]\nmode = radial\n[[bump]]\ncomponent = 2\nkind = g\ncenter = \"0.5, 0\"\nradius = 1\namplitude = 1\n");
        }) == "mode");
  CHECK(validation_field([] { parse_scenario("[grid]\nmode = spherical\n"); }) == "mode");
  CHECK(validation_field([] { parse_scenario("[data]\nepsilon = 0\n"); }) == "epsilon");
  CHECK(validation_field([] { parse_scenario("[grid]\nT = -1\n"); }) == "T");
  CHECK(validation_field([] { parse_scenario("[grid]\ncfl = 0.6\n"); }) == "cfl");
  CHECK(validation_field([] { parse_scenario("[grid]\nmode = radial\ncfl = 0.6\n"); }) == "<no error>");
  CHECK(validation_field([] { parse_scenario("[grid]\nh = 0\n"); }) == "h");
  CHECK(validation_field([] {
          parse_scenario("[[bump]]\ncomponent = 3\nkind = f\ncenter = \"0, 0\"\nradius = 1\namplitude = 1\n");
        }) == "bump[0].component");
  CHECK(validation_field([] { parse_scenario("[[bump]]\ncomponent = 1\nkind = f\n"); }) == "bump[0].center");
}

TEST_CASE("malformed text reports its line") {
  CHECK(parse_line([] { parse_scenario("[grid]\nh = abc\n"); }) == 2);
  CHECK(parse_line([] { parse_scenario("\n\n[nonsense]\n"); }) == 3);
  CHECK(parse_line([] { parse_scenario("[grid]\nmode radial\n"); }) == 2);
  CHECK(parse_line([] { parse_scenario("[grid]\nspeed = 2\n"); }) == 2);
  CHECK(parse_line([] { parse_scenario("[[bump]]\ncomponent = 1\ncolour = red\n"); }) == 3);
  try {
    parse_scenario("[grid]\nh = abc\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).starts_with("line 2: "));
  }
}

TEST_CASE("overrides apply before validation") {
  auto cfg = parse_scenario(kMinimal, {"h=0.05", "data.epsilon=0.3", "thresholds.x=4", "T=7", "knob=2"});
  CHECK(cfg.h == 0.05);
  CHECK(cfg.data.epsilon == 0.3);
  CHECK(cfg.threshold("x", 0.0) == 4.0);
  CHECK(cfg.T == 7.0);
  CHECK(cfg.option("knob", 0.0) == 2.0);
  CHECK_THROWS_AS(parse_scenario(kMinimal, {"no_equals"}), ParseError);
  CHECK_THROWS_AS(parse_scenario(kMinimal, {"bogus.h=1"}), ParseError);
  CHECK_THROWS_AS(parse_scenario(kMinimal, {"cfl=2"}), ValidationError);
}

TEST_CASE("configuration files load from disk") {
  const std::string path = "wavelab_test_config.toml";
  {
    std::ofstream out(path);
    out << kMinimal;
  }
  const auto cfg = load_scenario_file(path, {"T=3"});
  CHECK(cfg.T == 3.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/wavelab.toml"), ValidationError);
}
