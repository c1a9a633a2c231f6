#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wavelab/report.hpp"

using namespace wavelab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wavelab_test_report_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("assertion bounds are inclusive and NaN never passes") {
  CHECK(assert_at_most("a", 1.0, 1.0).pass);
  CHECK_FALSE(assert_at_most("a", 1.0000001, 1.0).pass);
  CHECK(assert_at_least("b", -2.0, -2.0).pass);
  CHECK_FALSE(assert_at_least("b", -2.1, -2.0).pass);
  CHECK(assert_within("c", 0.5, 0.0, 1.0).pass);
  CHECK_FALSE(assert_within("c", 1.5, 0.0, 1.0).pass);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(assert_at_most("d", nan, 1.0).pass);
  CHECK_FALSE(assert_at_least("d", nan, 1.0).pass);
  CHECK_FALSE(assert_within("d", nan, -1.0, 1.0).pass);
}

TEST_CASE("report pass requires every assertion") {
  ScenarioReport r;
  CHECK(r.passed());
  r.assertions.push_back(assert_at_most("x", 0.0, 1.0));
  CHECK(r.passed());
  r.assertions.push_back(assert_at_most("y", 2.0, 1.0));
  CHECK_FALSE(r.passed());
  CHECK(r.at("y").value == 2.0);
  CHECK_THROWS_AS(r.at("z"), std::out_of_range);
}

TEST_CASE("doubles round-trip through their decimal form") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("CSV writers emit headers and one row per record") {
  const fs::path dir = scratch_dir("csv");
  EnergyTrace tr;
  tr.records.push_back({0.0, 2.0, 1.0, 0.0, 0.0});
  tr.records.push_back({0.25, 1.5, 0.5, 0.1, 0.2});
  write_energy_csv(dir / "energy.csv", tr);
  CHECK(slurp(dir / "energy.csv") ==
        "t,E1sq,E2sq,diff,sum,dissipation,cum_dissipation\n0,2,1,1,3,0,0\n0.25,1.5,0.5,1,2,0.10000000000000001,"
        "0.20000000000000001\n");

  ProfileTrace pt;
  pt.samples.push_back({1.0, 0.5, 0.25, 0, 0, 0, false});
  pt.samples.push_back({2.0, 0.5, 0.25, 1, 2, 3, true});
  write_profile_csv(dir / "p.csv", pt);
  CHECK(slurp(dir / "p.csv") == "t,V1,V2,K1,K2,rho\n1,0.5,0.25,nan,nan,nan\n2,0.5,0.25,1,2,3\n");

  RadiationTable rt;
  rt.sigma = {-1.0, 0.0};
  rt.theta = {0.0};
  rt.F = {std::vector<double>{1, 2}, std::vector<double>{3, 4}};
  rt.dF = {std::vector<double>{5, 6}, std::vector<double>{7, 8}};
  write_radiation_csv(dir / "r.csv", rt);
  CHECK(slurp(dir / "r.csv") == "sigma,theta,F1,dF1,F2,dF2\n-1,0,1,5,3,7\n0,0,2,6,4,8\n");

  write_table_csv(dir / "t.csv", {"a", "b"}, {{1, 2}, {3, 4}});
  CHECK(slurp(dir / "t.csv") == "a,b\n1,2\n3,4\n");
  fs::remove_all(dir);
}

TEST_CASE("summary JSON carries assertions and values; runtimes stay separate") {
  const fs::path dir = scratch_dir("summary");
  ScenarioReport r;
  r.scenario = "demo";
  r.assertions.push_back(assert_at_most("err", 0.5, 1.0, "a note"));
  r.assertions.push_back(assert_at_least("nan", std::numeric_limits<double>::quiet_NaN(), 0.0));
  r.values["slope"] = -1.5;
  r.runtimes["solve"] = 1.25;
  write_summary(dir, r);
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["scenario"] == "demo");
  CHECK(j["pass"] == false);
  REQUIRE(j["assertions"].size() == 2);
  CHECK(j["assertions"][0]["value"] == 0.5);
  CHECK(j["assertions"][0]["upper"] == 1.0);
  CHECK_FALSE(j["assertions"][0].contains("lower"));
  CHECK(j["assertions"][0]["note"] == "a note");
  CHECK(j["assertions"][1]["value"].is_null());
  CHECK(j["values"]["slope"] == -1.5);
  CHECK_FALSE(j.contains("runtimes"));
  const auto rt = nlohmann::json::parse(slurp(dir / "runtimes.json"));
  CHECK(rt["solve"] == 1.25);

  const std::string first = slurp(dir / "summary.json");
  r.runtimes["solve"] = 9.0;
  write_summary(dir, r);
  CHECK(slurp(dir / "summary.json") == first);
  fs::remove_all(dir);
}
