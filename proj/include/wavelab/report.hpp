#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/profile.hpp"
#include "wavelab/radiation.hpp"
#include "wavelab/solver.hpp"

namespace wavelab {

/// One checked quantity: passes iff lower <= value <= upper (NaN never passes).
struct Assertion {
  std::string name;
  double value = 0.0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool pass = false;
  std::string note;
};

Assertion assert_at_most(std::string name, double value, double upper, std::string note = {});
Assertion assert_at_least(std::string name, double value, double lower, std::string note = {});
Assertion assert_within(std::string name, double value, double lower, double upper, std::string note = {});

struct ScenarioReport {
  std::string scenario;
  std::vector<Assertion> assertions;
  /// Scenario-specific measurements; written verbatim into summary.json.
  nlohmann::json values = nlohmann::json::object();
  /// Wall-clock seconds per phase; kept out of summary.json so reruns are byte-identical.
  std::map<std::string, double> runtimes;

  bool passed() const;
  /// Throws std::out_of_range for an unknown name.
  const Assertion& at(const std::string& name) const;
};

/// Decimal form that round-trips exactly ("%.17g").
std::string format_double(double x);

void write_radiation_csv(const std::filesystem::path& path, const RadiationTable& table);
void write_energy_csv(const std::filesystem::path& path, const EnergyTrace& trace);
void write_profile_csv(const std::filesystem::path& path, const ProfileTrace& trace);
void write_mestimates_csv(const std::filesystem::path& path, const std::vector<MEstimate>& rows);

/// Generic CSV: header plus rows of numbers, each formatted with format_double.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// summary.json (assertions and values) and runtimes.json in `dir`.
void write_summary(const std::filesystem::path& dir, const ScenarioReport& report);

}  // namespace wavelab
