#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/initial_data.hpp"

namespace wavelab {

enum class SolverMode { cartesian2d, radial };

std::string_view to_string(SolverMode mode);

/// Default CFL number and the resolution default h = R0 / kDefaultCellsPerRadius.
inline constexpr double kDefaultCfl = 0.45;
inline constexpr double kDefaultCellsPerRadius = 128.0;
inline constexpr double kMaxCflCartesian = 0.45;
inline constexpr double kMaxCflRadial = 0.9;

struct ScenarioConfig {
  std::string scenario = "conservation";
  InitialData data;
  SolverMode mode = SolverMode::cartesian2d;
  double h = 0.0;
  double cfl = kDefaultCfl;
  double T = 20.0;
  std::vector<double> sigma_samples{-2.0, -1.0, 0.0, 0.5};
  std::vector<double> theta_samples{0.0};
  /// epsilons.front() is also data.epsilon.
  std::vector<double> epsilons{0.1};
  std::string output_dir = "out";
  /// Numeric scenario knobs from the [scenario] section (e.g. t_eval_factor).
  std::map<std::string, double> options;
  /// Pass thresholds from the [thresholds] section.
  std::map<std::string, double> thresholds;

  double option(const std::string& key, double fallback) const;
  double threshold(const std::string& key, double fallback) const;
};

/// Parses and validates a configuration document. `overrides` are "key=value" or
/// "section.key=value" strings applied on top of the document before validation.
/// Throws ParseError (with line) or ValidationError (with field name).
ScenarioConfig parse_scenario(std::string_view text, const std::vector<std::string>& overrides = {});

ScenarioConfig load_scenario_file(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace wavelab
