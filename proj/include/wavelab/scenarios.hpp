#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wavelab/config.hpp"
#include "wavelab/report.hpp"

namespace wavelab {

class UnknownScenario : public std::invalid_argument {
 public:
  explicit UnknownScenario(const std::string& name) : std::invalid_argument("unknown scenario '" + name + "'") {}
};

/// conservation, free-validation, radiation-decay, profile-oracle, epsilon-scaling,
/// nondecay-demo, symmetric-decay.
const std::vector<std::string>& scenario_names();

/// Default configuration document of a named scenario. Throws UnknownScenario.
std::string_view builtin_config(std::string_view name);

/// parse_scenario(builtin_config(name), overrides).
ScenarioConfig builtin_scenario(std::string_view name, const std::vector<std::string>& overrides = {});

/// Runs config.scenario, writes its CSVs plus summary.json and runtimes.json into
/// config.output_dir and returns the report. Throws UnknownScenario for an unknown name and
/// ValidationError when the configuration does not fit the experiment.
ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace wavelab
