// Command-line front end: runs configured or built-in scenarios and reports pass/fail.
// Exit status: 0 all assertions pass, 1 an assertion failed, 2 usage or configuration
// error, 3 the run itself failed (instability, numerical failure, I/O).

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavelab/errors.hpp"
#include "wavelab/scenarios.hpp"

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WAVELAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "wavelab: ignoring invalid WAVELAB_THREADS='" << env << "'\n";
  }
  return 0;
}

void print_report(const wavelab::ScenarioReport& report) {
  for (const auto& a : report.assertions) {
    std::printf("%s %-28s %.6g", a.pass ? "PASS" : "FAIL", a.name.c_str(), a.value);
    if (std::isfinite(a.lower)) std::printf("  >= %.6g", a.lower);
    if (std::isfinite(a.upper)) std::printf("  <= %.6g", a.upper);
    std::printf("\n");
  }
  std::printf("%s: %s\n", report.scenario.c_str(), report.passed() ? "pass" : "FAIL");
}

int execute(const wavelab::ScenarioConfig& config) {
  const auto report = wavelab::run_scenario(config);
  print_report(report);
  std::printf("reports written to %s\n", config.output_dir.c_str());
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelab: coupled cubic wave system laboratory"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: WAVELAB_THREADS, then the runtime default)");

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "run the scenario described by a configuration file");
  run->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides [scenario] out)");
  run->add_option("--set", overrides, "override, key=value or section.key=value");
  run->add_option("--threads", threads, "OpenMP threads");

  std::string name;
  auto* scenario = app.add_subcommand("scenario", "run a built-in scenario");
  scenario->add_option("name", name, "scenario name")->required();
  scenario->add_option("--out", out_dir, "output directory")->required();
  scenario->add_option("--set", overrides, "override, key=value or section.key=value");
  scenario->add_option("--threads", threads, "OpenMP threads");

  auto* config = app.add_subcommand("config", "print the default configuration of a built-in scenario");
  config->add_option("name", name, "scenario name")->required();

  auto* list = app.add_subcommand("list", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& n : wavelab::scenario_names()) std::printf("%s\n", n.c_str());
      return 0;
    }
    if (*config) {
      std::fputs(std::string(wavelab::builtin_config(name)).c_str(), stdout);
      return 0;
    }
    if (const int n = resolve_threads(threads); n > 0) omp_set_num_threads(n);

    wavelab::ScenarioConfig cfg;
    if (*run) {
      cfg = wavelab::load_scenario_file(config_path, overrides);
    } else {
      cfg = wavelab::builtin_scenario(name, overrides);
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return execute(cfg);
  } catch (const wavelab::UnknownScenario& e) {
    std::cerr << "wavelab: " << e.what() << "; known:";
    for (const auto& n : wavelab::scenario_names()) std::cerr << ' ' << n;
    std::cerr << '\n';
    return 2;
  } catch (const wavelab::ParseError& e) {
    std::cerr << "wavelab: parse error, " << e.what() << '\n';
    return 2;
  } catch (const wavelab::ValidationError& e) {
    std::cerr << "wavelab: invalid configuration, " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "wavelab: run failed: " << e.what() << '\n';
    return 3;
  }
}
