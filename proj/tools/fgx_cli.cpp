// Batch front end: parse a JSON run configuration, drive the expansion /
// obstruction / verification / root-table machinery, and emit the report.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fgx/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fefferman-Graham expansion engine for asymptotically de Sitter vacuum metrics"};

  std::string config_path;
  std::string mode_override;
  std::string out_override;
  double tol_scale = 1.0;
  unsigned long long seed = 0;
  bool seed_set = false;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--mode", mode_override, "override the config mode (expand|obstruction|verify|roots)");
  app.add_option("--out", out_override, "output directory for report.json and artifacts");
  app.add_option("--tol-scale", tol_scale, "multiply every tolerance by this factor");
  app.add_option("--seed", seed, "seed echoed into reports (randomized property suites)")
      ->each([&seed_set](const std::string&) { seed_set = true; });

  CLI11_PARSE(app, argc, argv);

  fgx::RunConfig config;
  try {
    config = fgx::parse_config(config_path);
    if (!mode_override.empty()) config.mode = mode_override;
    if (!out_override.empty()) config.out_dir = out_override;
    if (tol_scale != 1.0) config.tol.scale_factor *= tol_scale;
    if (seed_set) config.seed = seed;

    // Re-validate after overrides (a mode override may change requirements).
    config = fgx::config_from_json_text(fgx::config_to_json_text(config));
  } catch (const fgx::ConfigError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  }

  const fgx::RunOutcome outcome = fgx::run(config);
  std::cout << outcome.report_json << "\n";
  if (outcome.exit_code != 0) std::cerr << outcome.error << "\n";
  return outcome.exit_code;
}
