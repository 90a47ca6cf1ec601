#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fgx/boundary_data.hpp"
#include "fgx/modes.hpp"

namespace fgx {

/// Invalid run configuration; carries every violated constraint.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::vector<std::string> violations = {})
      : std::runtime_error(message), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct ChartSpec {
  std::vector<int> resolution;
  std::vector<double> period;  // empty means 2*pi on every axis
};

/// Batch run description. Mode-component indices are stored 0-based here;
/// the JSON schema uses 1-based components (1..n).
struct RunConfig {
  int n = 3;
  int N = 4;
  ChartSpec chart;
  std::vector<FourierMode> g0_modes;  // added to the flat metric
  std::vector<FourierMode> gn_modes;  // added to zero
  std::string mode = "expand";        // expand | obstruction | verify | roots
  std::vector<double> s_samples;      // empty picks the default window
  Tolerances tol{};
  std::string out_dir;                // empty: no files written
  unsigned long long seed = 0;        // echoed into the report
};

/// Parse and validate a JSON config file. Throws ConfigError listing every
/// violated constraint.
RunConfig parse_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& config);

/// FNV-1a hash of the canonical serialized config.
std::string config_hash(const RunConfig& config);

/// Exit codes: 0 ok, 2 config error, 3 solvability violation,
/// 4 verification failure.
struct RunOutcome {
  int exit_code = 0;
  std::string report_json;
  std::string error;  // one-line summary when exit_code != 0
};

/// Execute one run and, when out_dir is set, write report.json plus the
/// mode's artifacts (binary coefficient dumps with JSON headers, decay CSV).
RunOutcome run(const RunConfig& config);

}  // namespace fgx
