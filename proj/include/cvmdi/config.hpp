#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvmdi/analysis.hpp"
#include "cvmdi/gaussian_keyrate.hpp"
#include "cvmdi/params.hpp"

namespace cvmdi {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
std::string_view to_string(PhaseReference reference);

/// Everything one CLI invocation needs. Serializes to a flat JSON object
/// whose keys are listed by `run_config_keys()`.
struct RunConfig {
  SystemParams params;
  Scenario scenario;
  PhaseReference reference = PhaseReference::imperfect;
  SweepSpec sweep;
  Interval vm_range{1.0, 40.0};
  double vm_tol = 0.01;
  Interval v_laser_bracket{1e-6, 0.2};
  Interval distance_bracket{0.0, 300.0};
  double distance_tol = 0.01;
  std::size_t mc_pulses = 100000;
  std::uint64_t mc_seed = 42;
  /// Unset means csv for tables, json for scalar reports.
  std::optional<OutputFormat> format;
  /// Empty means stdout.
  std::string output;

  /// Parameters with the relay placed per `scenario`.
  SystemParams placed_params() const { return build_scenario(scenario, params); }
};

bool operator==(const RunConfig& lhs, const RunConfig& rhs);

const std::vector<std::string>& run_config_keys();

nlohmann::json to_json(const RunConfig& cfg);

/// Overlays `patch` onto `base`. Unknown keys and wrongly typed values throw
/// ConfigError naming the key.
RunConfig apply_json(RunConfig base, const nlohmann::json& patch);

inline RunConfig from_json(const nlohmann::json& j) { return apply_json(RunConfig{}, j); }

/// Parses the text of a config file (a flat JSON object).
RunConfig parse_run_config(std::string_view text, RunConfig base = {});

}  // namespace cvmdi
