#include "cvmdi/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cvmdi/calibration_noise.hpp"
#include "cvmdi/errors.hpp"

namespace cvmdi {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out = "invalid parameters: ";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += "; ";
    out += parts[i];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : ConfigError(join(violations)), violations_(std::move(violations)) {}

std::string_view to_string(EpsPrcMode mode) { return mode == EpsPrcMode::exact ? "exact" : "approx"; }

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::extreme_asymmetric:
      return "extreme_asymmetric";
    case ScenarioKind::symmetric:
      return "symmetric";
    case ScenarioKind::custom:
      return "custom";
  }
  throw ConfigError("invalid scenario kind");
}

EpsPrcMode eps_prc_mode_from_string(std::string_view name) {
  if (name == "exact") return EpsPrcMode::exact;
  if (name == "approx") return EpsPrcMode::approx;
  throw ConfigError("eps_prc_mode: expected 'exact' or 'approx', got '" + std::string(name) + "'");
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  if (name == "extreme_asymmetric") return ScenarioKind::extreme_asymmetric;
  if (name == "symmetric") return ScenarioKind::symmetric;
  if (name == "custom") return ScenarioKind::custom;
  throw ConfigError("scenario: expected 'extreme_asymmetric', 'symmetric' or 'custom', got '" + std::string(name) +
                    "'");
}

double SystemParams::v_laser() const {
  if (v_laser_override) return *v_laser_override;
  return cvmdi::v_laser(linewidth_a_hz, linewidth_b_hz, rep_rate_hz);
}

const SystemParams& validate(const SystemParams& p) {
  std::vector<std::string> bad;
  const auto require = [&bad](bool ok, const char* message) {
    if (!ok) bad.emplace_back(message);
  };
  // Comparisons are written so NaN fails them.
  require(p.v_mod > 0.0 && std::isfinite(p.v_mod), "v_mod: must be > 0");
  require(p.beta > 0.0 && p.beta <= 1.0, "beta: must lie in (0, 1]");
  require(p.eps_a >= 0.0 && std::isfinite(p.eps_a), "eps_a: must be >= 0");
  require(p.eps_b >= 0.0 && std::isfinite(p.eps_b), "eps_b: must be >= 0");
  require(p.l_ac_km >= 0.0 && std::isfinite(p.l_ac_km), "l_ac_km: must be >= 0");
  require(p.l_bc_km >= 0.0 && std::isfinite(p.l_bc_km), "l_bc_km: must be >= 0");
  require(p.loss_db_per_km >= 0.0 && std::isfinite(p.loss_db_per_km), "loss_db_per_km: must be >= 0");
  require(p.rep_rate_hz > 0.0 && std::isfinite(p.rep_rate_hz), "rep_rate_hz: must be > 0");
  require(p.linewidth_a_hz >= 0.0 && std::isfinite(p.linewidth_a_hz), "linewidth_a_hz: must be >= 0");
  require(p.linewidth_b_hz >= 0.0 && std::isfinite(p.linewidth_b_hz), "linewidth_b_hz: must be >= 0");
  require(p.lo_ratio > 0.0 && std::isfinite(p.lo_ratio), "lo_ratio: must be > 0");

  if (p.v_laser_override) {
    const double o = *p.v_laser_override;
    require(o >= 0.0 && std::isfinite(o), "v_laser_override: must be >= 0");
    const bool linewidths_given = p.linewidth_a_hz > 0.0 || p.linewidth_b_hz > 0.0;
    if (linewidths_given && p.rep_rate_hz > 0.0 && o >= 0.0) {
      const double derived = 2.0 * std::numbers::pi * (p.linewidth_a_hz + p.linewidth_b_hz) / p.rep_rate_hz;
      require(std::abs(derived - o) <= 1e-9 * std::max(1.0, o),
              "v_laser_override: contradicts linewidth_a_hz/linewidth_b_hz/rep_rate_hz");
    }
  }
  // T_A <= T_B keeps the normalized transmittance eta below 1.
  if (p.loss_db_per_km > 0.0 && std::isfinite(p.l_ac_km) && std::isfinite(p.l_bc_km)) {
    require(p.l_ac_km >= p.l_bc_km, "l_bc_km: must not exceed l_ac_km (relay nearer Alice is unsupported)");
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return p;
}

SystemParams build_scenario(const Scenario& scenario, SystemParams base) {
  switch (scenario.kind) {
    case ScenarioKind::custom:
      return base;
    case ScenarioKind::extreme_asymmetric:
    case ScenarioKind::symmetric:
      break;
    default:
      throw ConfigError("scenario: invalid kind");
  }
  if (!(scenario.total_distance_km >= 0.0) || !std::isfinite(scenario.total_distance_km)) {
    throw ConfigError("distance_km: must be >= 0");
  }
  if (scenario.kind == ScenarioKind::extreme_asymmetric) {
    base.l_ac_km = scenario.total_distance_km;
    base.l_bc_km = 0.0;
  } else {
    base.l_ac_km = scenario.total_distance_km / 2.0;
    base.l_bc_km = base.l_ac_km;
  }
  return base;
}

}  // namespace cvmdi
