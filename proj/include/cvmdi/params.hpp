#pragma once

#include <optional>
#include <string_view>

namespace cvmdi {

enum class EpsPrcMode { exact, approx };

enum class ScenarioKind { extreme_asymmetric, symmetric, custom };

std::string_view to_string(EpsPrcMode mode);
std::string_view to_string(ScenarioKind kind);
EpsPrcMode eps_prc_mode_from_string(std::string_view name);
ScenarioKind scenario_kind_from_string(std::string_view name);

struct Scenario {
  ScenarioKind kind = ScenarioKind::extreme_asymmetric;
  double total_distance_km = 0.0;
};

/// Every physical and protocol input of the key-rate model. Variances are in
/// shot-noise units, phase variances in rad^2.
///
/// V_laser comes from `v_laser_override` when set, otherwise from the two
/// laser linewidths and the repetition rate.
struct SystemParams {
  double v_mod = 6.0;
  double beta = 0.96;
  double eps_a = 0.002;
  double eps_b = 0.002;
  double l_ac_km = 0.0;
  double l_bc_km = 0.0;
  double loss_db_per_km = 0.2;
  double rep_rate_hz = 5.0e7;
  double linewidth_a_hz = 0.0;
  double linewidth_b_hz = 0.0;
  /// |alpha_LO|^2 / V_M
  double lo_ratio = 1.0e8;
  std::optional<double> v_laser_override = 0.005;
  EpsPrcMode eps_prc_mode = EpsPrcMode::approx;

  /// |alpha_LO|^2 in photon number.
  double lo_intensity() const { return lo_ratio * v_mod; }

  /// Relative phase drift variance between the two free-running lasers.
  double v_laser() const;

  bool operator==(const SystemParams&) const = default;
};

/// Throws ValidationError listing every violated invariant; returns the
/// parameters unchanged otherwise.
const SystemParams& validate(const SystemParams& params);

/// Places the relay: extreme_asymmetric puts Charlie at Bob (L_AC = D,
/// L_BC = 0), symmetric puts him midway, custom keeps the given lengths.
SystemParams build_scenario(const Scenario& scenario, SystemParams base);

}  // namespace cvmdi
