#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "cvmdi/gaussian_keyrate.hpp"
#include "cvmdi/params.hpp"

namespace cvmdi {

enum class SweepAxis { v_mod, distance_km, v_laser, lo_ratio };
enum class SweepScale { linear, log10 };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(SweepScale scale);
SweepAxis sweep_axis_from_string(std::string_view name);
SweepScale sweep_scale_from_string(std::string_view name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::v_mod;
  double start = 1.0;
  double stop = 40.0;
  int points = 40;
  SweepScale scale = SweepScale::linear;

  bool operator==(const SweepSpec&) const = default;
};

struct SweepRow {
  double axis_value;
  double key_rate;
  double i_ab;
  double chi_be;
  double eps_prc;
  bool feasible;
};

struct Interval {
  double lo;
  double hi;

  bool operator==(const Interval&) const = default;
};

/// Grid points of a sweep in ascending order; the last point equals `stop`.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// Sets one axis quantity on (params, scenario). A v_laser value replaces any
/// linewidth-derived V_laser.
void apply_axis(SweepAxis axis, double value, SystemParams& params, Scenario& scenario);

/// Key-rate result after placing the relay according to `scenario`.
KeyRateResult<double> evaluate(const SystemParams& params, const Scenario& scenario,
                               PhaseReference reference = PhaseReference::imperfect);

/// One row per grid point with everything but the swept axis held fixed.
/// A failing point aborts the sweep; the error message names its axis value.
std::vector<SweepRow> sweep(const SweepSpec& spec, const SystemParams& params, const Scenario& scenario,
                            PhaseReference reference = PhaseReference::imperfect);

struct ScalarMaximum {
  double x;
  double value;
};

/// Coarse uniform scan followed by golden-section refinement around the best
/// scan point. The result is never worse than any scan point.
ScalarMaximum maximize_scan_golden(const std::function<double(double)>& objective, Interval range, double tol,
                                   int scan_points = 64);

struct VmOptimum {
  double v_mod;
  double key_rate;
};

/// Modulation variance maximizing the key rate. Throws InfeasibleError when
/// K <= 0 on the whole scan.
VmOptimum optimize_vm(const SystemParams& params, const Scenario& scenario, Interval v_range = {1.0, 40.0},
                      double tol = 0.01);

/// Largest V_laser (rad^2) with positive key rate, found by bisection.
double tolerance_v_laser(const SystemParams& params, const Scenario& scenario, Interval bracket = {1e-6, 0.2},
                         double tol = 1e-6);

/// Largest total distance (km) with positive key rate; the returned distance
/// is itself feasible. Requires a derived scenario kind.
double max_distance(const SystemParams& params, const Scenario& scenario, Interval bracket_km = {0.0, 300.0},
                    double tol = 0.01);

}  // namespace cvmdi
