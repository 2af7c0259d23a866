#include "cvmdi/analysis.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <string>

#include "parallel.hpp"

namespace cvmdi {
namespace {

std::string describe_point(SweepAxis axis, double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(9);
  os << " (at " << to_string(axis) << " = " << value << ")";
  return os.str();
}

// Rethrows the in-flight exception with the axis value appended, keeping its
// category so the CLI maps it to the same exit code.
[[noreturn]] void rethrow_at(SweepAxis axis, double value) {
  const std::string where = describe_point(axis, value);
  try {
    throw;
  } catch (const ValidationError& e) {
    auto v = e.violations();
    for (auto& item : v) item += where;
    throw ValidationError(std::move(v));
  } catch (const ConfigError& e) {
    throw ConfigError(e.what() + where);
  } catch (const DomainError& e) {
    throw DomainError(e.what() + where);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(e.what() + where);
  }
}

double key_rate_or_throw(const SystemParams& params, const Scenario& scenario) {
  return evaluate(params, scenario).key_rate;
}

bool is_derived(ScenarioKind kind) {
  return kind == ScenarioKind::extreme_asymmetric || kind == ScenarioKind::symmetric;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::v_mod:
      return "v_mod";
    case SweepAxis::distance_km:
      return "distance_km";
    case SweepAxis::v_laser:
      return "v_laser";
    case SweepAxis::lo_ratio:
      return "lo_ratio";
  }
  throw ConfigError("invalid sweep axis");
}

std::string_view to_string(SweepScale scale) { return scale == SweepScale::log10 ? "log10" : "linear"; }

SweepAxis sweep_axis_from_string(std::string_view name) {
  if (name == "v_mod") return SweepAxis::v_mod;
  if (name == "distance_km") return SweepAxis::distance_km;
  if (name == "v_laser") return SweepAxis::v_laser;
  if (name == "lo_ratio") return SweepAxis::lo_ratio;
  throw ConfigError("sweep_axis: expected v_mod, distance_km, v_laser or lo_ratio, got '" + std::string(name) + "'");
}

SweepScale sweep_scale_from_string(std::string_view name) {
  if (name == "linear") return SweepScale::linear;
  if (name == "log10") return SweepScale::log10;
  throw ConfigError("sweep_scale: expected linear or log10, got '" + std::string(name) + "'");
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<std::string> bad;
  if (!(spec.start < spec.stop) || !std::isfinite(spec.start) || !std::isfinite(spec.stop)) {
    bad.emplace_back("sweep_start/sweep_stop: require start < stop");
  }
  if (spec.points < 2) bad.emplace_back("sweep_points: must be >= 2");
  if (spec.scale == SweepScale::log10 && !(spec.start > 0.0)) {
    bad.emplace_back("sweep_start: log10 scale requires start > 0");
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  const auto n = static_cast<std::size_t>(spec.points);
  std::vector<double> grid(n);
  if (spec.scale == SweepScale::linear) {
    const double step = (spec.stop - spec.start) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = spec.start + step * static_cast<double>(i);
  } else {
    const double lo = std::log10(spec.start);
    const double step = (std::log10(spec.stop) - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = std::pow(10.0, lo + step * static_cast<double>(i));
  }
  grid.front() = spec.start;
  grid.back() = spec.stop;
  return grid;
}

void apply_axis(SweepAxis axis, double value, SystemParams& params, Scenario& scenario) {
  switch (axis) {
    case SweepAxis::v_mod:
      params.v_mod = value;
      return;
    case SweepAxis::distance_km:
      if (!is_derived(scenario.kind)) {
        throw ConfigError("sweep_axis: distance_km requires scenario extreme_asymmetric or symmetric");
      }
      scenario.total_distance_km = value;
      return;
    case SweepAxis::v_laser:
      params.v_laser_override = value;
      params.linewidth_a_hz = 0.0;
      params.linewidth_b_hz = 0.0;
      return;
    case SweepAxis::lo_ratio:
      params.lo_ratio = value;
      return;
  }
  throw ConfigError("invalid sweep axis");
}

KeyRateResult<double> evaluate(const SystemParams& params, const Scenario& scenario, PhaseReference reference) {
  return secret_key_rate<double>(build_scenario(scenario, params), reference);
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const SystemParams& params, const Scenario& scenario,
                            PhaseReference reference) {
  const std::vector<double> grid = sweep_grid(spec);
  validate(params);
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());

  detail::parallel_for(grid.size(), [&](std::size_t i) {
    try {
      try {
        SystemParams p = params;
        Scenario s = scenario;
        apply_axis(spec.axis, grid[i], p, s);
        const auto r = evaluate(p, s, reference);
        rows[i] = {grid[i], r.key_rate, r.i_ab, r.chi_be, r.calibration.eps_prc, r.feasible()};
      } catch (...) {
        rethrow_at(spec.axis, grid[i]);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

ScalarMaximum maximize_scan_golden(const std::function<double(double)>& objective, Interval range, double tol,
                                   int scan_points) {
  if (!(range.lo < range.hi)) throw ConfigError("maximize: empty range");
  if (!(tol > 0.0)) throw ConfigError("maximize: tolerance must be > 0");
  if (scan_points < 3) throw ConfigError("maximize: need at least 3 scan points");

  const double step = (range.hi - range.lo) / static_cast<double>(scan_points - 1);
  const auto at = [&](int i) { return i == scan_points - 1 ? range.hi : range.lo + step * i; };

  ScalarMaximum best{range.lo, objective(range.lo)};
  int best_index = 0;
  for (int i = 1; i < scan_points; ++i) {
    const double x = at(i);
    const double f = objective(x);
    if (f > best.value) {
      best = {x, f};
      best_index = i;
    }
  }

  double lo = at(std::max(0, best_index - 1));
  double hi = at(std::min(scan_points - 1, best_index + 1));
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    }
  }
  const ScalarMaximum refined = f1 >= f2 ? ScalarMaximum{x1, f1} : ScalarMaximum{x2, f2};
  return refined.value >= best.value ? refined : best;
}

VmOptimum optimize_vm(const SystemParams& params, const Scenario& scenario, Interval v_range, double tol) {
  validate(params);
  if (!(v_range.lo > 0.0)) throw ConfigError("vm_min: must be > 0");
  const auto objective = [&](double v_mod) {
    SystemParams p = params;
    p.v_mod = v_mod;
    return key_rate_or_throw(p, scenario);
  };
  const ScalarMaximum m = maximize_scan_golden(objective, v_range, tol);
  if (!(m.value > 0.0)) {
    throw InfeasibleError("optimize_vm: key rate <= 0 for every V_M in the range");
  }
  return {m.x, m.value};
}

double tolerance_v_laser(const SystemParams& params, const Scenario& scenario, Interval bracket, double tol) {
  validate(params);
  if (!(bracket.lo >= 0.0) || !(bracket.lo < bracket.hi)) {
    throw ConfigError("v_laser_lo/v_laser_hi: require 0 <= lo < hi");
  }
  const auto k_at = [&](double v_laser) {
    SystemParams p = params;
    Scenario s = scenario;
    apply_axis(SweepAxis::v_laser, v_laser, p, s);
    return key_rate_or_throw(p, s);
  };
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(k_at(lo) > 0.0)) throw InfeasibleError("tolerance_v_laser: key rate is not positive at the bracket low end");
  if (k_at(hi) > 0.0) throw InfeasibleError("tolerance_v_laser: key rate is still positive at the bracket high end");

  // Past `tol` keep halving until the key rate itself is negligible, so the
  // result is a root in K as well as in V_laser.
  constexpr double kKeyRateTol = 1e-9;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    const double k = k_at(mid);
    if (hi - lo <= 2.0 * tol && std::abs(k) <= kKeyRateTol) return mid;
    if (k > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double max_distance(const SystemParams& params, const Scenario& scenario, Interval bracket_km, double tol) {
  validate(params);
  if (!is_derived(scenario.kind)) {
    throw ConfigError("scenario: max_distance requires extreme_asymmetric or symmetric");
  }
  if (!(bracket_km.lo >= 0.0) || !(bracket_km.lo < bracket_km.hi)) {
    throw ConfigError("distance_lo/distance_hi: require 0 <= lo < hi");
  }
  if (!(tol > 0.0)) throw ConfigError("distance_tol: must be > 0");
  const auto k_at = [&](double d) { return key_rate_or_throw(params, Scenario{scenario.kind, d}); };

  double lo = bracket_km.lo;
  double hi = bracket_km.hi;
  if (!(k_at(lo) > 0.0)) throw InfeasibleError("max_distance: no key at the bracket low end");
  if (k_at(hi) > 0.0) throw InfeasibleError("max_distance: key rate still positive at the bracket high end");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (k_at(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace cvmdi
