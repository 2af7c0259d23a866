#include "cvmdi/presets.hpp"

#include <exception>

#include "cvmdi/analysis.hpp"
#include "cvmdi/errors.hpp"
#include "parallel.hpp"

namespace cvmdi {
namespace {

struct Curve {
  std::string name;
  SystemParams params;
  Scenario scenario;
  PhaseReference reference = PhaseReference::imperfect;
  bool plob = false;
};

struct Figure {
  std::string axis_name;
  SweepSpec grid;
  std::vector<Curve> curves;
};

SystemParams base_params(double v_mod) {
  SystemParams p;
  p.v_mod = v_mod;
  return p;
}

Figure vm_figure(ScenarioKind kind, std::initializer_list<int> distances) {
  Figure f{"v_mod", {SweepAxis::v_mod, 0.1, 40.0, 400, SweepScale::linear}, {}};
  for (int d : distances) {
    const Scenario s{kind, static_cast<double>(d)};
    const std::string tag = "_d" + std::to_string(d);
    f.curves.push_back({"k_prc" + tag, SystemParams{}, s, PhaseReference::imperfect});
    f.curves.push_back({"k_ideal" + tag, SystemParams{}, s, PhaseReference::ideal});
  }
  return f;
}

Figure distance_figure(ScenarioKind kind, double v_mod, double max_km) {
  Figure f{"distance_km", {SweepAxis::distance_km, 0.0, max_km, 201, SweepScale::linear}, {}};
  const Scenario s{kind, 0.0};
  for (const auto& [label, value] : {std::pair{"0.005", 0.005}, {"0.01", 0.01}, {"0.02", 0.02}}) {
    SystemParams p = base_params(v_mod);
    p.v_laser_override = value;
    f.curves.push_back({std::string("k_prc_vl_") + label, p, s});
  }
  f.curves.push_back({"k_ideal", base_params(v_mod), s, PhaseReference::ideal});
  f.curves.push_back({"plob", base_params(v_mod), s, PhaseReference::ideal, true});
  return f;
}

Figure v_laser_figure(ScenarioKind kind, double v_mod, double distance_km, double max_v_laser) {
  Figure f{"v_laser", {SweepAxis::v_laser, 0.0, max_v_laser, 201, SweepScale::linear}, {}};
  const std::string d_tag = "k_d" + std::to_string(static_cast<int>(distance_km));
  for (const auto& [label, ratio] : {std::pair{"1e8", 1e8}, {"1e3", 1e3}, {"1e2", 1e2}}) {
    SystemParams p = base_params(v_mod);
    p.lo_ratio = ratio;
    f.curves.push_back({d_tag + "_lo" + label, p, Scenario{kind, distance_km}});
  }
  f.curves.push_back({"k_d0_lo1e8", base_params(v_mod), Scenario{kind, 0.0}});
  return f;
}

Figure figure(std::string_view name) {
  constexpr auto asym = ScenarioKind::extreme_asymmetric;
  constexpr auto sym = ScenarioKind::symmetric;
  if (name == "fig4") return vm_figure(asym, {10, 20, 30});
  if (name == "fig5") return distance_figure(asym, 6.0, 100.0);
  if (name == "fig6") return v_laser_figure(asym, 6.0, 20.0, 0.05);
  if (name == "fig7") return vm_figure(sym, {2, 3, 4});
  if (name == "fig8") return distance_figure(sym, 12.0, 8.0);
  if (name == "fig9") return v_laser_figure(sym, 12.0, 3.0, 0.03);
  throw ConfigError("preset: unknown name '" + std::string(name) + "', expected one of fig4..fig9");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
  return names;
}

SeriesTable run_preset(std::string_view name) {
  const Figure fig = figure(name);
  SeriesTable t;
  t.name = std::string(name);
  t.axis_name = fig.axis_name;
  t.axis = sweep_grid(fig.grid);
  for (const auto& c : fig.curves) t.series_names.push_back(c.name);
  t.series.assign(fig.curves.size(), std::vector<double>(t.axis.size()));

  const std::size_t total = fig.curves.size() * t.axis.size();
  std::vector<std::exception_ptr> errors(total);
  detail::parallel_for(total, [&](std::size_t k) {
    const std::size_t s = k / t.axis.size();
    const std::size_t i = k % t.axis.size();
    try {
      const Curve& c = fig.curves[s];
      SystemParams p = c.params;
      Scenario sc = c.scenario;
      apply_axis(fig.grid.axis, t.axis[i], p, sc);
      const auto r = evaluate(p, sc, c.reference);
      t.series[s][i] = c.plob ? r.plob : r.key_rate;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return t;
}

}  // namespace cvmdi
