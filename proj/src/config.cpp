#include "cvmdi/config.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "cvmdi/errors.hpp"

namespace cvmdi {
namespace {

using nlohmann::json;
using Setter = std::function<void(RunConfig&, const json&)>;

double number(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key + ": expected a finite number");
  return x;
}

std::uint64_t whole(const std::string& key, const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x >= 0.0 && x <= 9.007199254740992e15 && std::floor(x) == x) return static_cast<std::uint64_t>(x);
  }
  throw ConfigError(key + ": expected a non-negative integer");
}

std::string text(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

Setter num(std::string key, double SystemParams::*field) {
  return [key = std::move(key), field](RunConfig& c, const json& v) { c.params.*field = number(key, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["v_mod"] = num("v_mod", &SystemParams::v_mod);
    t["beta"] = num("beta", &SystemParams::beta);
    t["eps_a"] = num("eps_a", &SystemParams::eps_a);
    t["eps_b"] = num("eps_b", &SystemParams::eps_b);
    t["l_ac_km"] = num("l_ac_km", &SystemParams::l_ac_km);
    t["l_bc_km"] = num("l_bc_km", &SystemParams::l_bc_km);
    t["loss_db_per_km"] = num("loss_db_per_km", &SystemParams::loss_db_per_km);
    t["rep_rate_hz"] = num("rep_rate_hz", &SystemParams::rep_rate_hz);
    t["linewidth_a_hz"] = num("linewidth_a_hz", &SystemParams::linewidth_a_hz);
    t["linewidth_b_hz"] = num("linewidth_b_hz", &SystemParams::linewidth_b_hz);
    t["lo_ratio"] = num("lo_ratio", &SystemParams::lo_ratio);
    t["v_laser_override"] = [](RunConfig& c, const json& v) {
      if (v.is_null()) {
        c.params.v_laser_override.reset();
      } else {
        c.params.v_laser_override = number("v_laser_override", v);
      }
    };
    t["eps_prc_mode"] = [](RunConfig& c, const json& v) {
      c.params.eps_prc_mode = eps_prc_mode_from_string(text("eps_prc_mode", v));
    };
    t["scenario"] = [](RunConfig& c, const json& v) {
      c.scenario.kind = scenario_kind_from_string(text("scenario", v));
    };
    t["distance_km"] = [](RunConfig& c, const json& v) { c.scenario.total_distance_km = number("distance_km", v); };
    t["phase_reference"] = [](RunConfig& c, const json& v) {
      const std::string s = text("phase_reference", v);
      if (s == "imperfect") {
        c.reference = PhaseReference::imperfect;
      } else if (s == "ideal") {
        c.reference = PhaseReference::ideal;
      } else {
        throw ConfigError("phase_reference: expected 'imperfect' or 'ideal', got '" + s + "'");
      }
    };
    t["sweep_axis"] = [](RunConfig& c, const json& v) { c.sweep.axis = sweep_axis_from_string(text("sweep_axis", v)); };
    t["sweep_start"] = [](RunConfig& c, const json& v) { c.sweep.start = number("sweep_start", v); };
    t["sweep_stop"] = [](RunConfig& c, const json& v) { c.sweep.stop = number("sweep_stop", v); };
    t["sweep_points"] = [](RunConfig& c, const json& v) {
      const auto n = whole("sweep_points", v);
      if (n > 1000000) throw ConfigError("sweep_points: at most 1000000");
      c.sweep.points = static_cast<int>(n);
    };
    t["sweep_scale"] = [](RunConfig& c, const json& v) {
      c.sweep.scale = sweep_scale_from_string(text("sweep_scale", v));
    };
    t["vm_min"] = [](RunConfig& c, const json& v) { c.vm_range.lo = number("vm_min", v); };
    t["vm_max"] = [](RunConfig& c, const json& v) { c.vm_range.hi = number("vm_max", v); };
    t["vm_tol"] = [](RunConfig& c, const json& v) { c.vm_tol = number("vm_tol", v); };
    t["v_laser_lo"] = [](RunConfig& c, const json& v) { c.v_laser_bracket.lo = number("v_laser_lo", v); };
    t["v_laser_hi"] = [](RunConfig& c, const json& v) { c.v_laser_bracket.hi = number("v_laser_hi", v); };
    t["distance_lo"] = [](RunConfig& c, const json& v) { c.distance_bracket.lo = number("distance_lo", v); };
    t["distance_hi"] = [](RunConfig& c, const json& v) { c.distance_bracket.hi = number("distance_hi", v); };
    t["distance_tol"] = [](RunConfig& c, const json& v) { c.distance_tol = number("distance_tol", v); };
    t["mc_pulses"] = [](RunConfig& c, const json& v) { c.mc_pulses = whole("mc_pulses", v); };
    t["mc_seed"] = [](RunConfig& c, const json& v) { c.mc_seed = whole("mc_seed", v); };
    t["format"] = [](RunConfig& c, const json& v) {
      if (v.is_null()) {
        c.format.reset();
        return;
      }
      const std::string s = text("format", v);
      if (s == "csv") {
        c.format = OutputFormat::csv;
      } else if (s == "json") {
        c.format = OutputFormat::json;
      } else {
        throw ConfigError("format: expected 'csv' or 'json', got '" + s + "'");
      }
    };
    t["output"] = [](RunConfig& c, const json& v) { c.output = text("output", v); };
    return t;
  }();
  return table;
}

}  // namespace

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

std::string_view to_string(PhaseReference reference) {
  return reference == PhaseReference::ideal ? "ideal" : "imperfect";
}

bool operator==(const RunConfig& lhs, const RunConfig& rhs) {
  return lhs.params == rhs.params && lhs.scenario.kind == rhs.scenario.kind &&
         lhs.scenario.total_distance_km == rhs.scenario.total_distance_km && lhs.reference == rhs.reference &&
         lhs.sweep == rhs.sweep && lhs.vm_range == rhs.vm_range && lhs.vm_tol == rhs.vm_tol &&
         lhs.v_laser_bracket == rhs.v_laser_bracket && lhs.distance_bracket == rhs.distance_bracket &&
         lhs.distance_tol == rhs.distance_tol && lhs.mc_pulses == rhs.mc_pulses && lhs.mc_seed == rhs.mc_seed &&
         lhs.format == rhs.format && lhs.output == rhs.output;
}

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

nlohmann::json to_json(const RunConfig& c) {
  json j;
  const SystemParams& p = c.params;
  j["v_mod"] = p.v_mod;
  j["beta"] = p.beta;
  j["eps_a"] = p.eps_a;
  j["eps_b"] = p.eps_b;
  j["l_ac_km"] = p.l_ac_km;
  j["l_bc_km"] = p.l_bc_km;
  j["loss_db_per_km"] = p.loss_db_per_km;
  j["rep_rate_hz"] = p.rep_rate_hz;
  j["linewidth_a_hz"] = p.linewidth_a_hz;
  j["linewidth_b_hz"] = p.linewidth_b_hz;
  j["lo_ratio"] = p.lo_ratio;
  j["v_laser_override"] = p.v_laser_override ? json(*p.v_laser_override) : json(nullptr);
  j["eps_prc_mode"] = to_string(p.eps_prc_mode);
  j["scenario"] = to_string(c.scenario.kind);
  j["distance_km"] = c.scenario.total_distance_km;
  j["phase_reference"] = to_string(c.reference);
  j["sweep_axis"] = to_string(c.sweep.axis);
  j["sweep_start"] = c.sweep.start;
  j["sweep_stop"] = c.sweep.stop;
  j["sweep_points"] = c.sweep.points;
  j["sweep_scale"] = to_string(c.sweep.scale);
  j["vm_min"] = c.vm_range.lo;
  j["vm_max"] = c.vm_range.hi;
  j["vm_tol"] = c.vm_tol;
  j["v_laser_lo"] = c.v_laser_bracket.lo;
  j["v_laser_hi"] = c.v_laser_bracket.hi;
  j["distance_lo"] = c.distance_bracket.lo;
  j["distance_hi"] = c.distance_bracket.hi;
  j["distance_tol"] = c.distance_tol;
  j["mc_pulses"] = c.mc_pulses;
  j["mc_seed"] = c.mc_seed;
  j["format"] = c.format ? json(to_string(*c.format)) : json(nullptr);
  j["output"] = c.output;
  return j;
}

RunConfig apply_json(RunConfig base, const nlohmann::json& patch) {
  if (!patch.is_object()) throw ConfigError("config: expected a flat JSON object");
  const auto& table = setters();
  for (const auto& [key, value] : patch.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key + ": unknown config key");
    it->second(base, value);
  }
  return base;
}

RunConfig parse_run_config(std::string_view text_in, RunConfig base) {
  json j;
  try {
    j = json::parse(text_in.begin(), text_in.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return apply_json(std::move(base), j);
}

}  // namespace cvmdi
