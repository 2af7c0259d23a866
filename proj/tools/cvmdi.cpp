// Command-line front end for the CV-MDI-QKD phase-calibration key-rate model.
//
//   cvmdi keyrate --scenario symmetric --distance_km 3 --v_mod 12
//   cvmdi sweep --sweep_axis distance_km --sweep_start 0 --sweep_stop 80 --sweep_points 161
//   cvmdi preset fig5 --output fig5.csv
//
// Exit codes: 0 ok, 2 config error, 3 numeric domain error, 4 infeasible/bracket error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cvmdi/analysis.hpp"
#include "cvmdi/config.hpp"
#include "cvmdi/errors.hpp"
#include "cvmdi/mc_oracle.hpp"
#include "cvmdi/presets.hpp"
#include "cvmdi/report.hpp"

namespace {

using cvmdi::OutputFormat;
using cvmdi::RunConfig;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInfeasible = 4;
constexpr const char* kOutputDirEnv = "CVMDI_OUTPUT_DIR";

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> flags;
  std::string preset;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cvmdi::ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flag values are JSON scalars when they parse as one (numbers, null),
// otherwise plain strings.
json flag_value(const std::string& raw) {
  try {
    json v = json::parse(raw);
    if (v.is_primitive()) return v;
  } catch (const json::parse_error&) {
  }
  return raw;
}

RunConfig resolve_config(const Invocation& inv) {
  RunConfig cfg;
  if (!inv.config_path.empty()) cfg = cvmdi::parse_run_config(read_file(inv.config_path));
  json patch = json::object();
  for (const auto& [key, raw] : inv.flags) patch[key] = flag_value(raw);
  return cvmdi::apply_json(std::move(cfg), patch);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(cfg.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cvmdi::ConfigError("output: cannot write '" + path.string() + "'");
  out << text;
}

OutputFormat format_or(const RunConfig& cfg, OutputFormat fallback) { return cfg.format.value_or(fallback); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json envelope(std::string_view command, const RunConfig& cfg, json result) {
  return {{"command", command}, {"config", cvmdi::to_json(cfg)}, {"result", std::move(result)}};
}

// Scalar reports in CSV are one header line and one value line.
std::string scalar_csv(const json& result) {
  std::string header;
  std::string row;
  for (const auto& [key, value] : result.items()) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += key;
    if (value.is_number()) {
      row += cvmdi::format_number(value.get<double>());
    } else if (value.is_boolean()) {
      row += value.get<bool>() ? "true" : "false";
    } else if (value.is_null()) {
      row += "inf";
    } else {
      row += value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return header + "\n" + row + "\n";
}

void emit_scalar(std::string_view command, const RunConfig& cfg, const json& result) {
  if (format_or(cfg, OutputFormat::json) == OutputFormat::csv) {
    emit(cfg, scalar_csv(result));
  } else {
    emit(cfg, dump(envelope(command, cfg, result)));
  }
}

void cmd_keyrate(const RunConfig& cfg) {
  const auto r = cvmdi::evaluate(cfg.params, cfg.scenario, cfg.reference);
  if (format_or(cfg, OutputFormat::json) == OutputFormat::csv) {
    emit(cfg, cvmdi::keyrate_csv(r));
  } else {
    emit(cfg, dump(envelope("keyrate", cfg, cvmdi::keyrate_json(r))));
  }
}

void cmd_sweep(const RunConfig& cfg) {
  const auto rows = cvmdi::sweep(cfg.sweep, cfg.params, cfg.scenario, cfg.reference);
  if (format_or(cfg, OutputFormat::csv) == OutputFormat::csv) {
    emit(cfg, cvmdi::sweep_csv(rows));
  } else {
    emit(cfg, dump(envelope("sweep", cfg, cvmdi::sweep_json(rows))));
  }
}

void cmd_tolerance(const RunConfig& cfg) {
  const double v = cvmdi::tolerance_v_laser(cfg.params, cfg.scenario, cfg.v_laser_bracket);
  cvmdi::SystemParams at_root = cfg.params;
  cvmdi::Scenario scenario = cfg.scenario;
  cvmdi::apply_axis(cvmdi::SweepAxis::v_laser, v, at_root, scenario);
  const auto r = cvmdi::evaluate(at_root, scenario);
  emit_scalar("tolerance", cfg,
              {{"v_laser_max", v}, {"eps_prc_at_threshold", r.calibration.eps_prc}, {"key_rate_at_threshold", r.key_rate}});
}

void cmd_optimize_vm(const RunConfig& cfg) {
  const auto opt = cvmdi::optimize_vm(cfg.params, cfg.scenario, cfg.vm_range, cfg.vm_tol);
  emit_scalar("optimize-vm", cfg, {{"v_mod_opt", opt.v_mod}, {"key_rate_max", opt.key_rate}});
}

void cmd_max_distance(const RunConfig& cfg) {
  const double d = cvmdi::max_distance(cfg.params, cfg.scenario, cfg.distance_bracket, cfg.distance_tol);
  emit_scalar("max-distance", cfg, {{"max_distance_km", d}});
}

void cmd_mc_validate(const RunConfig& cfg) {
  const cvmdi::McConfig mc{cfg.mc_pulses, cfg.mc_seed, cfg.placed_params()};
  const auto v = cvmdi::validate_monte_carlo(mc);
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name},
                      {"observed", c.observed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"status", c.pass ? "PASS" : "FAIL"}});
  }
  if (format_or(cfg, OutputFormat::json) == OutputFormat::csv) {
    std::string out = "check,observed,expected,tolerance,status\n";
    for (const auto& c : v.checks) {
      out += c.name + ',' + cvmdi::format_number(c.observed) + ',' + cvmdi::format_number(c.expected) + ',' +
             cvmdi::format_number(c.tolerance) + ',' + (c.pass ? "PASS" : "FAIL") + '\n';
    }
    emit(cfg, out);
    return;
  }
  const json result = {{"n", v.report.n},
                       {"v_laser_hat", v.report.v_laser_hat},
                       {"v_prc_hat", v.report.v_prc_hat},
                       {"eps_prc_hat", v.report.eps_prc_hat},
                       {"v_laser", v.analytic.v_laser},
                       {"v_prc", v.analytic.v_prc},
                       {"eps_prc_exact", v.eps_prc_exact},
                       {"eps_prc_approx", v.eps_prc_approx},
                       {"checks", checks},
                       {"status", v.all_pass() ? "PASS" : "FAIL"}};
  emit(cfg, dump(envelope("mc-validate", cfg, result)));
}

void cmd_preset(const Invocation& inv, const RunConfig& cfg) {
  const auto table = cvmdi::run_preset(inv.preset);
  if (format_or(cfg, OutputFormat::csv) == OutputFormat::csv) {
    emit(cfg, cvmdi::table_csv(table));
  } else {
    emit(cfg, dump(cvmdi::table_json(table)));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret key rate of CV-MDI-QKD under imperfect phase reference calibration"};
  app.require_subcommand(1, 1);

  Invocation inv;
  const std::map<std::string, std::string> commands = {
      {"keyrate", "Key rate and every intermediate quantity at one parameter point"},
      {"sweep", "Key rate along one axis (v_mod, distance_km, v_laser, lo_ratio)"},
      {"tolerance", "Largest V_laser that still yields a positive key rate"},
      {"optimize-vm", "Modulation variance maximizing the key rate"},
      {"max-distance", "Largest total distance with a positive key rate"},
      {"mc-validate", "Monte Carlo check of the calibration noise formulas"},
      {"preset", "Reproduce one figure: fig4 .. fig9"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "Flat JSON config file; flags override its values");
    for (const auto& key : cvmdi::run_config_keys()) {
      sub->add_option_function<std::string>(
          "--" + key, [&inv, key](const std::string& value) { inv.flags[key] = value; }, "RunConfig field " + key);
    }
    if (name == "preset") sub->add_option("name", inv.preset, "fig4, fig5, fig6, fig7, fig8 or fig9")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const RunConfig cfg = resolve_config(inv);
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "keyrate") {
      cmd_keyrate(cfg);
    } else if (command == "sweep") {
      cmd_sweep(cfg);
    } else if (command == "tolerance") {
      cmd_tolerance(cfg);
    } else if (command == "optimize-vm") {
      cmd_optimize_vm(cfg);
    } else if (command == "max-distance") {
      cmd_max_distance(cfg);
    } else if (command == "mc-validate") {
      cmd_mc_validate(cfg);
    } else {
      cmd_preset(inv, cfg);
    }
  } catch (const cvmdi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cvmdi::DomainError& e) {
    std::cerr << "numeric domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const cvmdi::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return 0;
}
