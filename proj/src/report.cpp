#include "cvmdi/report.hpp"

#include <charconv>
#include <cmath>
#include <utility>

namespace cvmdi {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

nlohmann::json json_number(double value) {
  return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

namespace {

std::vector<std::pair<std::string, double>> keyrate_fields(const KeyRateResult<double>& r) {
  return {
      {"key_rate", r.key_rate},
      {"i_ab", r.i_ab},
      {"chi_be", r.chi_be},
      {"lambda1", r.lambda1},
      {"lambda2", r.lambda2},
      {"lambda3", r.lambda3},
      {"plob", r.plob},
      {"t_a", r.channel.t_a},
      {"t_b", r.channel.t_b},
      {"chi_a", r.channel.chi_a},
      {"chi_b", r.channel.chi_b},
      {"g_sq", r.channel.g_sq},
      {"eta", r.channel.eta},
      {"eps_c", r.channel.eps_c},
      {"v_laser", r.calibration.v_laser},
      {"v_measure", r.calibration.v_measure},
      {"v_path", r.calibration.v_path},
      {"v_prc", r.calibration.v_prc},
      {"eps_prc", r.calibration.eps_prc},
      {"chi_t", r.channel.chi_t},
      {"a", r.cov.a},
      {"b", r.cov.b},
      {"c", r.cov.c},
  };
}

}  // namespace

nlohmann::json keyrate_json(const KeyRateResult<double>& r) {
  nlohmann::json j;
  for (const auto& [name, value] : keyrate_fields(r)) j[name] = json_number(value);
  j["feasible"] = r.feasible();
  j["eps_prc_mode"] = to_string(r.calibration.mode);
  return j;
}

std::string keyrate_csv(const KeyRateResult<double>& r) {
  std::string header;
  std::string row;
  for (const auto& [name, value] : keyrate_fields(r)) {
    header += name + ",";
    row += format_number(value) + ",";
  }
  header += "feasible\n";
  row += r.feasible() ? "true\n" : "false\n";
  return header + row;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.axis_value) + ',' + format_number(r.key_rate) + ',' + format_number(r.i_ab) + ',' +
           format_number(r.chi_be) + ',' + format_number(r.eps_prc) + ',' + (r.feasible ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"axis", json_number(r.axis_value)},
                   {"key_rate", json_number(r.key_rate)},
                   {"i_ab", json_number(r.i_ab)},
                   {"chi_be", json_number(r.chi_be)},
                   {"eps_prc", json_number(r.eps_prc)},
                   {"feasible", r.feasible}});
  }
  return out;
}

std::string table_csv(const SeriesTable& t) {
  std::string out = t.axis_name;
  for (const auto& name : t.series_names) out += ',' + name;
  out += '\n';
  for (std::size_t i = 0; i < t.axis.size(); ++i) {
    out += format_number(t.axis[i]);
    for (const auto& s : t.series) out += ',' + format_number(s[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json table_json(const SeriesTable& t) {
  nlohmann::json series = nlohmann::json::object();
  for (std::size_t s = 0; s < t.series.size(); ++s) {
    nlohmann::json values = nlohmann::json::array();
    for (double v : t.series[s]) values.push_back(json_number(v));
    series[t.series_names[s]] = std::move(values);
  }
  nlohmann::json axis = nlohmann::json::array();
  for (double v : t.axis) axis.push_back(json_number(v));
  return {{"preset", t.name}, {"axis_name", t.axis_name}, {"axis", std::move(axis)}, {"series", std::move(series)}};
}

}  // namespace cvmdi
