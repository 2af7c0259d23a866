#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvmdi/analysis.hpp"
#include "cvmdi/gaussian_keyrate.hpp"

namespace cvmdi {

/// Nine significant digits, '.' separator, independent of the C++ locale.
/// Non-finite values print as inf, -inf or nan.
std::string format_number(double value);

/// JSON number, or null for non-finite values.
nlohmann::json json_number(double value);

/// Flat map of every result field plus the intermediate quantities.
nlohmann::json keyrate_json(const KeyRateResult<double>& result);

/// Header line plus one data row with the same fields as keyrate_json.
std::string keyrate_csv(const KeyRateResult<double>& result);

inline constexpr std::string_view kSweepCsvHeader = "axis,key_rate,i_ab,chi_be,eps_prc,feasible";

std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

/// Several curves over one shared axis, as plotted in one figure.
struct SeriesTable {
  std::string name;
  std::string axis_name;
  std::vector<double> axis;
  std::vector<std::string> series_names;
  /// series[s][i] is curve s at axis[i].
  std::vector<std::vector<double>> series;
};

std::string table_csv(const SeriesTable& table);
nlohmann::json table_json(const SeriesTable& table);

}  // namespace cvmdi
