#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cvmdi/report.hpp"

namespace cvmdi {

/// fig4 ... fig9. Each preset fixes its own parameter set, axis and curves:
///   fig4, fig7  key rate vs V_M, three distances, imperfect and ideal calibration
///   fig5, fig8  key rate vs distance for V_laser in {0.005, 0.01, 0.02}, ideal, PLOB
///   fig6, fig9  key rate vs V_laser for three LO ratios plus the D = 0 curve
/// fig4-6 use the extreme asymmetric relay with V_M = 6, fig7-9 the
/// symmetric relay with V_M = 12.
const std::vector<std::string>& preset_names();

SeriesTable run_preset(std::string_view name);

}  // namespace cvmdi
