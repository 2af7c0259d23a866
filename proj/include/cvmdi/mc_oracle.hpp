#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cvmdi/calibration_noise.hpp"
#include "cvmdi/params.hpp"

namespace cvmdi {

/// Pulses per random sub-stream. Work is split on these boundaries, never on
/// thread count, so results are identical on any machine with the same
/// standard library.
inline constexpr std::size_t kMcChunkPulses = 16384;

struct McConfig {
  std::size_t n_pulses = 100000;
  std::uint64_t seed = 42;
  SystemParams params;
};

struct McReport {
  /// Sample variance of the per-pulse relative laser phase increments.
  double v_laser_hat;
  /// Sample variance of the residual phase after correction.
  double v_prc_hat;
  /// 2 V_M (1 - mean cos residual).
  double eps_prc_hat;
  std::size_t n;

  // Standard errors of the three estimates.
  double v_laser_se;
  double v_prc_se;
  double eps_prc_se;
};

/// Relative phase increments between two free-running lasers, one per pulse:
/// i.i.d. N(0, 2 pi (dnu_a + dnu_b) / f).
std::vector<double> simulate_laser_drift(std::size_t n, double dnu_a, double dnu_b, double rep_rate,
                                         std::uint64_t seed);

/// Linewidth pair reproducing the configured V_laser at the configured
/// repetition rate (an override is split evenly between both lasers).
std::pair<double, double> effective_linewidths(const SystemParams& params);

/// Simulates calibrate-then-correct on every pulse: the LO phase difference
/// is estimated from noisy interference outputs, then applied to the next
/// pulse after the lasers have drifted.
McReport simulate_calibration(const McConfig& cfg);

struct McCheck {
  std::string name;
  double observed;
  double expected;
  /// Relative tolerance, or the half-width for bracket and F-test checks.
  double tolerance;
  bool pass;
};

struct McValidation {
  McReport report;
  McReport reseeded;
  CalibrationNoise<double> analytic;
  double eps_prc_exact;
  double eps_prc_approx;
  std::vector<McCheck> checks;

  bool all_pass() const;
};

/// Runs the simulator at `cfg` and at seed + 1 and compares against the
/// closed forms: drift variance and V_prc within 5%, eps_prc within 10% of
/// the exact form, eps_prc between the exact and approx forms up to 3
/// standard errors, and a two-sided 1% F-test between the two seeds.
McValidation validate_monte_carlo(const McConfig& cfg);

}  // namespace cvmdi
