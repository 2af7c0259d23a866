#pragma once

#include <cmath>
#include <numbers>

#include "cvmdi/errors.hpp"
#include "cvmdi/params.hpp"

namespace cvmdi {

template <typename Scalar>
struct Intensities {
  Scalar i1;
  Scalar i2;
};

/// Photodiode intensities behind BS1 and BS2 when the two local oscillators
/// (equal amplitude, phases theta_a and theta_b) interfere. The second arm
/// carries the extra pi/2 shift that resolves the quadrant.
template <typename Scalar>
Intensities<Scalar> interference_intensities(Scalar theta_a, Scalar theta_b, Scalar lo_intensity) {
  using std::cos;
  using std::sin;
  if (!(lo_intensity > Scalar(0))) throw DomainError("interference_intensities: lo_intensity must be > 0");
  const Scalar delta = theta_a - theta_b;
  return {lo_intensity * (Scalar(1) + cos(delta)), lo_intensity * (Scalar(1) + sin(delta))};
}

/// Relative LO phase in (-pi, pi] recovered from the two intensities.
/// Noisy inputs off the unit circle are fine; atan2 only sees the direction.
template <typename Scalar>
Scalar phase_from_intensities(Scalar i1, Scalar i2, Scalar lo_intensity) {
  using std::atan2;
  if (!(lo_intensity > Scalar(0))) throw DomainError("phase_from_intensities: lo_intensity must be > 0");
  const Scalar x = i1 / lo_intensity - Scalar(1);
  const Scalar p = i2 / lo_intensity - Scalar(1);
  if (x == Scalar(0) && p == Scalar(0)) {
    throw DomainError("phase_from_intensities: both quadrature components are zero, phase undefined");
  }
  const Scalar phi = atan2(p, x);
  return phi == -std::numbers::pi_v<Scalar> ? std::numbers::pi_v<Scalar> : phi;
}

/// 2*pi*(dnu_a + dnu_b)/f
template <typename Scalar>
Scalar v_laser(Scalar dnu_a, Scalar dnu_b, Scalar rep_rate) {
  if (!(rep_rate > Scalar(0))) throw DomainError("v_laser: repetition rate must be > 0");
  if (dnu_a < Scalar(0) || dnu_b < Scalar(0)) throw DomainError("v_laser: linewidths must be >= 0");
  return Scalar(2) * std::numbers::pi_v<Scalar> * (dnu_a + dnu_b) / rep_rate;
}

/// Phase estimation error from shot noise plus channel noise on both LOs.
template <typename Scalar>
Scalar v_measure(Scalar chi_a, Scalar chi_b, Scalar lo_intensity) {
  if (!(lo_intensity > Scalar(0))) throw DomainError("v_measure: lo_intensity must be > 0");
  if (chi_a < Scalar(0) || chi_b < Scalar(0)) throw DomainError("v_measure: channel noise must be >= 0");
  return (chi_a + chi_b + Scalar(2)) / lo_intensity;
}

/// Excess noise (SNU) caused by a Gaussian residual phase of variance v_prc.
/// The approx form is the first-order expansion of the exact one and
/// upper-bounds it.
template <typename Scalar>
Scalar eps_prc(Scalar v_mod, Scalar v_prc, EpsPrcMode mode) {
  using std::expm1;
  if (!(v_mod > Scalar(0))) throw DomainError("eps_prc: v_mod must be > 0");
  if (v_prc < Scalar(0)) throw DomainError("eps_prc: negative phase variance");
  if (mode == EpsPrcMode::approx) return v_mod * v_prc;
  return -Scalar(2) * v_mod * expm1(-v_prc / Scalar(2));
}

template <typename Scalar>
struct CalibrationNoise {
  Scalar v_laser;
  Scalar v_measure;
  /// Signal and LO share one optical path, so this stays 0.
  Scalar v_path;
  Scalar v_prc;
  Scalar eps_prc;
  EpsPrcMode mode;
};

/// Assembles the full calibration noise budget. chi_a/chi_b are the channel
/// added noises seen by the two LO pulses.
template <typename Scalar>
CalibrationNoise<Scalar> calibration_noise(Scalar v_mod, Scalar v_laser_value, Scalar chi_a, Scalar chi_b,
                                           Scalar lo_intensity, EpsPrcMode mode) {
  if (v_laser_value < Scalar(0)) throw DomainError("calibration_noise: negative V_laser");
  CalibrationNoise<Scalar> out{};
  out.v_laser = v_laser_value;
  out.v_measure = v_measure(chi_a, chi_b, lo_intensity);
  out.v_path = Scalar(0);
  out.v_prc = out.v_laser + out.v_measure + out.v_path;
  out.eps_prc = eps_prc(v_mod, out.v_prc, mode);
  out.mode = mode;
  return out;
}

}  // namespace cvmdi
