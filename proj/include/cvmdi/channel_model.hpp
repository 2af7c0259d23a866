#pragma once

#include <cmath>
#include <string>

#include "cvmdi/errors.hpp"

namespace cvmdi {

/// Fiber transmittance 10^(-loss*length/10).
template <typename Scalar>
Scalar transmittance(Scalar length_km, Scalar loss_db_per_km) {
  using std::pow;
  if (length_km < Scalar(0)) throw DomainError("transmittance: negative length");
  if (loss_db_per_km < Scalar(0)) throw DomainError("transmittance: negative loss");
  return pow(Scalar(10), -loss_db_per_km * length_km / Scalar(10));
}

/// Added noise of one lossy noisy channel referred to its input, 1/T - 1 + eps.
template <typename Scalar>
Scalar channel_noise(Scalar t, Scalar eps) {
  if (!(t > Scalar(0)) || t > Scalar(1)) throw DomainError("channel_noise: transmittance must lie in (0, 1]");
  if (eps < Scalar(0)) throw DomainError("channel_noise: negative excess noise");
  return Scalar(1) / t - Scalar(1) + eps;
}

/// Displacement gain g^2 that minimizes the equivalent excess noise.
template <typename Scalar>
Scalar optimal_gain_squared(Scalar v_b, Scalar t_b) {
  if (!(v_b > Scalar(1))) throw DomainError("optimal_gain_squared: V_B must be > 1");
  if (!(t_b > Scalar(0)) || t_b > Scalar(1)) throw DomainError("optimal_gain_squared: T_B must lie in (0, 1]");
  return Scalar(2) * (v_b - Scalar(1)) / (t_b * (v_b + Scalar(1)));
}

namespace detail {

template <typename Scalar>
void check_transmittances(Scalar t_a, Scalar t_b, const char* where) {
  if (!(t_a > Scalar(0)) || t_a > Scalar(1) || !(t_b > Scalar(0)) || t_b > Scalar(1)) {
    throw DomainError(std::string(where) + ": transmittances must lie in (0, 1]");
  }
}

}  // namespace detail

/// Equivalent one-way excess noise for an arbitrary displacement gain g^2.
template <typename Scalar>
Scalar equivalent_excess_noise_general(Scalar t_a, Scalar t_b, Scalar eps_a, Scalar eps_b, Scalar v_b, Scalar g_sq) {
  using std::sqrt;
  detail::check_transmittances(t_a, t_b, "equivalent_excess_noise_general");
  if (!(v_b > Scalar(1))) throw DomainError("equivalent_excess_noise_general: V_B must be > 1");
  if (!(g_sq > Scalar(0))) throw DomainError("equivalent_excess_noise_general: g^2 must be > 0");
  const Scalar chi_a = channel_noise(t_a, eps_a);
  const Scalar chi_b = channel_noise(t_b, eps_b);
  const Scalar ratio = t_b / t_a;
  const Scalar mismatch = sqrt(Scalar(2) / (t_b * g_sq)) * sqrt(v_b - Scalar(1)) - sqrt(v_b + Scalar(1));
  return Scalar(1) + chi_a + ratio * (chi_b - Scalar(1)) + ratio * mismatch * mismatch;
}

/// Equivalent excess noise at the optimal gain; the mismatch term vanishes.
template <typename Scalar>
Scalar equivalent_excess_noise_optimized(Scalar t_a, Scalar t_b, Scalar eps_a, Scalar eps_b) {
  detail::check_transmittances(t_a, t_b, "equivalent_excess_noise_optimized");
  if (eps_a < Scalar(0) || eps_b < Scalar(0)) throw DomainError("equivalent_excess_noise_optimized: negative excess noise");
  return (t_b / t_a) * (eps_b - Scalar(2)) + eps_a + Scalar(2) / t_a;
}

/// chi_t = 1/eta - 1 + eps_c + eps_prc
template <typename Scalar>
Scalar total_added_noise(Scalar eta, Scalar eps_c, Scalar eps_prc) {
  if (!(eta > Scalar(0)) || eta > Scalar(1)) throw DomainError("total_added_noise: eta must lie in (0, 1]");
  if (eps_c < Scalar(0) || eps_prc < Scalar(0)) throw DomainError("total_added_noise: negative noise term");
  return Scalar(1) / eta - Scalar(1) + eps_c + eps_prc;
}

/// The two-channel relay link reduced to a single one-way channel.
template <typename Scalar>
struct EquivalentChannel {
  Scalar t_a;
  Scalar t_b;
  Scalar chi_a;
  Scalar chi_b;
  Scalar g_sq;
  Scalar eta;
  Scalar eps_c;
  Scalar chi_t;
};

/// Builds the equivalent channel at the optimal displacement gain. eps_prc is
/// the calibration excess noise folded into chi_t (0 for ideal calibration).
template <typename Scalar>
EquivalentChannel<Scalar> equivalent_channel(Scalar t_a, Scalar t_b, Scalar eps_a, Scalar eps_b, Scalar v, Scalar eps_prc) {
  detail::check_transmittances(t_a, t_b, "equivalent_channel");
  EquivalentChannel<Scalar> ch{};
  ch.t_a = t_a;
  ch.t_b = t_b;
  ch.chi_a = channel_noise(t_a, eps_a);
  ch.chi_b = channel_noise(t_b, eps_b);
  ch.g_sq = optimal_gain_squared(v, t_b);
  ch.eta = ch.g_sq * t_a / Scalar(2);
  if (ch.eta > Scalar(1)) {
    throw DomainError("equivalent_channel: eta > 1, relay closer to Alice than to Bob is not supported");
  }
  ch.eps_c = equivalent_excess_noise_optimized(t_a, t_b, eps_a, eps_b);
  ch.chi_t = total_added_noise(ch.eta, ch.eps_c, eps_prc);
  return ch;
}

}  // namespace cvmdi
