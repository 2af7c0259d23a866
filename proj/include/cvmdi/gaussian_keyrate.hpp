#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "cvmdi/calibration_noise.hpp"
#include "cvmdi/channel_model.hpp"
#include "cvmdi/errors.hpp"
#include "cvmdi/params.hpp"

namespace cvmdi {

/// Tolerance used for the physicality checks (ab - c^2 >= 1) and for
/// clamping the symplectic discriminant.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Two-mode Gaussian state with covariance [[a I, c Z], [c Z, b I]], Z = diag(1, -1).
template <typename Scalar>
struct CovarianceABC {
  Scalar a;
  Scalar b;
  Scalar c;

  /// Explicit 4x4 covariance in (x_A, p_A, x_B, p_B) ordering.
  Eigen::Matrix<Scalar, 4, 4> matrix() const {
    Eigen::Matrix<Scalar, 4, 4> m = Eigen::Matrix<Scalar, 4, 4>::Zero();
    m(0, 0) = m(1, 1) = a;
    m(2, 2) = m(3, 3) = b;
    m(0, 2) = m(2, 0) = c;
    m(1, 3) = m(3, 1) = -c;
    return m;
  }
};

/// Covariance of Alice's retained mode and Bob's displaced mode for an EPR
/// source of variance v sent through a channel (eta, chi_t).
template <typename Scalar>
CovarianceABC<Scalar> covariance(Scalar v, Scalar eta, Scalar chi_t) {
  using std::sqrt;
  if (!(v >= Scalar(1))) throw DomainError("covariance: V must be >= 1");
  if (!(eta > Scalar(0)) || eta > Scalar(1)) throw DomainError("covariance: eta must lie in (0, 1]");
  if (chi_t < Scalar(0)) throw DomainError("covariance: chi_t must be >= 0");
  CovarianceABC<Scalar> cov{v, eta * (v + chi_t), sqrt(eta * (v * v - Scalar(1)))};
  const Scalar tol(kPhysicalityTolerance);
  if (cov.b < Scalar(1) - tol || cov.a * cov.b - cov.c * cov.c < Scalar(1) - tol) {
    throw DomainError("covariance: unphysical state (ab - c^2 < 1)");
  }
  return cov;
}

/// log2[(a+1)/(a+1 - c^2/(b+1))], both quadratures counted.
template <typename Scalar>
Scalar mutual_information(const CovarianceABC<Scalar>& cov) {
  using std::log2;
  const Scalar denom = cov.a + Scalar(1) - cov.c * cov.c / (cov.b + Scalar(1));
  if (!(denom > Scalar(0))) throw DomainError("mutual_information: non-positive denominator");
  return log2((cov.a + Scalar(1)) / denom);
}

/// Von Neumann entropy of a thermal mode with mean photon number x.
template <typename Scalar>
Scalar g_entropy(Scalar x) {
  using std::log2;
  if (x < Scalar(0)) throw DomainError("g_entropy: negative argument");
  if (x == Scalar(0)) return Scalar(0);
  return (x + Scalar(1)) * log2(x + Scalar(1)) - x * log2(x);
}

template <typename Scalar>
struct SymplecticSpectrum {
  Scalar lambda1;
  Scalar lambda2;
  /// Eigenvalue of Alice's mode conditioned on Bob's homodyne outcome.
  Scalar lambda3;
};

template <typename Scalar>
SymplecticSpectrum<Scalar> symplectic_spectrum(const CovarianceABC<Scalar>& cov) {
  using std::sqrt;
  const auto& [a, b, c] = cov;
  const Scalar big_a = a * a + b * b - Scalar(2) * c * c;
  const Scalar big_b = a * b - c * c;
  Scalar disc = big_a * big_a - Scalar(4) * big_b * big_b;
  if (disc < Scalar(0)) {
    // Difference of two large squares near purity.
    if (disc < -Scalar(kPhysicalityTolerance)) {
      throw DomainError("symplectic_spectrum: negative discriminant A^2 - 4B^2");
    }
    disc = Scalar(0);
  }
  const Scalar root = sqrt(disc);
  const Scalar l1_sq = (big_a + root) / Scalar(2);
  // (A - sqrt(A^2 - 4B^2))/2 == 2B^2/(A + sqrt(...)) without the cancellation.
  const Scalar l2_sq = big_a + root > Scalar(0) ? Scalar(2) * big_b * big_b / (big_a + root) : Scalar(0);
  const SymplecticSpectrum<Scalar> spec{sqrt(l1_sq), sqrt(l2_sq), a - c * c / (b + Scalar(1))};
  // ab - c^2 >= 1 alone lets a != b states through with lambda2 < 1.
  if (spec.lambda2 < Scalar(1) - Scalar(kPhysicalityTolerance) ||
      spec.lambda3 < Scalar(1) - Scalar(kPhysicalityTolerance)) {
    throw DomainError("symplectic_spectrum: unphysical state, symplectic eigenvalue below 1");
  }
  return spec;
}

/// chi_BE = G((l1-1)/2) + G((l2-1)/2) - G((l3-1)/2)
template <typename Scalar>
Scalar holevo_bound(const SymplecticSpectrum<Scalar>& spec) {
  using std::max;
  // Eigenvalues a hair below 1 are rounding noise on pure modes.
  const auto half_excess = [](Scalar lambda) { return max(Scalar(0), (lambda - Scalar(1)) / Scalar(2)); };
  return g_entropy(half_excess(spec.lambda1)) + g_entropy(half_excess(spec.lambda2)) -
         g_entropy(half_excess(spec.lambda3));
}

template <typename Scalar>
Scalar holevo_bound(const CovarianceABC<Scalar>& cov) {
  return holevo_bound(symplectic_spectrum(cov));
}

/// Repeaterless secret-key capacity of a pure-loss channel, -log2(1 - T).
template <typename Scalar>
Scalar plob_bound(Scalar t_total) {
  using std::log1p;
  if (!(t_total > Scalar(0)) || !(t_total < Scalar(1))) throw DomainError("plob_bound: T must lie in (0, 1)");
  return -log1p(-t_total) / std::log(Scalar(2));
}

enum class PhaseReference { imperfect, ideal };

template <typename Scalar>
struct KeyRateResult {
  Scalar i_ab;
  Scalar lambda1;
  Scalar lambda2;
  Scalar lambda3;
  Scalar chi_be;
  /// beta*I_AB - chi_BE; K <= 0 means no key.
  Scalar key_rate;
  /// +inf at zero total distance.
  Scalar plob;

  CalibrationNoise<Scalar> calibration;
  EquivalentChannel<Scalar> channel;
  CovarianceABC<Scalar> cov;

  bool feasible() const { return key_rate > Scalar(0); }
};

/// Full chain from physical parameters to the asymptotic key rate under
/// reverse reconciliation. With PhaseReference::ideal the calibration noise
/// is computed and reported but not added to chi_t.
template <typename Scalar = double>
KeyRateResult<Scalar> secret_key_rate(const SystemParams& params, PhaseReference reference = PhaseReference::imperfect) {
  validate(params);
  const Scalar v_mod(params.v_mod);
  const Scalar loss(params.loss_db_per_km);
  const Scalar t_a = transmittance(Scalar(params.l_ac_km), loss);
  const Scalar t_b = transmittance(Scalar(params.l_bc_km), loss);
  const Scalar v = v_mod + Scalar(1);

  const Scalar chi_a = channel_noise(t_a, Scalar(params.eps_a));
  const Scalar chi_b = channel_noise(t_b, Scalar(params.eps_b));
  const Scalar laser = params.v_laser_override
                           ? Scalar(*params.v_laser_override)
                           : v_laser(Scalar(params.linewidth_a_hz), Scalar(params.linewidth_b_hz), Scalar(params.rep_rate_hz));

  KeyRateResult<Scalar> out{};
  out.calibration =
      calibration_noise(v_mod, laser, chi_a, chi_b, Scalar(params.lo_ratio) * v_mod, params.eps_prc_mode);
  const Scalar folded = reference == PhaseReference::ideal ? Scalar(0) : out.calibration.eps_prc;
  out.channel = equivalent_channel(t_a, t_b, Scalar(params.eps_a), Scalar(params.eps_b), v, folded);
  out.cov = covariance(v, out.channel.eta, out.channel.chi_t);

  const auto spec = symplectic_spectrum(out.cov);
  out.lambda1 = spec.lambda1;
  out.lambda2 = spec.lambda2;
  out.lambda3 = spec.lambda3;
  out.i_ab = mutual_information(out.cov);
  out.chi_be = holevo_bound(spec);
  out.key_rate = Scalar(params.beta) * out.i_ab - out.chi_be;

  const Scalar t_total = transmittance(Scalar(params.l_ac_km + params.l_bc_km), loss);
  out.plob = t_total < Scalar(1) ? plob_bound(t_total) : std::numeric_limits<Scalar>::infinity();
  return out;
}

}  // namespace cvmdi
