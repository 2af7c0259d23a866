#include "cvmdi/mc_oracle.hpp"

#include <boost/math/distributions/fisher_f.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cvmdi/channel_model.hpp"
#include "cvmdi/errors.hpp"
#include "parallel.hpp"

namespace cvmdi {
namespace {

enum class StreamTag : std::uint32_t { drift = 0, calibration = 1 };

std::mt19937_64 sub_stream(std::uint64_t seed, std::size_t chunk, StreamTag tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32),
                    static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

std::size_t chunk_count(std::size_t n) { return (n + kMcChunkPulses - 1) / kMcChunkPulses; }

std::size_t chunk_size(std::size_t n, std::size_t chunk) {
  return std::min(kMcChunkPulses, n - chunk * kMcChunkPulses);
}

// Welford running moments; merge() is Chan's pairwise update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count * o.count / total;
    count = total;
  }

  double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }
};

struct ChunkStats {
  Moments drift;
  Moments residual;
  Moments cos_residual;
};

void check_common(std::size_t n, double rep_rate) {
  if (n < 1) throw ConfigError("mc_pulses: must be >= 1");
  if (!(rep_rate > 0.0)) throw DomainError("simulate: repetition rate must be > 0");
}

McCheck relative_check(std::string name, double observed, double expected, double rel_tol) {
  const bool pass = expected == 0.0 ? observed == 0.0 : std::abs(observed / expected - 1.0) <= rel_tol;
  return {std::move(name), observed, expected, rel_tol, pass};
}

}  // namespace

std::vector<double> simulate_laser_drift(std::size_t n, double dnu_a, double dnu_b, double rep_rate,
                                         std::uint64_t seed) {
  check_common(n, rep_rate);
  const double sigma = std::sqrt(v_laser(dnu_a, dnu_b, rep_rate));
  std::vector<double> out(n, 0.0);
  if (sigma == 0.0) return out;

  detail::parallel_for(chunk_count(n), [&](std::size_t chunk) {
    auto rng = sub_stream(seed, chunk, StreamTag::drift);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t begin = chunk * kMcChunkPulses;
    const std::size_t size = chunk_size(n, chunk);
    for (std::size_t i = 0; i < size; ++i) out[begin + i] = sigma * normal(rng);
  });
  return out;
}

std::pair<double, double> effective_linewidths(const SystemParams& params) {
  if (!params.v_laser_override) return {params.linewidth_a_hz, params.linewidth_b_hz};
  const double total = *params.v_laser_override * params.rep_rate_hz / (2.0 * std::numbers::pi);
  return {0.5 * total, 0.5 * total};
}

McReport simulate_calibration(const McConfig& cfg) {
  const SystemParams& p = validate(cfg.params);
  check_common(cfg.n_pulses, p.rep_rate_hz);

  const auto [dnu_a, dnu_b] = effective_linewidths(p);
  const double sigma_drift = std::sqrt(v_laser(dnu_a, dnu_b, p.rep_rate_hz));
  const double chi_a = channel_noise(transmittance(p.l_ac_km, p.loss_db_per_km), p.eps_a);
  const double chi_b = channel_noise(transmittance(p.l_bc_km, p.loss_db_per_km), p.eps_b);
  const double lo_intensity = p.lo_intensity();
  // Each LO contributes isotropic noise of variance (chi + 1)/|alpha|^2 per
  // recovered quadrature, so the tangential phase error adds up to
  // (chi_a + chi_b + 2)/|alpha|^2.
  const double sigma_a = std::sqrt((chi_a + 1.0) / lo_intensity);
  const double sigma_b = std::sqrt((chi_b + 1.0) / lo_intensity);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  std::vector<ChunkStats> stats(chunk_count(cfg.n_pulses));
  detail::parallel_for(stats.size(), [&](std::size_t chunk) {
    auto rng = sub_stream(cfg.seed, chunk, StreamTag::calibration);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(-std::numbers::pi, std::numbers::pi);
    ChunkStats& s = stats[chunk];

    double phase = uniform(rng);
    const std::size_t size = chunk_size(cfg.n_pulses, chunk);
    for (std::size_t i = 0; i < size; ++i) {
      // Calibration on the current pulse pair.
      const auto [i1, i2] = interference_intensities(phase, 0.0, lo_intensity);
      const double x = i1 / lo_intensity - 1.0 + sigma_a * normal(rng) + sigma_b * normal(rng);
      const double q = i2 / lo_intensity - 1.0 + sigma_a * normal(rng) + sigma_b * normal(rng);
      const double estimate = phase_from_intensities(lo_intensity * (1.0 + x), lo_intensity * (1.0 + q), lo_intensity);

      // The correction lands on the next signal pulse after the lasers drift.
      const double increment = sigma_drift * normal(rng);
      phase += increment;
      const double residual = std::remainder(phase - estimate, kTwoPi);
      phase = std::remainder(phase, kTwoPi);

      s.drift.add(increment);
      s.residual.add(residual);
      s.cos_residual.add(std::cos(residual));
    }
  });

  ChunkStats total;
  for (const auto& s : stats) {
    total.drift.merge(s.drift);
    total.residual.merge(s.residual);
    total.cos_residual.merge(s.cos_residual);
  }

  const double n = static_cast<double>(cfg.n_pulses);
  McReport r{};
  r.n = cfg.n_pulses;
  r.v_laser_hat = total.drift.variance();
  r.v_prc_hat = total.residual.variance();
  r.eps_prc_hat = 2.0 * p.v_mod * (1.0 - total.cos_residual.mean);
  const double dof_factor = n > 1.0 ? std::sqrt(2.0 / (n - 1.0)) : 0.0;
  r.v_laser_se = r.v_laser_hat * dof_factor;
  r.v_prc_se = r.v_prc_hat * dof_factor;
  r.eps_prc_se = 2.0 * p.v_mod * std::sqrt(total.cos_residual.variance() / n);
  return r;
}

bool McValidation::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const McCheck& c) { return c.pass; });
}

McValidation validate_monte_carlo(const McConfig& cfg) {
  McValidation out{};
  out.report = simulate_calibration(cfg);
  McConfig other = cfg;
  other.seed = cfg.seed + 1;
  out.reseeded = simulate_calibration(other);

  const SystemParams& p = cfg.params;
  const double chi_a = channel_noise(transmittance(p.l_ac_km, p.loss_db_per_km), p.eps_a);
  const double chi_b = channel_noise(transmittance(p.l_bc_km, p.loss_db_per_km), p.eps_b);
  out.analytic = calibration_noise(p.v_mod, p.v_laser(), chi_a, chi_b, p.lo_intensity(), EpsPrcMode::exact);
  out.eps_prc_exact = eps_prc(p.v_mod, out.analytic.v_prc, EpsPrcMode::exact);
  out.eps_prc_approx = eps_prc(p.v_mod, out.analytic.v_prc, EpsPrcMode::approx);

  const McReport& r = out.report;
  out.checks.push_back(relative_check("drift_variance", r.v_laser_hat, out.analytic.v_laser, 0.05));
  out.checks.push_back(relative_check("v_prc", r.v_prc_hat, out.analytic.v_prc, 0.05));
  out.checks.push_back(relative_check("eps_prc_exact", r.eps_prc_hat, out.eps_prc_exact, 0.10));

  const double lower = out.eps_prc_exact - 3.0 * r.eps_prc_se;
  const double upper = out.eps_prc_approx + 3.0 * r.eps_prc_se;
  out.checks.push_back({"eps_prc_between_exact_and_approx", r.eps_prc_hat, 0.5 * (lower + upper),
                        0.5 * (upper - lower), r.eps_prc_hat >= lower && r.eps_prc_hat <= upper});

  // Two-sided F-test on the residual variances of the two seeds.
  const double dof = static_cast<double>(cfg.n_pulses) - 1.0;
  if (dof >= 1.0 && out.reseeded.v_prc_hat > 0.0) {
    const boost::math::fisher_f_distribution<double> f_dist(dof, dof);
    const double f_lo = boost::math::quantile(f_dist, 0.005);
    const double f_hi = boost::math::quantile(f_dist, 0.995);
    const double ratio = r.v_prc_hat / out.reseeded.v_prc_hat;
    out.checks.push_back({"seed_f_test", ratio, 1.0, 0.5 * (f_hi - f_lo), ratio >= f_lo && ratio <= f_hi});
  } else {
    out.checks.push_back({"seed_f_test", 0.0, 0.0, 0.0, r.v_prc_hat == out.reseeded.v_prc_hat});
  }
  return out;
}

}  // namespace cvmdi
