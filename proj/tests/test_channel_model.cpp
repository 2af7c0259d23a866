#include "cvmdi/channel_model.hpp"

#include <gtest/gtest.h>

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <random>

#include "reference.hpp"

using namespace cvmdi;
using cvmdi::testing::ref;

TEST(transmittance, examples) {
  EXPECT_EQ(transmittance(0.0, 0.2), 1.0);
  EXPECT_NEAR(transmittance(10.0, 0.2), ref("t(10km)"), 1e-15);
  EXPECT_NEAR(transmittance(50.0, 0.2), 0.1, 1e-16);
  EXPECT_THROW(transmittance(-1.0, 0.2), DomainError);
  EXPECT_THROW(transmittance(1.0, -0.2), DomainError);
}

TEST(channel_noise, examples) {
  EXPECT_EQ(channel_noise(1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(channel_noise(0.5, 0.002), 1.002);
  EXPECT_DOUBLE_EQ(channel_noise(1.0, 0.002), 0.002);
  EXPECT_THROW(channel_noise(0.0, 0.002), DomainError);
  EXPECT_THROW(channel_noise(1.5, 0.002), DomainError);
}

TEST(optimal_gain_squared, examples) {
  EXPECT_DOUBLE_EQ(optimal_gain_squared(7.0, 1.0), 1.5);
  EXPECT_NEAR(optimal_gain_squared(13.0, 1.0), 1.7142857142857142, 1e-15);
  EXPECT_DOUBLE_EQ(optimal_gain_squared(7.0, 0.5), 3.0);
  EXPECT_THROW(optimal_gain_squared(1.0, 1.0), DomainError);
  EXPECT_THROW(optimal_gain_squared(0.5, 1.0), DomainError);
}

TEST(equivalent_excess_noise, optimized_examples) {
  EXPECT_NEAR(equivalent_excess_noise_optimized(1.0, 1.0, 0.002, 0.002), 0.004, 1e-15);
  EXPECT_NEAR(equivalent_excess_noise_optimized(transmittance(10.0, 0.2), 1.0, 0.002, 0.002),
              ref("eps_c_opt(t_a=10^-0.2,t_b=1)"), 1e-14);
}

TEST(equivalent_excess_noise, general_form_at_optimal_gain_matches_optimized) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> length(0.0, 100.0);
  std::uniform_real_distribution<double> eps(1e-3, 0.1);
  std::uniform_real_distribution<double> vmod(0.5, 60.0);
  for (int i = 0; i < 1000; ++i) {
    double l1 = length(rng);
    double l2 = length(rng);
    if (l1 < l2) std::swap(l1, l2);
    const double t_a = transmittance(l1, 0.2);
    const double t_b = transmittance(l2, 0.2);
    const double e_a = eps(rng);
    const double e_b = eps(rng);
    const double v_b = vmod(rng) + 1.0;
    const double general =
        equivalent_excess_noise_general(t_a, t_b, e_a, e_b, v_b, optimal_gain_squared(v_b, t_b));
    const double optimized = equivalent_excess_noise_optimized(t_a, t_b, e_a, e_b);
    EXPECT_NEAR(general, optimized, 1e-12 * std::abs(optimized));
  }
}

TEST(equivalent_excess_noise, numerical_minimum_over_gain_is_the_closed_form) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> length(0.0, 60.0);
  std::uniform_real_distribution<double> vmod(1.0, 40.0);
  for (int i = 0; i < 50; ++i) {
    double l1 = length(rng);
    double l2 = length(rng);
    if (l1 < l2) std::swap(l1, l2);
    const double t_a = transmittance(l1, 0.2);
    const double t_b = transmittance(l2, 0.2);
    const double v_b = vmod(rng) + 1.0;
    const double g_opt = std::sqrt(optimal_gain_squared(v_b, t_b));
    const auto objective = [&](double g) {
      return equivalent_excess_noise_general(t_a, t_b, 0.002, 0.002, v_b, g * g);
    };
    const auto [g_min, f_min] = boost::math::tools::brent_find_minima(objective, 0.05 * g_opt, 20.0 * g_opt, 52);
    EXPECT_NEAR(g_min * g_min / (g_opt * g_opt), 1.0, 1e-6);
    EXPECT_NEAR(f_min, equivalent_excess_noise_optimized(t_a, t_b, 0.002, 0.002), 1e-12);
  }
}

TEST(equivalent_excess_noise, monotone_in_transmittances) {
  for (double eps_b : {0.0, 0.002, 0.5, 1.9}) {
    for (int i = 1; i < 100; ++i) {
      const double t = i / 100.0;
      const double dt = 0.005;
      // Decreasing in T_A (flat only at T_B = 1, eps_B = 0).
      EXPECT_GT(equivalent_excess_noise_optimized(t, 0.9, 0.002, eps_b),
                equivalent_excess_noise_optimized(t + dt, 0.9, 0.002, eps_b));
      // Decreasing in T_B too while eps_B < 2.
      EXPECT_GT(equivalent_excess_noise_optimized(0.3, t, 0.002, eps_b),
                equivalent_excess_noise_optimized(0.3, t + dt, 0.002, eps_b));
    }
  }
}

TEST(total_added_noise, examples) {
  EXPECT_EQ(total_added_noise(1.0, 0.0, 0.0), 0.0);
  EXPECT_NEAR(total_added_noise(0.75, 0.004, 0.03), 0.3673333333333333, 1e-15);
  EXPECT_NEAR(total_added_noise(0.857143, 0.004, 0.264), 0.434666, 1e-6);
  EXPECT_THROW(total_added_noise(0.0, 0.0, 0.0), DomainError);
}

TEST(equivalent_channel, eta_inside_unit_interval_when_relay_nearer_bob) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> length(0.0, 200.0);
  std::uniform_real_distribution<double> vmod(0.01, 100.0);
  for (int i = 0; i < 1000; ++i) {
    double l1 = length(rng);
    double l2 = length(rng);
    if (l1 < l2) std::swap(l1, l2);
    const double v = vmod(rng) + 1.0;
    const auto ch = equivalent_channel(transmittance(l1, 0.2), transmittance(l2, 0.2), 0.002, 0.002, v, 0.0);
    EXPECT_GT(ch.eta, 0.0);
    EXPECT_LT(ch.eta, 1.0);
    EXPECT_NEAR(ch.eta, ch.t_a / ch.t_b * (v - 1.0) / (v + 1.0), 1e-15);
    EXPECT_GE(ch.chi_t, 0.0);
  }
}

TEST(equivalent_channel, fig4_origin_point) {
  const auto ch = equivalent_channel(1.0, 1.0, 0.002, 0.002, 7.0, 0.03);
  EXPECT_DOUBLE_EQ(ch.g_sq, 1.5);
  EXPECT_DOUBLE_EQ(ch.eta, 0.75);
  EXPECT_NEAR(ch.eps_c, 0.004, 1e-15);
  EXPECT_NEAR(ch.chi_t, 0.3673333333333333, 1e-15);
}

TEST(equivalent_channel, relay_nearer_alice_can_push_eta_over_one) {
  EXPECT_THROW(equivalent_channel(1.0, 0.1, 0.002, 0.002, 13.0, 0.0), DomainError);
}
