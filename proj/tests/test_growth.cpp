#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "coopgrow/growth.hpp"

using coopgrow::GrowthSchedule;

TEST(GrowthSchedule, HandCheckedSteps) {
  GrowthSchedule a(1000, 0.001);
  EXPECT_EQ(a.nodes_before_next_update(), 1u);
  EXPECT_EQ(a.population(), 1001u);

  GrowthSchedule b(100, 0.001);
  EXPECT_EQ(b.nodes_before_next_update(), 0u);
  EXPECT_NEAR(b.ideal_size(), 100.1, 1e-12);
  EXPECT_EQ(b.population(), 100u);

  GrowthSchedule c(4, 0.5);
  EXPECT_EQ(c.nodes_before_next_update(), 2u);
  EXPECT_DOUBLE_EQ(c.ideal_size(), 6.0);
}

TEST(GrowthSchedule, CarryAccumulates) {
  // Sub-unit growth per step is carried, never dropped.
  GrowthSchedule s(100, 0.001);
  std::size_t total = 0;
  for (int g = 1; g <= 20; ++g) {
    total += s.nodes_before_next_update();
    const auto expect = static_cast<std::size_t>(std::floor(100.0L * std::pow(1.001L, g) * (1 + 1e-12L)));
    EXPECT_EQ(100 + total, expect) << "generation " << g;
  }
}

TEST(GrowthSchedule, RejectsNonPositiveFraction) {
  EXPECT_THROW(GrowthSchedule(10, 0.0), coopgrow::InvalidParameter);
  EXPECT_THROW(GrowthSchedule(10, -0.1), coopgrow::InvalidParameter);
}

TEST(GrowthSchedule, MatchesDirectPowerOnRandomParameters) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::size_t> pop(1, 5000);
  std::uniform_real_distribution<double> frac(1e-4, 0.05);
  std::uniform_int_distribution<int> gens(1, 10000);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n0 = pop(rng);
    const double n = frac(rng);
    int G = gens(rng);
    // Keep populations in a sane range.
    G = std::min<int>(G, static_cast<int>(std::log(1e7 / n0) / std::log1p(n)));
    GrowthSchedule s(n0, n);
    std::size_t population = n0;
    for (int g = 0; g < G; ++g) population += s.nodes_before_next_update();
    const long double ideal = static_cast<long double>(n0) * std::pow(1.0L + n, static_cast<long double>(G));
    const long double lo = std::floor(ideal * (1 - 1e-10L));
    const long double hi = std::floor(ideal * (1 + 1e-10L));
    // Equal to floor(N0 (1+n)^G) up to ties within rounding noise of an integer.
    EXPECT_GE(static_cast<long double>(population), lo) << n0 << ' ' << n << ' ' << G;
    EXPECT_LE(static_cast<long double>(population), hi) << n0 << ' ' << n << ' ' << G;
  }
}

TEST(GrowthSchedule, LongRunRate) {
  GrowthSchedule s(1000, 0.001);
  for (int g = 0; g < 1000; ++g) s.nodes_before_next_update();
  const double ratio = s.ideal_size() / 1000.0;
  EXPECT_NEAR(ratio / std::pow(1.001, 1000), 1.0, 1e-6);
  const double int_ratio = static_cast<double>(s.population()) / 1000.0;
  EXPECT_NEAR(int_ratio, std::pow(1.001, 1000), 1e-3);
}

TEST(GrowthSchedule, IdealSizeNondecreasing) {
  GrowthSchedule s(7, 0.01);
  double prev = s.ideal_size();
  std::size_t prev_pop = s.population();
  for (int g = 0; g < 500; ++g) {
    s.nodes_before_next_update();
    EXPECT_GE(s.ideal_size(), prev);
    EXPECT_GE(s.population(), prev_pop);
    EXPECT_EQ(s.population(), GrowthSchedule::floor_snapped(s.ideal_size()));
    prev = s.ideal_size();
    prev_pop = s.population();
  }
}

TEST(GrowthSchedule, DerivedRate) {
  GrowthSchedule s(10, 0.001);
  EXPECT_NEAR(s.rate_times_interval(), std::log(1.001), 1e-15);
}
