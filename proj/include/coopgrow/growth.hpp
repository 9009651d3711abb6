#ifndef COOPGROW_GROWTH_HPP
#define COOPGROW_GROWTH_HPP

#include <cmath>
#include <cstddef>

#include "coopgrow/errors.hpp"

namespace coopgrow {

/**
 * Exponential growth between strategy updates, discretized as floor-with-carry.
 *
 * The ideal (real-valued) population is multiplied by (1 + n) before every
 * generation; the integer population is its floor, so fractional growth is
 * carried forward and small populations still grow at the exact exponential
 * rate on average.
 */
class GrowthSchedule {
 public:
  // Products like 1000 * 1.001 land one ulp below the intended integer.
  // Values within this relative distance below an integer count as reaching it.
  static constexpr double kSnap = 1e-12;

  GrowthSchedule(std::size_t population, double n) : n_(n), ideal_(static_cast<double>(population)),
                                                     population_(population) {
    if (!(n > 0.0)) throw InvalidParameter("growth fraction n must be > 0");
  }

  /// Advances one generation; returns how many nodes to add before the next update (may be 0).
  std::size_t nodes_before_next_update() {
    ideal_ *= 1.0 + n_;
    const auto target = floor_snapped(ideal_);
    const std::size_t added = target > population_ ? target - population_ : 0;
    population_ += added;
    return added;
  }

  static std::size_t floor_snapped(double x) {
    return static_cast<std::size_t>(std::floor(x * (1.0 + kSnap)));
  }

  double fraction() const noexcept { return n_; }
  double ideal_size() const noexcept { return ideal_; }
  std::size_t population() const noexcept { return population_; }
  /// a * dt for the continuous law, derived from n.
  double rate_times_interval() const { return std::log1p(n_); }

 private:
  double n_;
  double ideal_;
  std::size_t population_;
};

}  // namespace coopgrow

#endif  // COOPGROW_GROWTH_HPP
