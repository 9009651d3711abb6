#ifndef COOPGROW_SIMULATION_HPP
#define COOPGROW_SIMULATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "coopgrow/errors.hpp"
#include "coopgrow/game.hpp"
#include "coopgrow/growth.hpp"
#include "coopgrow/io.hpp"
#include "coopgrow/network.hpp"
#include "coopgrow/random.hpp"

namespace coopgrow {

struct SimParams {
  double r = 2.0;
  double beta = 1.0;
  double n = 0.001;       // growth fraction per generation
  std::size_t L = 4;      // links per newcomer; also the seed clique size N0
  GrowthMechanism mechanism = GrowthMechanism::PreferentialAttachment;
  double pc_growth = 0.0; // probability a newcomer cooperates
  std::uint64_t seed = 1;

  GameParams game() const { return {r, beta}; }

  void validate() const {
    game().validate();
    if (!(n > 0.0)) throw InvalidParameter("growth fraction n must be > 0");
    if (L < 1) throw InvalidParameter("L must be >= 1");
    if (!(pc_growth >= 0.0 && pc_growth <= 1.0)) throw InvalidParameter("pc_growth must be in [0,1]");
  }

  Metadata metadata() const {
    return {{"r", fmt_exact(r)},
            {"beta", fmt_exact(beta)},
            {"n", fmt_exact(n)},
            {"L", std::to_string(L)},
            {"mechanism", std::string(mechanism_name(mechanism))},
            {"pc_growth", fmt_exact(pc_growth)},
            {"seed", std::to_string(seed)}};
  }
};

struct GenerationRecord {
  std::size_t generation;
  std::size_t population;
  double coop_fraction;
};

struct Trajectory {
  std::vector<GenerationRecord> records;  // generation 1, 2, ...
  bool absorbed = false;
  std::size_t initial_population = 0;
  double initial_coop = 1.0;

  /// Cooperation fraction at the end of the run; the core's value if no generation ran.
  double final_coop() const { return records.empty() ? initial_coop : records.back().coop_fraction; }
  std::size_t final_population() const {
    return records.empty() ? initial_population : records.back().population;
  }
};

inline double cooperation_fraction(const StrategyVector& s) {
  if (s.empty()) throw InvalidParameter("cooperation fraction of an empty population");
  const auto c = std::count(s.begin(), s.end(), Strategy::Cooperate);
  return static_cast<double>(c) / static_cast<double>(s.size());
}

struct CooperativeCore {
  Network network;
  StrategyVector strategies;
};

/// L-clique grown to `ni` nodes by the configured mechanism, everyone cooperating.
/// No strategy updates happen while the core is built.
inline CooperativeCore build_cooperative_core(const SimParams& params, std::size_t ni, Rng& rng) {
  if (ni < params.L) throw InvalidParameter("Ni must be >= L (seed clique size)");
  Network net = grow_network(params.mechanism, ni, params.L, rng);
  StrategyVector s(net.size(), Strategy::Cooperate);
  return {std::move(net), std::move(s)};
}

/**
 * One realization: a cooperative core of `ni` nodes, then alternate growth
 * (newcomers cooperate with probability pc_growth) and synchronous
 * generations until the population reaches `nmax`. The final growth step is
 * capped so the population never exceeds nmax.
 *
 * With pc_growth == 0 the run stops as soon as cooperation dies out; the
 * last record then has coop_fraction 0 and `absorbed` is set.
 */
inline Trajectory run_realization(const SimParams& params, std::size_t ni, std::size_t nmax) {
  params.validate();
  if (nmax < ni) throw InvalidParameter("Nmax must be >= Ni");
  Rng rng(params.seed);
  auto core = build_cooperative_core(params, ni, rng);
  GameState state(std::move(core.network), std::move(core.strategies));
  GrowthSchedule schedule(ni, params.n);
  const GameParams game = params.game();

  Trajectory traj;
  traj.initial_population = ni;
  traj.initial_coop = static_cast<double>(state.cooperators()) / static_cast<double>(ni);

  std::size_t generation = 0;
  while (state.size() < nmax) {
    const std::size_t grow = std::min(schedule.nodes_before_next_update(), nmax - state.size());
    for (std::size_t a = 0; a < grow; ++a) {
      const auto targets = attachment_targets(state.network(), params.mechanism, params.L, rng);
      // The coin is skipped at the extremes so pc_growth 0 and 1 consume no extra draws.
      Strategy s = Strategy::Defect;
      if (params.pc_growth >= 1.0 || (params.pc_growth > 0.0 && uniform01(rng) < params.pc_growth))
        s = Strategy::Cooperate;
      state.add_node(targets, s);
    }
    state.generation(game, rng);
    ++generation;
    const double c = static_cast<double>(state.cooperators()) / static_cast<double>(state.size());
    traj.records.push_back({generation, state.size(), c});
    if (state.cooperators() == 0 && params.pc_growth == 0.0) {
      traj.absorbed = true;
      break;
    }
  }
  return traj;
}

struct StationaryEstimate {
  double mean = 0.0;
  bool stationary = true;
};

/**
 * Mean cooperation over the final `window` generations. The run counts as
 * stationary when the means of the two window halves differ by < 0.05.
 * Absorbed runs report (0, stationary).
 */
inline StationaryEstimate stationary_mean(const Trajectory& traj, std::size_t window = 50) {
  if (window == 0) throw InvalidParameter("stationarity window must be >= 1");
  if (traj.absorbed) return {0.0, true};
  if (traj.records.size() < window)
    throw InvalidParameter("trajectory has " + std::to_string(traj.records.size()) +
                           " generations, shorter than window " + std::to_string(window));
  const auto first = traj.records.end() - static_cast<std::ptrdiff_t>(window);
  const std::size_t half = window / 2;
  double sum_a = 0.0, sum_b = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    const double c = first[static_cast<std::ptrdiff_t>(i)].coop_fraction;
    (i < half ? sum_a : sum_b) += c;
  }
  const double mean = (sum_a + sum_b) / static_cast<double>(window);
  if (half == 0) return {mean, true};
  const double drift = sum_a / static_cast<double>(half) - sum_b / static_cast<double>(window - half);
  return {mean, std::abs(drift) < 0.05};
}

/// CSV `generation,population,coop_fraction` preceded by `#` metadata.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Metadata& meta) {
  write_metadata(out, meta);
  out << "# absorbed=" << (traj.absorbed ? "true" : "false") << '\n';
  out << "generation,population,coop_fraction\n";
  for (const auto& rec : traj.records)
    out << rec.generation << ',' << rec.population << ',' << fmt6(rec.coop_fraction) << '\n';
}

}  // namespace coopgrow

#endif  // COOPGROW_SIMULATION_HPP
