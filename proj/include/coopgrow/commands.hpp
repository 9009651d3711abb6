#ifndef COOPGROW_COMMANDS_HPP
#define COOPGROW_COMMANDS_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "coopgrow/config.hpp"
#include "coopgrow/errors.hpp"
#include "coopgrow/experiments.hpp"
#include "coopgrow/io.hpp"
#include "coopgrow/network.hpp"
#include "coopgrow/simulation.hpp"
#include "coopgrow/stats.hpp"

namespace coopgrow {

namespace fs = std::filesystem;

namespace detail {

inline std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

inline fs::path prepare_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

inline void write_plot(const fs::path& path, const std::string& body) {
  auto out = open_output(path);
  out << "# gnuplot script\n"
      << "set datafile separator ','\n"
      << "set datafile commentschars '#'\n"
      << body;
}

inline SimParams sim_with_r(const RunConfig& cfg, double r) {
  SimParams p = cfg.sim;
  p.r = r;
  return p;
}

}  // namespace detail

/// `run`: one realization from a cooperative core of `ni` grown to `nmax`.
/// Writes trajectory.csv and trajectory.gp.
inline std::vector<fs::path> cmd_run(const RunConfig& cfg) {
  if (!cfg.r) throw ConfigError("r", "the run command needs an explicit r");
  const auto dir = detail::prepare_dir(cfg);
  const SimParams p = detail::sim_with_r(cfg, *cfg.r);
  const Trajectory traj = run_realization(p, cfg.ni, cfg.nmax);

  const fs::path csv = dir / "trajectory.csv";
  {
    auto out = detail::open_output(csv);
    write_trajectory_csv(out, traj, config_metadata(cfg, "run"));
  }
  const fs::path gp = dir / "trajectory.gp";
  detail::write_plot(gp,
                     "set xlabel 'population N'\nset ylabel '<c>'\nset yrange [0:1]\n"
                     "plot 'trajectory.csv' using 2:3 with lines title 'cooperation fraction'\n");
  return {csv, gp};
}

/// `transition`: ensemble-mean cooperation over the r grid, plus the r_c bracket
/// when the curve crosses the threshold. Writes transition.csv and transition.gp.
inline std::vector<fs::path> cmd_transition(const RunConfig& cfg) {
  const auto dir = detail::prepare_dir(cfg);
  const auto grid = cfg.r_grid();
  const TransitionCurve curve =
      transition_curve(cfg.sim, grid, cfg.ni, cfg.nmax, cfg.realizations, cfg.ensemble());

  Metadata meta = config_metadata(cfg, "transition");
  try {
    const RcBracket b = estimate_rc(curve, cfg.threshold);
    meta.emplace_back("rc_lo", fmt_exact(b.lo));
    meta.emplace_back("rc_hi", fmt_exact(b.hi));
    meta.emplace_back("rc_mid", fmt_exact(b.midpoint()));
  } catch (const NoTransitionInRange&) {
    meta.emplace_back("rc", "none");
  }

  const fs::path csv = dir / "transition.csv";
  {
    auto out = detail::open_output(csv);
    write_transition_csv(out, curve, meta);
  }
  const fs::path gp = dir / "transition.gp";
  detail::write_plot(gp,
                     "set xlabel 'r = b/c'\nset ylabel '<c>'\nset yrange [0:1]\n"
                     "plot 'transition.csv' using 1:2:3 with yerrorlines title 'mean stationary <c>'\n");
  return {csv, gp};
}

/// `fixation`: P_f(Ni) at fixed r and the cooperative-seed estimate. With
/// r=auto the r grid is scanned first (written to fixation_scan.csv) and r is
/// set to the bracket midpoint plus one bracket width.
inline std::vector<fs::path> cmd_fixation(const RunConfig& cfg) {
  const auto dir = detail::prepare_dir(cfg);
  std::vector<fs::path> written;
  Metadata meta = config_metadata(cfg, "fixation");

  double r = 0.0;
  if (cfg.r) {
    r = *cfg.r;
  } else {
    const auto grid = cfg.r_grid();
    const TransitionCurve scan =
        transition_curve(cfg.sim, grid, cfg.ni, cfg.nmax, cfg.realizations, cfg.ensemble());
    const RcBracket b = estimate_rc(scan, cfg.threshold);
    r = r_above_transition(b);
    meta.emplace_back("rc_lo", fmt_exact(b.lo));
    meta.emplace_back("rc_hi", fmt_exact(b.hi));
    Metadata scan_meta = config_metadata(cfg, "fixation");
    scan_meta.emplace_back("rc_lo", fmt_exact(b.lo));
    scan_meta.emplace_back("rc_hi", fmt_exact(b.hi));
    const fs::path scan_csv = dir / "fixation_scan.csv";
    auto out = detail::open_output(scan_csv);
    write_transition_csv(out, scan, scan_meta);
    written.push_back(scan_csv);
  }
  meta.emplace_back("r_used", fmt_exact(r));

  const FixationCurve curve =
      fixation_probability(detail::sim_with_r(cfg, r), cfg.ni_list, cfg.M, cfg.n_target, cfg.ensemble());
  try {
    meta.emplace_back("seed_size", std::to_string(cooperative_seed_size(curve, cfg.seed_eps())));
  } catch (const SeedNotFound&) {
    meta.emplace_back("seed_size", "none");
  }

  const fs::path csv = dir / "fixation.csv";
  {
    auto out = detail::open_output(csv);
    write_fixation_csv(out, curve, meta);
  }
  const fs::path gp = dir / "fixation.gp";
  detail::write_plot(gp,
                     "set xlabel 'N_i'\nset ylabel 'P_f'\nset yrange [0:1.05]\nset logscale x\n"
                     "plot 'fixation.csv' using 1:4:5:6 with yerrorlines title 'fixation probability'\n");
  written.push_back(csv);
  written.push_back(gp);
  return written;
}

/// `netgen`: one grown network of N nodes. Writes network.edges,
/// degree_hist.csv and degree_hist.gp (log-log degree distribution).
inline std::vector<fs::path> cmd_netgen(const RunConfig& cfg) {
  const auto dir = detail::prepare_dir(cfg);
  Rng rng(cfg.sim.seed);
  const Network net = grow_network(cfg.sim.mechanism, cfg.N, cfg.sim.L, rng);

  const fs::path edges = dir / "network.edges";
  {
    auto out = detail::open_output(edges);
    write_edge_list(out, net, cfg.sim.mechanism, cfg.sim.L, cfg.sim.seed);
  }
  const DegreeHistogram h = degree_histogram(net);
  const fs::path hist = dir / "degree_hist.csv";
  {
    Metadata meta = config_metadata(cfg, "netgen");
    meta.emplace_back("mean_degree", fmt6(h.mean_degree()));
    auto out = detail::open_output(hist);
    write_histogram_csv(out, h, meta);
  }
  const fs::path gp = dir / "degree_hist.gp";
  detail::write_plot(gp,
                     "set xlabel 'k'\nset ylabel 'count'\nset logscale xy\n"
                     "plot 'degree_hist.csv' using 1:2 with points title 'degree distribution'\n");
  return {edges, hist, gp};
}

}  // namespace coopgrow

#endif  // COOPGROW_COMMANDS_HPP
