#ifndef COOPGROW_EXPERIMENTS_HPP
#define COOPGROW_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "coopgrow/errors.hpp"
#include "coopgrow/io.hpp"
#include "coopgrow/random.hpp"
#include "coopgrow/simulation.hpp"

namespace coopgrow {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index runs
/// exactly once; callers write results into slot i so the outcome does not
/// depend on scheduling. The first exception thrown is rethrown here.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

struct EnsembleOptions {
  std::size_t workers = 1;
  std::size_t window = 50;  // stationarity window, generations
};

// ---------------------------------------------------------------------------
// Transition curve

struct TransitionPoint {
  double r;
  double mean_coop;
  double std_error;
  double nonstationary_frac;
  std::size_t realizations;
};

struct TransitionCurve {
  std::vector<TransitionPoint> points;
  SimParams base;  // r unused; seed is the master seed
  std::size_t ni = 0;
  std::size_t nmax = 0;
  std::size_t realizations = 0;
  std::size_t window = 50;
};

namespace detail {

inline TransitionPoint aggregate(double r, std::span<const StationaryEstimate> est) {
  const auto m = static_cast<double>(est.size());
  double sum = 0.0;
  std::size_t nonstationary = 0;
  for (const auto& e : est) {
    sum += e.mean;
    if (!e.stationary) ++nonstationary;
  }
  const double mean = sum / m;
  double var = 0.0;
  for (const auto& e : est) var += (e.mean - mean) * (e.mean - mean);
  const double se = est.size() > 1 ? std::sqrt(var / (m - 1.0) / m) : 0.0;
  return {r, mean, se, static_cast<double>(nonstationary) / m, est.size()};
}

}  // namespace detail

/// Ensemble statistics of one r value. Realization k uses
/// trial_seed(master, "transition", k) for every r, so neighboring grid
/// points share their network realizations.
inline TransitionPoint transition_point(const SimParams& base, double r, std::size_t ni, std::size_t nmax,
                                        std::size_t realizations, const EnsembleOptions& opt = {}) {
  if (realizations < 1) throw InvalidParameter("realizations must be >= 1");
  std::vector<StationaryEstimate> est(realizations);
  parallel_for(realizations, opt.workers, [&](std::size_t k) {
    SimParams p = base;
    p.r = r;
    p.pc_growth = 0.0;
    p.seed = trial_seed(base.seed, "transition", k);
    est[k] = stationary_mean(run_realization(p, ni, nmax), opt.window);
  });
  return detail::aggregate(r, est);
}

inline TransitionCurve transition_curve(const SimParams& base, std::span<const double> r_grid, std::size_t ni,
                                        std::size_t nmax, std::size_t realizations,
                                        const EnsembleOptions& opt = {}) {
  if (r_grid.empty()) throw InvalidParameter("r grid is empty");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1])) throw InvalidParameter("r grid must be strictly increasing");
  if (realizations < 1) throw InvalidParameter("realizations must be >= 1");
  TransitionCurve curve{{}, base, ni, nmax, realizations, opt.window};
  curve.points.resize(r_grid.size());
  // Flatten (r, realization) so workers stay busy across grid points.
  const std::size_t total = r_grid.size() * realizations;
  std::vector<StationaryEstimate> est(total);
  parallel_for(total, opt.workers, [&](std::size_t idx) {
    SimParams p = base;
    p.r = r_grid[idx / realizations];
    p.pc_growth = 0.0;
    p.seed = trial_seed(base.seed, "transition", idx % realizations);
    est[idx] = stationary_mean(run_realization(p, ni, nmax), opt.window);
  });
  for (std::size_t g = 0; g < r_grid.size(); ++g)
    curve.points[g] = detail::aggregate(r_grid[g], std::span(est).subspan(g * realizations, realizations));
  return curve;
}

struct RcBracket {
  double lo;  // largest r with mean below threshold
  double hi;  // next r at or above threshold
  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  // The crossing lies in (lo, hi]; brackets sharing only an endpoint are disjoint.
  bool overlaps(const RcBracket& o) const { return lo < o.hi && o.lo < hi; }
};

/// Brackets the threshold crossing of the mean-cooperation curve.
inline RcBracket estimate_rc(std::span<const TransitionPoint> points, double threshold = 0.5) {
  std::ptrdiff_t below = -1;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].mean_coop < threshold) below = static_cast<std::ptrdiff_t>(i);
  if (below < 0) throw NoTransitionInRange("mean cooperation never falls below threshold in r range");
  if (static_cast<std::size_t>(below) + 1 >= points.size())
    throw NoTransitionInRange("mean cooperation never reaches threshold above the last sub-threshold r");
  return {points[static_cast<std::size_t>(below)].r, points[static_cast<std::size_t>(below) + 1].r};
}

inline RcBracket estimate_rc(const TransitionCurve& curve, double threshold = 0.5) {
  return estimate_rc(std::span<const TransitionPoint>(curve.points), threshold);
}

/// Bisection on a bracket: `mean_at(r)` re-evaluates the ensemble mean at the
/// midpoint until the bracket is no wider than `tolerance`.
inline RcBracket refine_rc(RcBracket bracket, const std::function<double(double)>& mean_at, double tolerance,
                           double threshold = 0.5) {
  if (!(tolerance > 0.0)) throw InvalidParameter("refinement tolerance must be > 0");
  while (bracket.width() > tolerance) {
    const double mid = bracket.midpoint();
    if (mean_at(mid) < threshold)
      bracket.lo = mid;
    else
      bracket.hi = mid;
  }
  return bracket;
}

/// r "just over" the transition: bracket midpoint plus one bracket width.
inline double r_above_transition(const RcBracket& b) { return b.midpoint() + b.width(); }

inline Metadata transition_metadata(const TransitionCurve& c) {
  Metadata meta = c.base.metadata();
  meta.erase(std::remove_if(meta.begin(), meta.end(), [](const auto& kv) { return kv.first == "r"; }),
             meta.end());
  meta.emplace_back("ni", std::to_string(c.ni));
  meta.emplace_back("nmax", std::to_string(c.nmax));
  meta.emplace_back("realizations", std::to_string(c.realizations));
  meta.emplace_back("window", std::to_string(c.window));
  return meta;
}

/// CSV `r,mean_coop,stderr,nonstationary_frac,realizations`.
inline void write_transition_csv(std::ostream& out, const TransitionCurve& c, const Metadata& meta) {
  write_metadata(out, meta);
  out << "r,mean_coop,stderr,nonstationary_frac,realizations\n";
  for (const auto& p : c.points)
    out << fmt6(p.r) << ',' << fmt6(p.mean_coop) << ',' << fmt6(p.std_error) << ','
        << fmt6(p.nonstationary_frac) << ',' << p.realizations << '\n';
}

// ---------------------------------------------------------------------------
// Fixation probability and cooperative seed

struct WilsonInterval {
  double lo;
  double hi;
};

/// Wilson score interval for `successes` out of `trials` (95% by default).
inline WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054) {
  if (trials == 0) throw InvalidParameter("Wilson interval needs >= 1 trial");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The bounds are exactly 0 and 1 at the edges; the formula leaves rounding dust.
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

struct FixationPoint {
  std::size_t ni;
  std::size_t M;
  std::size_t Mc;
  double pf;
  WilsonInterval ci;
};

struct FixationCurve {
  std::vector<FixationPoint> points;
  SimParams base;  // includes r; seed is the master seed
  std::size_t n_target = 0;
};

/// For each Ni: M realizations grown by defectors to n_target; a run counts
/// as cooperative when its final cooperation fraction exceeds 1/2.
/// Trial k of size Ni uses trial_seed(master, "fixation/ni=<Ni>", k).
inline FixationCurve fixation_probability(const SimParams& base, std::span<const std::size_t> ni_list,
                                          std::size_t M, std::size_t n_target, const EnsembleOptions& opt = {}) {
  if (M < 1) throw InvalidParameter("M must be >= 1");
  if (ni_list.empty()) throw InvalidParameter("Ni list is empty");
  for (std::size_t i = 1; i < ni_list.size(); ++i)
    if (!(ni_list[i] > ni_list[i - 1])) throw InvalidParameter("Ni list must be strictly increasing");
  const std::size_t total = ni_list.size() * M;
  std::vector<std::uint8_t> cooperative(total, 0);
  parallel_for(total, opt.workers, [&](std::size_t idx) {
    const std::size_t ni = ni_list[idx / M];
    SimParams p = base;
    p.pc_growth = 0.0;
    p.seed = trial_seed(base.seed, "fixation/ni=" + std::to_string(ni), idx % M);
    cooperative[idx] = run_realization(p, ni, std::max(ni, n_target)).final_coop() > 0.5;
  });
  FixationCurve curve{{}, base, n_target};
  for (std::size_t g = 0; g < ni_list.size(); ++g) {
    std::size_t mc = 0;
    for (std::size_t k = 0; k < M; ++k) mc += cooperative[g * M + k];
    curve.points.push_back({ni_list[g], M, mc, static_cast<double>(mc) / static_cast<double>(M),
                            wilson_interval(mc, M)});
  }
  return curve;
}

/// Smallest Ni from which P_f stays >= 1 - eps for every larger Ni in the curve.
inline std::size_t cooperative_seed_size(std::span<const FixationPoint> points, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must be in (0,1)");
  std::size_t seed = 0;
  bool found = false;
  for (std::size_t i = points.size(); i-- > 0;) {
    if (points[i].pf < 1.0 - eps) break;
    seed = points[i].ni;
    found = true;
  }
  if (!found) throw SeedNotFound("no Ni reaches P_f >= 1 - eps through the end of the curve");
  return seed;
}

inline std::size_t cooperative_seed_size(const FixationCurve& curve, double eps) {
  return cooperative_seed_size(std::span<const FixationPoint>(curve.points), eps);
}

/// Default eps for a curve: 2/M, clamped into (0,1).
inline double default_seed_eps(std::size_t M) { return std::min(0.5, 2.0 / static_cast<double>(M)); }

inline Metadata fixation_metadata(const FixationCurve& c) {
  Metadata meta = c.base.metadata();
  meta.emplace_back("n_target", std::to_string(c.n_target));
  return meta;
}

/// CSV `ni,M,Mc,pf,wilson_lo,wilson_hi`.
inline void write_fixation_csv(std::ostream& out, const FixationCurve& c, const Metadata& meta) {
  write_metadata(out, meta);
  out << "ni,M,Mc,pf,wilson_lo,wilson_hi\n";
  for (const auto& p : c.points)
    out << p.ni << ',' << p.M << ',' << p.Mc << ',' << fmt6(p.pf) << ',' << fmt6(p.ci.lo) << ','
        << fmt6(p.ci.hi) << '\n';
}

}  // namespace coopgrow

#endif  // COOPGROW_EXPERIMENTS_HPP
