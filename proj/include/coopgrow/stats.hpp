#ifndef COOPGROW_STATS_HPP
#define COOPGROW_STATS_HPP

#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "coopgrow/errors.hpp"
#include "coopgrow/io.hpp"
#include "coopgrow/network.hpp"

namespace coopgrow {

/// counts[k] = number of nodes with degree k.
struct DegreeHistogram {
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  std::size_t max_degree() const { return counts.empty() ? 0 : counts.size() - 1; }
  double mean_degree() const {
    double s = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) s += static_cast<double>(k * counts[k]);
    return total ? s / static_cast<double>(total) : 0.0;
  }
  void add(std::size_t k, std::size_t times = 1) {
    if (k >= counts.size()) counts.resize(k + 1, 0);
    counts[k] += times;
    total += times;
  }
};

inline DegreeHistogram degree_histogram(const Network& net) {
  if (net.size() == 0) throw InvalidParameter("degree histogram of an empty network");
  DegreeHistogram h;
  for (NodeId i = 0; i < net.size(); ++i) h.add(net.degree(i));
  return h;
}

/// Hurwitz zeta  sum_{k>=0} (q + k)^-s  for s > 1, q > 0, by Euler-Maclaurin
/// summation after 16 explicit terms.
inline double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw InvalidParameter("hurwitz_zeta needs s > 1 and q > 0");
  constexpr int kDirect = 16;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  // B_2j / (2j)!
  constexpr double kCoef[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0,
                              -691.0 / 1307674368000.0};
  double rising = s;                 // s (s+1) ... (s + 2j - 2)
  double power = std::pow(a, -s - 1.0);  // a^(-s-2j+1)
  for (int j = 0; j < 6; ++j) {
    sum += kCoef[j] * rising * power;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    power /= a * a;
  }
  return sum;
}

struct PowerLawFit {
  double gamma;
  double std_error;
  std::size_t tail_samples;
  double gamma_approx;  // closed-form continuous approximation, k_min - 1/2 offset
};

/**
 * Discrete power-law exponent over all degrees >= k_min.
 *
 * Starts from the closed-form estimate 1 + m / sum ln(k / (k_min - 1/2)),
 * then maximizes the exact discrete likelihood
 *   -gamma sum ln k - m ln zeta(gamma, k_min).
 * The closed form alone is biased low by several standard errors at small
 * k_min. Standard error (gamma - 1) / sqrt(m).
 */
inline PowerLawFit powerlaw_exponent(const DegreeHistogram& h, std::size_t k_min) {
  if (k_min < 1) throw InvalidParameter("k_min must be >= 1");
  const double base = static_cast<double>(k_min) - 0.5;
  std::size_t m = 0, distinct = 0;
  double log_ratio_sum = 0.0, log_sum = 0.0;
  for (std::size_t k = k_min; k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    const auto c = static_cast<double>(h.counts[k]);
    m += h.counts[k];
    ++distinct;
    log_ratio_sum += c * std::log(static_cast<double>(k) / base);
    log_sum += c * std::log(static_cast<double>(k));
  }
  if (m < 100) throw InsufficientTail("power-law fit needs >= 100 samples with k >= k_min, got " +
                                      std::to_string(m));
  if (distinct < 2) throw InsufficientTail("degenerate tail: all samples share one degree");
  const auto mm = static_cast<double>(m);
  const double approx = 1.0 + mm / log_ratio_sum;
  const double q = static_cast<double>(k_min);
  auto neg_log_likelihood = [&](double g) { return g * log_sum + mm * std::log(hurwitz_zeta(g, q)); };
  const double lo = std::max(1.0 + 1e-6, 0.5 * (1.0 + approx));
  const double hi = 2.0 * approx;
  const double gamma = boost::math::tools::brent_find_minima(neg_log_likelihood, lo, hi, 40).first;
  return {gamma, (gamma - 1.0) / std::sqrt(mm), m, approx};
}

struct ExponentialTailFit {
  double slope;      // d ln S(k) / dk; negative for a decaying tail
  double r_squared;
  std::size_t points;
};

/// Least-squares line through ln S(k), S(k) = fraction of nodes with degree >= k,
/// for every k from k_min to the maximum degree.
inline ExponentialTailFit exponential_tail_check(const DegreeHistogram& h, std::size_t k_min) {
  if (h.total == 0) throw InsufficientTail("empty histogram");
  std::vector<double> xs, ys;
  std::size_t above = 0;
  for (std::size_t k = h.counts.size(); k-- > k_min;) {
    above += h.counts[k];
    if (above == 0) continue;
    xs.push_back(static_cast<double>(k));
    ys.push_back(std::log(static_cast<double>(above) / static_cast<double>(h.total)));
  }
  if (xs.size() < 3) throw InsufficientTail("exponential tail fit needs >= 3 degree values");
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, r2, xs.size()};
}

/// CSV `k,count` for every degree that occurs.
inline void write_histogram_csv(std::ostream& out, const DegreeHistogram& h, const Metadata& meta) {
  write_metadata(out, meta);
  out << "k,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    if (h.counts[k]) out << k << ',' << h.counts[k] << '\n';
}

}  // namespace coopgrow

#endif  // COOPGROW_STATS_HPP
