#ifndef COOPGROW_GAME_HPP
#define COOPGROW_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "coopgrow/errors.hpp"
#include "coopgrow/network.hpp"
#include "coopgrow/random.hpp"

namespace coopgrow {

enum class Strategy : std::uint8_t { Defect = 0, Cooperate = 1 };

using StrategyVector = std::vector<Strategy>;

constexpr Strategy opposite(Strategy s) noexcept {
  return s == Strategy::Cooperate ? Strategy::Defect : Strategy::Cooperate;
}

/// Prisoner's dilemma with cost normalized to 1 and benefit r, plus the
/// Fermi selection intensity beta (in those payoff units).
struct GameParams {
  double r = 2.0;
  double beta = 1.0;

  void validate() const {
    if (!(r > 1.0)) throw InvalidParameter("benefit-cost ratio r must be > 1");
    if (!(beta >= 0.0)) throw InvalidParameter("beta must be >= 0");
  }
};

/// Payoff of one node from its degree and cooperating-neighbor count.
constexpr double payoff_from_counts(Strategy s, std::size_t degree, std::size_t coop_neighbors, double r) {
  const double gain = r * static_cast<double>(coop_neighbors);
  return s == Strategy::Cooperate ? gain - static_cast<double>(degree) : gain;
}

inline std::size_t cooperating_neighbors(const Network& net, const StrategyVector& s, NodeId i) {
  const auto nb = net.neighbors(i);
  return static_cast<std::size_t>(
      std::count_if(nb.begin(), nb.end(), [&](NodeId j) { return s[j] == Strategy::Cooperate; }));
}

inline double payoff(const Network& net, const StrategyVector& s, const GameParams& p, NodeId i) {
  return payoff_from_counts(s.at(i), net.degree(i), cooperating_neighbors(net, s, i), p.r);
}

/// Probability that a node imitates a neighbor whose payoff exceeds its own by `payoff_gap`.
inline double fermi(double beta, double payoff_gap) {
  const double x = std::clamp(-beta * payoff_gap, -700.0, 700.0);
  return 1.0 / (1.0 + std::exp(x));
}

namespace detail {

// Visits every node in index order and decides adoption from pre-update state.
// Consumes the stream identically for any caller that supplies the same
// cooperating-neighbor counts: a node with no opposite-strategy neighbor draws
// nothing (it cannot change), otherwise one neighbor index and, if that
// neighbor differs, one Fermi coin.
template <class OnFlip>
void adoption_pass(const Network& net, const StrategyVector& s, std::span<const std::uint32_t> coop_nb,
                   const GameParams& p, Rng& rng, OnFlip&& on_flip) {
  const std::size_t n = net.size();
  for (NodeId i = 0; i < n; ++i) {
    const auto nb = net.neighbors(i);
    const std::size_t k = nb.size();
    const Strategy si = s[i];
    const std::size_t opp = si == Strategy::Cooperate ? k - coop_nb[i] : coop_nb[i];
    if (opp == 0) continue;
    const NodeId j = nb[uniform_index(rng, k)];
    if (s[j] == si) continue;
    const double pi = payoff_from_counts(si, k, coop_nb[i], p.r);
    const double pj = payoff_from_counts(s[j], net.degree(j), coop_nb[j], p.r);
    if (uniform01(rng) < fermi(p.beta, pj - pi)) on_flip(i);
  }
}

}  // namespace detail

/**
 * One synchronous generation: payoffs from the input strategies, then every
 * node imitates one uniformly chosen neighbor with the Fermi probability.
 * All adoptions read the input vector; isolated nodes never change.
 */
inline StrategyVector synchronous_generation(const Network& net, const StrategyVector& s, const GameParams& p,
                                             Rng& rng) {
  if (s.size() != net.size()) throw InvalidParameter("strategy vector length differs from network size");
  std::vector<std::uint32_t> coop_nb(net.size());
  for (NodeId i = 0; i < net.size(); ++i)
    coop_nb[i] = static_cast<std::uint32_t>(cooperating_neighbors(net, s, i));
  StrategyVector next = s;
  detail::adoption_pass(net, s, coop_nb, p, rng, [&](NodeId i) { next[i] = opposite(s[i]); });
  return next;
}

/**
 * Network plus strategies with cooperating-neighbor counts maintained
 * incrementally. Produces exactly the same stream consumption and results as
 * synchronous_generation on the same state, at cost proportional to the nodes
 * scanned plus the edges touched by flips.
 */
class GameState {
 public:
  GameState() = default;

  GameState(Network net, StrategyVector s) : net_(std::move(net)), s_(std::move(s)) {
    if (s_.size() != net_.size()) throw InvalidParameter("strategy vector length differs from network size");
    coop_nb_.resize(net_.size());
    for (NodeId i = 0; i < net_.size(); ++i) {
      coop_nb_[i] = static_cast<std::uint32_t>(cooperating_neighbors(net_, s_, i));
      if (s_[i] == Strategy::Cooperate) ++cooperators_;
    }
  }

  const Network& network() const noexcept { return net_; }
  const StrategyVector& strategies() const noexcept { return s_; }
  std::size_t size() const noexcept { return net_.size(); }
  std::size_t cooperators() const noexcept { return cooperators_; }
  std::uint32_t cooperating_neighbors_of(NodeId i) const { return coop_nb_.at(i); }

  double payoff_of(NodeId i, double r) const {
    return payoff_from_counts(s_.at(i), net_.degree(i), coop_nb_[i], r);
  }

  NodeId add_node(std::span<const NodeId> targets, Strategy s) {
    const NodeId id = net_.add_node(targets);
    std::uint32_t c = 0;
    for (NodeId t : targets) {
      if (s_[t] == Strategy::Cooperate) ++c;
      if (s == Strategy::Cooperate) ++coop_nb_[t];
    }
    s_.push_back(s);
    coop_nb_.push_back(c);
    if (s == Strategy::Cooperate) ++cooperators_;
    return id;
  }

  /// Returns the number of nodes that switched strategy.
  std::size_t generation(const GameParams& p, Rng& rng) {
    flips_.clear();
    detail::adoption_pass(net_, s_, coop_nb_, p, rng, [&](NodeId i) { flips_.push_back(i); });
    for (NodeId i : flips_) {
      const bool to_coop = s_[i] == Strategy::Defect;
      s_[i] = opposite(s_[i]);
      if (to_coop) {
        ++cooperators_;
        for (NodeId j : net_.neighbors(i)) ++coop_nb_[j];
      } else {
        --cooperators_;
        for (NodeId j : net_.neighbors(i)) --coop_nb_[j];
      }
    }
    return flips_.size();
  }

 private:
  Network net_;
  StrategyVector s_;
  std::vector<std::uint32_t> coop_nb_;
  std::size_t cooperators_ = 0;
  std::vector<NodeId> flips_;
};

}  // namespace coopgrow

#endif  // COOPGROW_GAME_HPP
