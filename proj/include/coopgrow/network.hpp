#ifndef COOPGROW_NETWORK_HPP
#define COOPGROW_NETWORK_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coopgrow/errors.hpp"
#include "coopgrow/random.hpp"

namespace coopgrow {

using NodeId = std::uint32_t;

enum class GrowthMechanism { PreferentialAttachment, RandomAttachment };

/// Short name used in configs and file headers: "ba" or "random".
inline std::string_view mechanism_name(GrowthMechanism m) {
  return m == GrowthMechanism::PreferentialAttachment ? "ba" : "random";
}

inline GrowthMechanism parse_mechanism(std::string_view name) {
  if (name == "ba" || name == "preferential") return GrowthMechanism::PreferentialAttachment;
  if (name == "random") return GrowthMechanism::RandomAttachment;
  throw InvalidParameter("unknown growth mechanism '" + std::string(name) + "' (expected ba|random)");
}

/**
 * Undirected simple graph with an append-only node set.
 *
 * Nodes are 0..N-1 in insertion order. Edges are kept both as per-node
 * neighbor lists and as an insertion-ordered edge list; the flattened edge
 * list doubles as the endpoint table for degree-proportional sampling.
 */
class Network {
 public:
  using Edge = std::pair<NodeId, NodeId>;

  Network() = default;

  /// Complete graph on n0 nodes. n0 == 1 gives a single isolated node.
  static Network clique(std::size_t n0) {
    if (n0 == 0) throw InvalidParameter("seed network needs N0 >= 1");
    Network net;
    net.adj_.resize(n0);
    net.edges_.reserve(n0 * (n0 - 1) / 2);
    for (NodeId j = 1; j < n0; ++j)
      for (NodeId i = 0; i < j; ++i) net.link(i, j);
    return net;
  }

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t degree_sum() const noexcept { return 2 * edges_.size(); }

  std::size_t degree(NodeId i) const { return adj_.at(i).size(); }
  std::span<const NodeId> neighbors(NodeId i) const { return adj_.at(i); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Endpoint `slot` of the flattened edge list, slot in [0, degree_sum()).
  /// A uniform slot is a degree-proportional node.
  NodeId endpoint(std::size_t slot) const {
    const Edge& e = edges_[slot >> 1];
    return (slot & 1) ? e.second : e.first;
  }

  bool has_edge(NodeId a, NodeId b) const {
    const auto& la = adj_.at(a);
    const auto& lb = adj_.at(b);
    const auto& shorter = la.size() <= lb.size() ? la : lb;
    const NodeId other = la.size() <= lb.size() ? b : a;
    return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
  }

  /// Appends a node linked to every node in `targets`, which must be distinct
  /// existing nodes.
  NodeId add_node(std::span<const NodeId> targets) {
    const auto id = static_cast<NodeId>(adj_.size());
    for (std::size_t a = 0; a < targets.size(); ++a) {
      if (targets[a] >= id) throw InvalidParameter("link target does not exist");
      for (std::size_t b = a + 1; b < targets.size(); ++b)
        if (targets[a] == targets[b]) throw InvalidParameter("duplicate link target");
    }
    adj_.emplace_back();
    adj_.back().reserve(targets.size());
    for (NodeId t : targets) link(t, id);
    return id;
  }

  void reserve(std::size_t nodes, std::size_t edges) {
    adj_.reserve(nodes);
    edges_.reserve(edges);
  }

 private:
  void link(NodeId lo, NodeId hi) {
    adj_[lo].push_back(hi);
    adj_[hi].push_back(lo);
    edges_.emplace_back(lo, hi);
  }

  std::vector<std::vector<NodeId>> adj_;
  std::vector<Edge> edges_;
};

namespace detail {

inline void check_link_count(const Network& net, std::size_t links) {
  if (links == 0) throw InvalidParameter("L must be >= 1");
  if (links > net.size())
    throw InvalidParameter("L=" + std::to_string(links) + " exceeds current node count " +
                           std::to_string(net.size()));
}

inline bool contains(const std::vector<NodeId>& v, NodeId x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace detail

/// Picks `links` distinct existing nodes, each draw proportional to degree over
/// the not-yet-chosen nodes. If every remaining candidate has degree zero the
/// draw falls back to uniform over them (only reachable from an N0 = 1 seed).
inline std::vector<NodeId> preferential_targets(const Network& net, std::size_t links, Rng& rng) {
  detail::check_link_count(net, links);
  std::vector<NodeId> chosen;
  chosen.reserve(links);
  std::size_t remaining_weight = net.degree_sum();
  while (chosen.size() < links) {
    NodeId pick;
    if (remaining_weight == 0) {
      do {
        pick = static_cast<NodeId>(uniform_index(rng, net.size()));
      } while (detail::contains(chosen, pick));
    } else {
      // Rejection on the endpoint table: conditioned on acceptance this is
      // exactly degree-proportional over the unchosen nodes.
      do {
        pick = net.endpoint(uniform_index(rng, net.degree_sum()));
      } while (detail::contains(chosen, pick));
      remaining_weight -= net.degree(pick);
    }
    chosen.push_back(pick);
  }
  return chosen;
}

/// Picks `links` distinct existing nodes uniformly without replacement.
inline std::vector<NodeId> random_targets(const Network& net, std::size_t links, Rng& rng) {
  detail::check_link_count(net, links);
  std::vector<NodeId> chosen;
  chosen.reserve(links);
  while (chosen.size() < links) {
    const auto pick = static_cast<NodeId>(uniform_index(rng, net.size()));
    if (!detail::contains(chosen, pick)) chosen.push_back(pick);
  }
  return chosen;
}

inline std::vector<NodeId> attachment_targets(const Network& net, GrowthMechanism m, std::size_t links,
                                              Rng& rng) {
  return m == GrowthMechanism::PreferentialAttachment ? preferential_targets(net, links, rng)
                                                      : random_targets(net, links, rng);
}

inline NodeId add_node_preferential(Network& net, std::size_t links, Rng& rng) {
  const auto targets = preferential_targets(net, links, rng);
  return net.add_node(targets);
}

inline NodeId add_node_random(Network& net, std::size_t links, Rng& rng) {
  const auto targets = random_targets(net, links, rng);
  return net.add_node(targets);
}

inline NodeId add_node(Network& net, GrowthMechanism m, std::size_t links, Rng& rng) {
  const auto targets = attachment_targets(net, m, links, rng);
  return net.add_node(targets);
}

/// Seed clique of `links` nodes grown to `nodes` nodes.
inline Network grow_network(GrowthMechanism m, std::size_t nodes, std::size_t links, Rng& rng) {
  if (nodes < links) throw InvalidParameter("network size below seed clique size L");
  Network net = Network::clique(links);
  net.reserve(nodes, links * (links - 1) / 2 + links * (nodes - links));
  while (net.size() < nodes) add_node(net, m, links, rng);
  return net;
}

/// Plain-text edge list: one header line, then "i j" (i < j) per edge in insertion order.
inline void write_edge_list(std::ostream& out, const Network& net, GrowthMechanism m, std::size_t links,
                            std::uint64_t seed) {
  out << "# nodes=" << net.size() << " edges=" << net.edge_count() << " mechanism=" << mechanism_name(m)
      << " L=" << links << " seed=" << seed << '\n';
  for (const auto& [a, b] : net.edges()) out << a << ' ' << b << '\n';
}

}  // namespace coopgrow

#endif  // COOPGROW_NETWORK_HPP
