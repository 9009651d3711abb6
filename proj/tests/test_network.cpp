#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "coopgrow/network.hpp"

using namespace coopgrow;

namespace {

// Full scan of the simple-graph invariants.
void expect_simple_and_symmetric(const Network& net) {
  std::size_t sum = 0;
  for (NodeId i = 0; i < net.size(); ++i) {
    const auto nb = net.neighbors(i);
    sum += nb.size();
    std::set<NodeId> seen;
    for (NodeId j : nb) {
      ASSERT_NE(i, j) << "self-loop at " << i;
      ASSERT_TRUE(seen.insert(j).second) << "duplicate edge " << i << "-" << j;
      const auto back = net.neighbors(j);
      ASSERT_NE(std::find(back.begin(), back.end(), i), back.end()) << "asymmetric " << i << "-" << j;
    }
  }
  EXPECT_EQ(sum, net.degree_sum());
  EXPECT_EQ(net.degree_sum(), 2 * net.edge_count());
  for (const auto& [a, b] : net.edges()) EXPECT_LT(a, b);
}

Network star(std::size_t leaves) {
  Network net = Network::clique(1);
  std::vector<NodeId> hub{0};
  for (std::size_t i = 0; i < leaves; ++i) net.add_node(hub);
  return net;
}

}  // namespace

TEST(Network, SeedClique) {
  EXPECT_EQ(Network::clique(1).size(), 1u);
  EXPECT_EQ(Network::clique(1).edge_count(), 0u);
  EXPECT_EQ(Network::clique(2).edge_count(), 1u);
  const Network k4 = Network::clique(4);
  EXPECT_EQ(k4.size(), 4u);
  EXPECT_EQ(k4.edge_count(), 6u);
  EXPECT_EQ(k4.degree(0), 3u);
  expect_simple_and_symmetric(k4);
  EXPECT_THROW(Network::clique(0), InvalidParameter);
}

TEST(Network, AddNodeRejectsBadTargets) {
  Network net = Network::clique(3);
  const std::vector<NodeId> dup{0, 0};
  const std::vector<NodeId> missing{5};
  EXPECT_THROW(net.add_node(dup), InvalidParameter);
  EXPECT_THROW(net.add_node(missing), InvalidParameter);
  EXPECT_EQ(net.size(), 3u);
}

TEST(Network, LinkCountErrors) {
  Rng rng(1);
  Network net = Network::clique(3);
  EXPECT_THROW(add_node_preferential(net, 4, rng), InvalidParameter);
  EXPECT_THROW(add_node_random(net, 4, rng), InvalidParameter);
  EXPECT_THROW(add_node_random(net, 0, rng), InvalidParameter);
}

TEST(Network, LinksEqualToSizeConnectsToAll) {
  for (auto m : {GrowthMechanism::PreferentialAttachment, GrowthMechanism::RandomAttachment}) {
    Rng rng(3);
    Network net = Network::clique(4);
    const NodeId id = add_node(net, m, 4, rng);
    EXPECT_EQ(net.degree(id), 4u);
    for (NodeId j = 0; j < 4; ++j) EXPECT_TRUE(net.has_edge(id, j));
  }
}

TEST(Network, SingleNodeSeedGrows) {
  Rng rng(5);
  Network net = grow_network(GrowthMechanism::PreferentialAttachment, 50, 1, rng);
  EXPECT_EQ(net.edge_count(), 49u);
  expect_simple_and_symmetric(net);
}

TEST(Network, RandomAttachmentOnLargerNet) {
  Rng rng(11);
  Network net = grow_network(GrowthMechanism::RandomAttachment, 100, 4, rng);
  const auto before = net.edge_count();
  const NodeId id = add_node_random(net, 4, rng);
  EXPECT_EQ(net.degree(id), 4u);
  EXPECT_EQ(net.edge_count(), before + 4);
}

TEST(Network, GrowthEdgeCountInvariant) {
  for (auto m : {GrowthMechanism::PreferentialAttachment, GrowthMechanism::RandomAttachment}) {
    for (std::size_t L : {1u, 2u, 4u, 7u}) {
      Rng rng(100 + L);
      const std::size_t N = 400;
      const Network net = grow_network(m, N, L, rng);
      EXPECT_EQ(net.size(), N);
      EXPECT_EQ(net.edge_count(), L * (L - 1) / 2 + L * (N - L));
      expect_simple_and_symmetric(net);
    }
  }
}

TEST(Network, MeanDegreeApproachesTwiceL) {
  for (auto m : {GrowthMechanism::PreferentialAttachment, GrowthMechanism::RandomAttachment}) {
    for (std::size_t L : {2u, 4u, 8u}) {
      Rng rng(7 * L);
      const Network net = grow_network(m, 100 * L, L, rng);
      const double mean = static_cast<double>(net.degree_sum()) / static_cast<double>(net.size());
      EXPECT_LT(std::abs(mean - 2.0 * L), 0.1 * L);
    }
  }
}

TEST(Network, PreferentialSingleDrawOnStar) {
  // Star with hub degree 3 and three leaves: P(hub) = 3/6.
  const Network net = star(3);
  Rng rng(42);
  const int trials = 200000;
  int hub = 0;
  for (int t = 0; t < trials; ++t) hub += preferential_targets(net, 1, rng)[0] == 0;
  const double p = 0.5;
  const double se = std::sqrt(p * (1 - p) / trials);
  EXPECT_NEAR(static_cast<double>(hub) / trials, p, 3 * se);
}

TEST(Network, RandomSingleDrawOnStar) {
  const Network net = star(3);
  Rng rng(43);
  const int trials = 200000;
  int hub = 0;
  for (int t = 0; t < trials; ++t) hub += random_targets(net, 1, rng)[0] == 0;
  const double p = 0.25;
  EXPECT_NEAR(static_cast<double>(hub) / trials, p, 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(Network, PreferentialUniformOnClique) {
  const Network net = Network::clique(5);
  Rng rng(44);
  const int trials = 100000;
  std::vector<int> hits(5, 0);
  for (int t = 0; t < trials; ++t) ++hits[preferential_targets(net, 1, rng)[0]];
  const double p = 0.2;
  // Five cells checked at once, so 4 sigma.
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / trials, p, 4 * std::sqrt(p * (1 - p) / trials));
}

// Fixed 5-node graph with degrees (4,2,2,1,1), checked against brute-force
// probabilities: single draw w_i / W, and the without-replacement pair
// inclusion probability sum over ordered pairs w_a/W * w_b/(W - w_a).
TEST(Network, PreferentialMatchesBruteForceOnFiveNodeGraph) {
  Network net = Network::clique(2);                 // 0-1
  const std::vector<NodeId> t2{0, 1};
  net.add_node(t2);                                 // 2: 0,1
  const std::vector<NodeId> t3{0};
  net.add_node(t3);                                 // 3: 0
  const std::vector<NodeId> t4{0};
  net.add_node(t4);                                 // 4: 0
  std::vector<double> w;
  for (NodeId i = 0; i < 5; ++i) w.push_back(static_cast<double>(net.degree(i)));
  double W = 0;
  for (double x : w) W += x;

  std::vector<double> single(5), pair(5, 0.0);
  for (int a = 0; a < 5; ++a) {
    single[a] = w[a] / W;
    for (int b = 0; b < 5; ++b) {
      if (a == b) continue;
      const double p_ab = w[a] / W * w[b] / (W - w[a]);
      pair[a] += p_ab;
      pair[b] += p_ab;
    }
  }

  Rng rng(2024);
  const int trials = 100000;
  std::vector<int> hit1(5, 0), hit2(5, 0);
  for (int t = 0; t < trials; ++t) {
    ++hit1[preferential_targets(net, 1, rng)[0]];
    const auto two = preferential_targets(net, 2, rng);
    ASSERT_NE(two[0], two[1]);
    ++hit2[two[0]];
    ++hit2[two[1]];
  }
  for (int i = 0; i < 5; ++i) {
    const double se1 = std::sqrt(single[i] * (1 - single[i]) / trials);
    EXPECT_NEAR(static_cast<double>(hit1[i]) / trials, single[i], 3 * se1) << "node " << i;
    const double se2 = std::sqrt(pair[i] * (1 - pair[i]) / trials);
    EXPECT_NEAR(static_cast<double>(hit2[i]) / trials, pair[i], 3 * se2) << "node " << i;
  }
}

TEST(Network, NewNodeDoesNotTargetItself) {
  Rng rng(9);
  Network net = Network::clique(2);
  for (int i = 0; i < 200; ++i) {
    const NodeId id = add_node_preferential(net, 2, rng);
    for (NodeId j : net.neighbors(id)) EXPECT_LT(j, id);
  }
  expect_simple_and_symmetric(net);
}

TEST(Network, EdgeListFormat) {
  Rng rng(1);
  const Network net = grow_network(GrowthMechanism::PreferentialAttachment, 6, 2, rng);
  std::ostringstream out;
  write_edge_list(out, net, GrowthMechanism::PreferentialAttachment, 2, 77);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# nodes=6 edges=9 mechanism=ba L=2 seed=77");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line); ++lines) {
    std::istringstream ls(line);
    NodeId a, b;
    ls >> a >> b;
    EXPECT_EQ(net.edges()[lines], std::make_pair(a, b));
  }
  EXPECT_EQ(lines, 9u);
}

TEST(Network, MechanismNames) {
  EXPECT_EQ(parse_mechanism("ba"), GrowthMechanism::PreferentialAttachment);
  EXPECT_EQ(parse_mechanism("random"), GrowthMechanism::RandomAttachment);
  EXPECT_EQ(mechanism_name(GrowthMechanism::RandomAttachment), "random");
  EXPECT_THROW(parse_mechanism("er"), InvalidParameter);
}
