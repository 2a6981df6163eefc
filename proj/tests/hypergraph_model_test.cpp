#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "social/ball.hpp"
#include "social/evaluator.hpp"
#include "social/hypergraph_model.hpp"
#include "support/oracles.hpp"

namespace social {
namespace {

// Nets as a multiset of (sorted pins as graph ids, -1 for r) -> weight.
std::map<std::vector<long>, Weight> nets_of(const HypergraphModel& h) {
  std::map<std::vector<long>, Weight> out;
  for (std::size_t e = 0; e < h.net_count(); ++e) {
    std::vector<long> pins;
    for (LocalId p : h.pins(e)) pins.push_back(p == h.r() ? -1L : static_cast<long>(h.graph_node(p)));
    std::sort(pins.begin(), pins.end());
    out[pins] += h.net_weight(e);
  }
  return out;
}

HypergraphModel model_for(const Graph& g, const NodeSet& s) {
  return HypergraphModel::build(s, enumerate_triangles_touching(g, s));
}

TEST(HypergraphModel, Bowtie) {
  // a=0 b=1 v=2
  const HypergraphModel h = model_for(testing::bowtie(), NodeSet{0, 1, 2});
  EXPECT_EQ(nets_of(h), (std::map<std::vector<long>, Weight>{{{0, 1, 2}, 1}, {{-1, 2}, 1}}));
  EXPECT_EQ(h.weighted_degree(*h.local_id(0)), 1u);
  EXPECT_EQ(h.weighted_degree(*h.local_id(1)), 1u);
  EXPECT_EQ(h.weighted_degree(*h.local_id(2)), 2u);
  EXPECT_EQ(h.total_weighted_volume(), 4u);

  EXPECT_EQ(h.cut_net(NodeSet{0, 1, 2}), 1u);
  EXPECT_EQ(h.cut_net(NodeSet{2}), 2u);
  EXPECT_EQ(h.weighted_volume(NodeSet{0, 1, 2}), 4u);
  EXPECT_EQ(h.weighted_volume(NodeSet{}), 0u);
  EXPECT_EQ(h.weighted_volume(NodeSet{2}), 2u);
  EXPECT_EQ(h.local_conductance(NodeSet{0, 1, 2}), (Ratio{1, 4}));
  EXPECT_EQ(h.local_conductance(NodeSet{0, 2}), (Ratio{2, 3}));
}

TEST(HypergraphModel, WholeTriangleHasNoContractedNet) {
  const HypergraphModel h = model_for(testing::triangle(), NodeSet{0, 1, 2});
  EXPECT_EQ(nets_of(h), (std::map<std::vector<long>, Weight>{{{0, 1, 2}, 1}}));
  EXPECT_EQ(h.cut_net(NodeSet{0, 1, 2}), 0u);
  EXPECT_EQ(h.local_conductance(NodeSet{0, 1, 2}), (Ratio{0, 1}));
}

TEST(HypergraphModel, TrianglesSharingAnEdge) {
  // a=0 b=1 c=2 d=3, triangles abc and bcd.
  const Graph g = testing::make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  const HypergraphModel h = model_for(g, NodeSet{0, 1, 2});
  EXPECT_EQ(nets_of(h), (std::map<std::vector<long>, Weight>{{{0, 1, 2}, 1}, {{-1, 1, 2}, 1}}));
}

TEST(HypergraphModel, MergesParallelContractedNets) {
  // Seed 0 adjacent to 1; both adjacent to outside nodes 2,3,4 -> three triangles
  // {0,1,x} that all contract to {0,1,r}.
  const Graph g = testing::make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}});
  const HypergraphModel h = model_for(g, NodeSet{0, 1});
  EXPECT_EQ(nets_of(h), (std::map<std::vector<long>, Weight>{{{-1, 0, 1}, 3}}));
  EXPECT_EQ(h.net_count(), 1u);
  EXPECT_EQ(h.weighted_degree(0), 3u);
}

TEST(HypergraphModel, ZeroVolumeConductanceIsUndefined) {
  const HypergraphModel h = model_for(testing::path(4), NodeSet{1, 2});
  EXPECT_EQ(h.net_count(), 0u);
  EXPECT_THROW(h.local_conductance(NodeSet{1}), UndefinedConductance);
}

TEST(HypergraphModel, RejectsClusterOutsideBall) {
  const HypergraphModel h = model_for(testing::bowtie(), NodeSet{0, 1, 2});
  EXPECT_THROW(h.cut_net(NodeSet{3}), std::out_of_range);
}

TEST(HypergraphModel, DumpFormat) {
  const Graph g = testing::graph_from_text("10 11\n11 12\n12 10\n12 13\n13 14\n14 12\n");
  const NodeSet s{*g.find_original(10), *g.find_original(11), *g.find_original(12)};
  std::ostringstream out;
  write_model(out, model_for(g, s), g);
  EXPECT_EQ(out.str(), "1: 10 11 12\n1: 12 r\n");
}

TEST(HypergraphModel, MergingDoesNotChangeCutOrVolume) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 40; ++round) {
    const Graph g = testing::random_graph(30, 0.25, rng);
    const Ball ball = bfs_ball(g, 0, 1, false);
    const MotifSet motifs = enumerate_triangles_touching(g, ball.nodes);
    const auto merged = HypergraphModel::build(ball.nodes, motifs, true);
    const auto plain = HypergraphModel::build(ball.nodes, motifs, false);
    EXPECT_LE(merged.net_count(), plain.net_count());
    std::bernoulli_distribution coin(0.5);
    for (int k = 0; k < 10; ++k) {
      std::vector<LocalId> c;
      for (LocalId v = 0; v < merged.local_count(); ++v) {
        if (coin(rng)) c.push_back(v);
      }
      EXPECT_EQ(merged.cut_net(c), plain.cut_net(c));
      EXPECT_EQ(merged.weighted_volume(c), plain.weighted_volume(c));
    }
  }
}

TEST(HypergraphModel, VolumeMatchesMotifDegrees) {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 30; ++round) {
    const Graph g = testing::random_graph(30, 0.25, rng);
    const Ball ball = bfs_ball(g, 1, 1, false);
    const MotifSet motifs = enumerate_triangles_touching(g, ball.nodes);
    const auto h = HypergraphModel::build(ball.nodes, motifs);
    for (LocalId v = 0; v < h.local_count(); ++v) {
      EXPECT_EQ(h.weighted_degree(v), motifs.motif_degree(h.graph_node(v)));
    }
    for (std::size_t e = 0; e < h.net_count(); ++e) {
      EXPECT_GE(h.pins(e).size(), 2u);
      EXPECT_LE(h.pins(e).size(), 3u);
    }
  }
}

TEST(HypergraphModel, WorkedEquivalenceInstance) {
  // T1={a,b,u} T2={b,c,x} T3={x,y,z} T4={x,y,w}
  enum : NodeId { a, b, u, c, x, y, z, w };
  const Graph g = testing::make_graph(
      8, {{a, b}, {a, u}, {b, u}, {b, c}, {b, x}, {c, x}, {x, y}, {x, z}, {y, z}, {x, w}, {y, w}});
  const NodeSet s{a, b, u, c};
  const HypergraphModel h = model_for(g, s);
  EXPECT_TRUE(check_assumption_b(g, s, count_triangles_global(g)));
  const NodeSet cluster{a, b, u};
  EXPECT_EQ(h.local_conductance(cluster), (Ratio{1, 4}));
  EXPECT_EQ(evaluate_exact(g, cluster, count_triangles_global(g)).conductance, (Ratio{1, 4}));
}

TEST(HypergraphModel, EquivalenceFailsWhenBallDominatesMotifVolume) {
  const Graph g = testing::bowtie();
  const NodeSet s{0, 1, 2};
  EXPECT_FALSE(check_assumption_b(g, s, count_triangles_global(g)));
  EXPECT_EQ(model_for(g, s).local_conductance(s), (Ratio{1, 4}));
  EXPECT_EQ(evaluate_exact(g, s, count_triangles_global(g)).conductance, (Ratio{1, 2}));
}

}  // namespace
}  // namespace social
