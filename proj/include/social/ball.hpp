#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "social/graph.hpp"

namespace social {

inline constexpr std::size_t kDefaultMinBallSize = 100;

struct Ball {
  NodeSet nodes;  // BFS order, seed first
  std::size_t depth_used = 0;
  bool whole_component = false;
};

/// Fixed-depth BFS around the seed. With enforce_min_size, whole extra layers
/// are added while the ball holds fewer than min_size nodes and the component
/// is not exhausted.
inline Ball bfs_ball(const Graph& g, NodeId seed, std::size_t layers, bool enforce_min_size,
                     std::size_t min_size = kDefaultMinBallSize) {
  if (seed >= g.node_count()) throw std::out_of_range("seed out of range");
  if (layers == 0) throw std::invalid_argument("layers must be at least 1");

  Ball ball;
  ball.nodes.insert(seed);
  std::vector<NodeId> frontier{seed};
  std::vector<NodeId> next;

  const auto expand = [&] {
    next.clear();
    for (NodeId v : frontier) {
      for (NodeId w : g.neighbors(v)) {
        if (ball.nodes.insert(w)) next.push_back(w);
      }
    }
    frontier.swap(next);
  };

  while (ball.depth_used < layers && !frontier.empty()) {
    expand();
    if (frontier.empty()) break;
    ++ball.depth_used;
  }
  if (enforce_min_size) {
    while (ball.nodes.size() < min_size && !frontier.empty()) {
      expand();
      if (frontier.empty()) break;
      ++ball.depth_used;
    }
  }

  // The component is exhausted iff the next layer would be empty.
  bool leaves = false;
  for (NodeId v : frontier) {
    for (NodeId w : g.neighbors(v)) {
      if (!ball.nodes.contains(w)) {
        leaves = true;
        break;
      }
    }
    if (leaves) break;
  }
  ball.whole_component = !leaves;
  return ball;
}

}  // namespace social
