#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "social/flow_network.hpp"
#include "social/graph.hpp"
#include "social/types.hpp"

namespace social {

/// Terminated push-relabel run: a maximum flow with conservation at every
/// node other than source and sink.
struct FlowState {
  std::vector<Capacity> flow;    // per arc of the network, 0 <= flow <= capacity
  std::vector<Capacity> excess;  // per node; zero except at the sink (and the source's deficit)
  std::vector<std::uint32_t> label;
};

struct MaxFlowResult {
  Capacity value = 0;
  FlowState state;
};

namespace detail {

// FIFO push-relabel with gap relabeling and periodic global relabeling.
// Phase one computes a maximum preflow; phase two returns stranded excess to
// the source so the result is a proper flow.
class PushRelabel {
 public:
  explicit PushRelabel(const FlowNetwork& net)
      : n_(net.node_count), s_(net.source), t_(net.sink), arc_count_(net.arcs.size()) {
    head_.resize(2 * arc_count_);
    residual_.resize(2 * arc_count_);
    first_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& a : net.arcs) {
      ++first_[a.tail + 1];
      ++first_[a.head + 1];
    }
    for (std::size_t i = 1; i < first_.size(); ++i) first_[i] += first_[i - 1];
    adjacency_.resize(first_.back());
    std::vector<std::size_t> fill(first_.begin(), first_.end() - 1);
    for (std::size_t i = 0; i < arc_count_; ++i) {
      const auto& a = net.arcs[i];
      head_[2 * i] = a.head;
      residual_[2 * i] = a.capacity;
      head_[2 * i + 1] = a.tail;
      residual_[2 * i + 1] = 0;
      adjacency_[fill[a.tail]++] = 2 * i;
      adjacency_[fill[a.head]++] = 2 * i + 1;
    }
    excess_.assign(n_, 0);
    label_.assign(n_, 0);
    current_.assign(n_, 0);
    queued_.assign(n_, 0);
  }

  MaxFlowResult run() {
    if (s_ == t_) throw std::invalid_argument("source equals sink");
    saturate_source();
    global_relabel();
    for (FlowNode v = 0; v < n_; ++v) enqueue(v);
    while (!queue_.empty()) {
      const FlowNode v = queue_.front();
      queue_.pop_front();
      queued_[v] = 0;
      discharge(v);
      if (relabels_since_global_ >= n_) global_relabel();
    }
    const Capacity value = excess_[t_];
    return_excess_to_source();

    MaxFlowResult result;
    result.value = value;
    result.state.flow.resize(arc_count_);
    for (std::size_t i = 0; i < arc_count_; ++i) result.state.flow[i] = residual_[2 * i + 1];
    result.state.excess = excess_;
    result.state.label = label_;
    return result;
  }

 private:
  std::span<const std::size_t> edges_of(FlowNode v) const {
    return {adjacency_.data() + first_[v], first_[v + 1] - first_[v]};
  }

  void saturate_source() {
    label_[s_] = n_;
    for (std::size_t e : edges_of(s_)) {
      if (residual_[e] > 0) {
        const Capacity delta = residual_[e];
        excess_[s_] -= delta;
        excess_[head_[e]] = checked_add(excess_[head_[e]], delta);
        residual_[e] = 0;
        residual_[e ^ 1] += delta;
      }
    }
  }

  bool is_active(FlowNode v) const { return v != s_ && v != t_ && excess_[v] > 0 && label_[v] < n_; }

  void enqueue(FlowNode v) {
    if (!queued_[v] && is_active(v)) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
  }

  void push(FlowNode v, std::size_t e) {
    const Capacity delta = std::min(excess_[v], residual_[e]);
    const FlowNode w = head_[e];
    residual_[e] -= delta;
    residual_[e ^ 1] += delta;
    excess_[v] -= delta;
    excess_[w] += delta;
    enqueue(w);
  }

  void discharge(FlowNode v) {
    while (excess_[v] > 0 && label_[v] < n_) {
      const auto edges = edges_of(v);
      if (current_[v] == edges.size()) {
        relabel(v);
        continue;
      }
      const std::size_t e = edges[current_[v]];
      if (residual_[e] > 0 && label_[v] == label_[head_[e]] + 1) {
        push(v, e);
      } else {
        ++current_[v];
      }
    }
  }

  void relabel(FlowNode v) {
    ++relabels_since_global_;
    const std::uint32_t old = label_[v];
    std::uint32_t next = n_;
    for (std::size_t e : edges_of(v)) {
      if (residual_[e] > 0) next = std::min(next, label_[head_[e]] + 1);
    }
    --count_[old];
    if (count_[old] == 0 && old < n_) {
      // Gap: nothing above `old` can reach the sink any more.
      for (FlowNode x = 0; x < n_; ++x) {
        if (x != s_ && label_[x] > old && label_[x] < n_) {
          --count_[label_[x]];
          label_[x] = n_;
          ++count_[n_];
        }
      }
      next = n_;
    }
    label_[v] = std::min(next, n_);
    ++count_[label_[v]];
    current_[v] = 0;
  }

  // Exact distances to the sink in the residual graph; unreachable nodes get n.
  void global_relabel() {
    relabels_since_global_ = 0;
    std::fill(label_.begin(), label_.end(), n_);
    label_[t_] = 0;
    std::vector<FlowNode> bfs{t_};
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      const FlowNode y = bfs[i];
      for (std::size_t e : edges_of(y)) {
        const FlowNode x = head_[e];
        if (x != s_ && label_[x] == n_ && residual_[e ^ 1] > 0) {
          label_[x] = label_[y] + 1;
          bfs.push_back(x);
        }
      }
    }
    label_[s_] = n_;
    count_.assign(2 * static_cast<std::size_t>(n_) + 1, 0);
    for (FlowNode v = 0; v < n_; ++v) {
      ++count_[label_[v]];
      current_[v] = 0;
    }
  }

  void return_excess_to_source() {
    // Distances to the source; every node holding excess can reach it.
    std::vector<std::uint32_t> dist(n_, std::numeric_limits<std::uint32_t>::max());
    dist[s_] = 0;
    std::vector<FlowNode> bfs{s_};
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      const FlowNode y = bfs[i];
      for (std::size_t e : edges_of(y)) {
        const FlowNode x = head_[e];
        if (x != t_ && dist[x] == std::numeric_limits<std::uint32_t>::max() && residual_[e ^ 1] > 0) {
          dist[x] = dist[y] + 1;
          bfs.push_back(x);
        }
      }
    }
    std::deque<FlowNode> queue;
    std::fill(current_.begin(), current_.end(), 0);
    for (FlowNode v = 0; v < n_; ++v) {
      if (v != s_ && v != t_ && excess_[v] > 0) queue.push_back(v);
    }
    while (!queue.empty()) {
      const FlowNode v = queue.front();
      queue.pop_front();
      while (excess_[v] > 0) {
        const auto edges = edges_of(v);
        if (current_[v] == edges.size()) {
          std::uint32_t next = std::numeric_limits<std::uint32_t>::max();
          for (std::size_t e : edges) {
            const FlowNode w = head_[e];
            if (residual_[e] > 0 && w != t_ && dist[w] != std::numeric_limits<std::uint32_t>::max()) {
              next = std::min(next, dist[w] + 1);
            }
          }
          dist[v] = next;
          current_[v] = 0;
          continue;
        }
        const std::size_t e = edges[current_[v]];
        const FlowNode w = head_[e];
        if (w != t_ && residual_[e] > 0 && dist[w] != std::numeric_limits<std::uint32_t>::max() &&
            dist[v] == dist[w] + 1) {
          const bool was_idle = excess_[w] == 0;
          const Capacity delta = std::min(excess_[v], residual_[e]);
          residual_[e] -= delta;
          residual_[e ^ 1] += delta;
          excess_[v] -= delta;
          excess_[w] += delta;
          if (was_idle && w != s_) queue.push_back(w);
        } else {
          ++current_[v];
        }
      }
    }
  }

  FlowNode n_;
  FlowNode s_;
  FlowNode t_;
  std::size_t arc_count_;
  std::vector<FlowNode> head_;
  std::vector<Capacity> residual_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> adjacency_;
  std::vector<Capacity> excess_;
  std::vector<std::uint32_t> label_;
  std::vector<std::size_t> current_;
  std::vector<char> queued_;
  std::vector<std::size_t> count_;
  std::deque<FlowNode> queue_;
  std::size_t relabels_since_global_ = 0;
};

}  // namespace detail

/// Maximum s-t flow by push-relabel. The value equals the minimum cut weight.
inline MaxFlowResult max_flow(const FlowNetwork& net) { return detail::PushRelabel(net).run(); }

/// Sink side of a minimum cut: every node that can still reach the sink in
/// the residual graph of a maximum flow. This is the inclusion-minimal sink
/// side over all minimum cuts.
inline NodeSet min_cut_sink_side(const FlowNetwork& net, const FlowState& state) {
  std::vector<std::vector<std::size_t>> incident(net.node_count);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    incident[net.arcs[i].head].push_back(i);
    incident[net.arcs[i].tail].push_back(i);
  }
  std::vector<char> seen(net.node_count, 0);
  std::vector<FlowNode> order{net.sink};
  seen[net.sink] = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const FlowNode y = order[k];
    for (std::size_t i : incident[y]) {
      const auto& a = net.arcs[i];
      // x -> y is residual if arc x->y has spare capacity or arc y->x carries flow.
      FlowNode x = 0;
      if (a.head == y && state.flow[i] < a.capacity) {
        x = a.tail;
      } else if (a.tail == y && state.flow[i] > 0) {
        x = a.head;
      } else {
        continue;
      }
      if (!seen[x]) {
        seen[x] = 1;
        order.push_back(x);
      }
    }
  }
  return NodeSet(order);
}

}  // namespace social
