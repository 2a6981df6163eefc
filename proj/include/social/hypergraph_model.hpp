#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "social/ball.hpp"
#include "social/graph.hpp"
#include "social/motif.hpp"
#include "social/types.hpp"

namespace social {

/// Membership bitmap over a model's local ids. The contracted node r is never
/// part of a cluster.
using LocalMask = std::vector<char>;

/// Hypergraph over the ball S plus one node r standing for the contracted
/// complement. One net per motif occurrence; an occurrence leaving S becomes a
/// net over its pins in S plus r, and identical nets are merged with summed
/// weights. Local ids follow the ball's BFS order, and r has id |S|.
class HypergraphModel {
 public:
  HypergraphModel() = default;

  static HypergraphModel build(const NodeSet& ball, const MotifSet& motifs, bool merge_parallel = true) {
    HypergraphModel h;
    h.motif_size_ = motifs.motif_size();
    h.nodes_.assign(ball.begin(), ball.end());
    h.local_.reserve(h.nodes_.size());
    for (LocalId i = 0; i < h.nodes_.size(); ++i) h.local_.emplace(h.nodes_[i], i);
    const LocalId r = h.r();

    h.pin_offsets_.push_back(0);
    std::map<std::vector<LocalId>, std::size_t> seen;
    std::vector<LocalId> pins;
    for (std::size_t i = 0; i < motifs.size(); ++i) {
      pins.clear();
      bool outside = false;
      for (NodeId v : motifs.occurrence(i)) {
        auto it = h.local_.find(v);
        if (it == h.local_.end()) {
          outside = true;
        } else {
          pins.push_back(it->second);
        }
      }
      if (pins.empty()) throw std::invalid_argument("motif occurrence does not touch the ball");
      if (outside) pins.push_back(r);
      std::sort(pins.begin(), pins.end());

      if (merge_parallel && outside) {
        auto [it, inserted] = seen.try_emplace(pins, h.weights_.size());
        if (!inserted) {
          ++h.weights_[it->second];
          continue;
        }
      }
      h.pins_.insert(h.pins_.end(), pins.begin(), pins.end());
      h.pin_offsets_.push_back(h.pins_.size());
      h.weights_.push_back(1);
    }

    h.weighted_degree_.assign(h.nodes_.size(), 0);
    for (std::size_t e = 0; e < h.net_count(); ++e) {
      for (LocalId p : h.pins(e)) {
        if (p != r) h.weighted_degree_[p] += h.weights_[e];
      }
    }
    for (Weight d : h.weighted_degree_) h.total_volume_ += d;
    return h;
  }

  std::size_t motif_size() const noexcept { return motif_size_; }
  std::size_t local_count() const noexcept { return nodes_.size(); }
  LocalId r() const noexcept { return static_cast<LocalId>(nodes_.size()); }
  std::size_t net_count() const noexcept { return weights_.size(); }

  std::span<const LocalId> pins(std::size_t e) const {
    return {pins_.data() + pin_offsets_[e], static_cast<std::size_t>(pin_offsets_[e + 1] - pin_offsets_[e])};
  }
  Weight net_weight(std::size_t e) const { return weights_[e]; }
  bool touches_r(std::size_t e) const { return pins(e).back() == r(); }
  std::size_t max_net_size() const {
    std::size_t best = 0;
    for (std::size_t e = 0; e < net_count(); ++e) best = std::max(best, pins(e).size());
    return best;
  }

  NodeId graph_node(LocalId v) const { return nodes_[v]; }
  std::span<const NodeId> graph_nodes() const noexcept { return nodes_; }
  std::optional<LocalId> local_id(NodeId v) const {
    auto it = local_.find(v);
    if (it == local_.end()) return std::nullopt;
    return it->second;
  }

  Weight weighted_degree(LocalId v) const { return weighted_degree_[v]; }
  Weight total_weighted_volume() const noexcept { return total_volume_; }

  LocalMask mask_of(std::span<const LocalId> cluster) const {
    LocalMask mask(local_count(), 0);
    for (LocalId v : cluster) mask.at(v) = 1;
    return mask;
  }

  /// Translates graph ids to local ids; every member must lie in S.
  std::vector<LocalId> to_local(const NodeSet& c) const {
    std::vector<LocalId> out;
    out.reserve(c.size());
    for (NodeId v : c) {
      auto id = local_id(v);
      if (!id) throw std::out_of_range("cluster node is outside the ball");
      out.push_back(*id);
    }
    return out;
  }

  Weight cut_net(const LocalMask& in) const {
    Weight cut = 0;
    for (std::size_t e = 0; e < net_count(); ++e) {
      bool has_in = false;
      bool has_out = false;
      for (LocalId p : pins(e)) {
        if (p != r() && in[p]) {
          has_in = true;
        } else {
          has_out = true;
        }
      }
      if (has_in && has_out) cut += weights_[e];
    }
    return cut;
  }
  Weight cut_net(std::span<const LocalId> cluster) const { return cut_net(mask_of(cluster)); }
  Weight cut_net(const NodeSet& c) const { return cut_net(to_local(c)); }

  Weight weighted_volume(std::span<const LocalId> cluster) const {
    Weight vol = 0;
    for (LocalId v : cluster) vol += weighted_degree_[v];
    return vol;
  }
  Weight weighted_volume(const NodeSet& c) const { return weighted_volume(to_local(c)); }

  /// cut(C) / d_w(C) as an exact ratio.
  Ratio local_conductance(std::span<const LocalId> cluster) const {
    const Weight vol = weighted_volume(cluster);
    if (vol == 0) throw UndefinedConductance("cluster has zero weighted volume");
    return {cut_net(cluster), vol};
  }
  Ratio local_conductance(const NodeSet& c) const { return local_conductance(to_local(c)); }

 private:
  std::size_t motif_size_ = 3;
  std::vector<NodeId> nodes_;
  std::unordered_map<NodeId, LocalId> local_;
  std::vector<std::size_t> pin_offsets_;
  std::vector<LocalId> pins_;
  std::vector<Weight> weights_;
  std::vector<Weight> weighted_degree_;
  Weight total_volume_ = 0;
};

inline HypergraphModel build_model(const Ball& ball, const MotifSet& motifs) {
  return HypergraphModel::build(ball.nodes, motifs);
}

/// Debug dump, one net per line: "w: pin pin ...", pins as original graph ids
/// and the contracted node as "r".
inline void write_model(std::ostream& out, const HypergraphModel& h, const Graph& g) {
  for (std::size_t e = 0; e < h.net_count(); ++e) {
    out << h.net_weight(e) << ':';
    for (LocalId p : h.pins(e)) {
      if (p == h.r()) {
        out << " r";
      } else {
        out << ' ' << g.original_id(h.graph_node(p));
      }
    }
    out << '\n';
  }
}

}  // namespace social
