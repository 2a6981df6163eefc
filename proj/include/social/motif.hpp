#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "social/graph.hpp"
#include "social/types.hpp"

namespace social {

/// Motif occurrences stored as sorted endpoint tuples of a fixed motif size,
/// plus the motif degree of every node that occurs in at least one of them.
class MotifSet {
 public:
  explicit MotifSet(std::size_t motif_size = 3) : motif_size_(motif_size) {}

  std::size_t motif_size() const noexcept { return motif_size_; }
  std::size_t size() const noexcept { return motif_size_ == 0 ? 0 : endpoints_.size() / motif_size_; }
  bool empty() const noexcept { return endpoints_.empty(); }

  std::span<const NodeId> occurrence(std::size_t i) const {
    return {endpoints_.data() + i * motif_size_, motif_size_};
  }

  /// Adds an occurrence; endpoints are sorted before storage. Callers are
  /// responsible for not adding the same occurrence twice.
  void add(std::span<const NodeId> endpoints) {
    const auto first = endpoints_.size();
    endpoints_.insert(endpoints_.end(), endpoints.begin(), endpoints.end());
    std::sort(endpoints_.begin() + static_cast<std::ptrdiff_t>(first), endpoints_.end());
    for (NodeId v : endpoints) ++motif_degree_[v];
  }

  Weight motif_degree(NodeId v) const {
    auto it = motif_degree_.find(v);
    return it == motif_degree_.end() ? 0 : it->second;
  }

  Weight motif_volume(const NodeSet& c) const {
    Weight total = 0;
    for (NodeId v : c) total += motif_degree(v);
    return total;
  }

  const std::unordered_map<NodeId, Weight>& motif_degrees() const noexcept { return motif_degree_; }

  /// Sorts occurrences lexicographically; useful for set comparisons.
  void canonicalize() {
    const std::size_t k = motif_size_;
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(endpoints_.begin() + a * k, endpoints_.begin() + (a + 1) * k,
                                          endpoints_.begin() + b * k, endpoints_.begin() + (b + 1) * k);
    });
    std::vector<NodeId> sorted;
    sorted.reserve(endpoints_.size());
    for (auto i : order) {
      sorted.insert(sorted.end(), endpoints_.begin() + i * k, endpoints_.begin() + (i + 1) * k);
    }
    endpoints_ = std::move(sorted);
  }

 private:
  std::size_t motif_size_;
  std::vector<NodeId> endpoints_;
  std::unordered_map<NodeId, Weight> motif_degree_;
};

namespace detail {

/// Degree-ordered orientation: every edge points from the endpoint with the
/// larger degree (ties: smaller id) to the other one. Each triangle is then
/// reported exactly once, from its highest-ranked corner.
struct OrientedAdjacency {
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint32_t> targets;

  template <typename DegreeFn, typename NeighborsFn>
  OrientedAdjacency(std::uint32_t n, DegreeFn degree, NeighborsFn neighbors) {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto da = degree(a);
      const auto db = degree(b);
      return da != db ? da > db : a < b;
    });
    std::vector<std::uint32_t> rank(n);
    for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;

    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t w : neighbors(v)) {
        if (rank[w] > rank[v]) ++offsets[v + 1];
      }
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    targets.resize(offsets.back());
    for (std::uint32_t v = 0; v < n; ++v) {
      auto pos = offsets[v];
      for (std::uint32_t w : neighbors(v)) {
        if (rank[w] > rank[v]) targets[pos++] = w;
      }
    }
  }

  std::span<const std::uint32_t> out(std::uint32_t v) const {
    return {targets.data() + offsets[v], static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
  }

  /// Calls fn(a, b, c) once per triangle using neighbor marking.
  template <typename Fn>
  void for_each_triangle(Fn&& fn) const {
    const auto n = static_cast<std::uint32_t>(offsets.size() - 1);
    std::vector<char> marked(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      const auto vout = out(v);
      for (std::uint32_t w : vout) marked[w] = 1;
      for (std::uint32_t w : vout) {
        for (std::uint32_t x : out(w)) {
          if (marked[x]) fn(v, w, x);
        }
      }
      for (std::uint32_t w : vout) marked[w] = 0;
    }
  }
};

}  // namespace detail

/// All triangles of g with at least one endpoint in s. Enumeration runs on the
/// subgraph induced by N[s], which contains every such triangle.
inline MotifSet enumerate_triangles_touching(const Graph& g, const NodeSet& s) {
  MotifSet result(3);
  if (s.empty()) return result;

  const NodeSet region = closed_neighborhood(g, s);
  const auto local_n = static_cast<std::uint32_t>(region.size());
  std::unordered_map<NodeId, std::uint32_t> local;
  local.reserve(region.size());
  for (std::uint32_t i = 0; i < local_n; ++i) local.emplace(region.members()[i], i);

  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(local_n) + 1, 0);
  std::vector<std::uint32_t> targets;
  for (std::uint32_t i = 0; i < local_n; ++i) {
    for (NodeId w : g.neighbors(region.members()[i])) {
      auto it = local.find(w);
      if (it != local.end()) targets.push_back(it->second);
    }
    offsets[i + 1] = targets.size();
  }

  const detail::OrientedAdjacency oriented(
      local_n, [&](std::uint32_t v) { return offsets[v + 1] - offsets[v]; },
      [&](std::uint32_t v) {
        return std::span<const std::uint32_t>(targets.data() + offsets[v],
                                              static_cast<std::size_t>(offsets[v + 1] - offsets[v]));
      });

  const auto ids = region.members();
  oriented.for_each_triangle([&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    const std::array<NodeId, 3> tri{ids[a], ids[b], ids[c]};
    if (s.contains(tri[0]) || s.contains(tri[1]) || s.contains(tri[2])) result.add(tri);
  });
  return result;
}

/// Exact number of triangles in g.
inline std::uint64_t count_triangles_global(const Graph& g) {
  const detail::OrientedAdjacency oriented(
      g.node_count(), [&](std::uint32_t v) { return g.degree(v); },
      [&](std::uint32_t v) { return g.neighbors(v); });
  std::uint64_t count = 0;
  oriented.for_each_triangle([&](std::uint32_t, std::uint32_t, std::uint32_t) { ++count; });
  return count;
}

}  // namespace social
