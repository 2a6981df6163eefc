#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ranges>
#include <iterator>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "social/types.hpp"

namespace social {

/// Set of graph nodes with O(1) membership. Iteration follows insertion order.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids) {
    for (NodeId v : ids) insert(v);
  }
  template <std::ranges::input_range R>
  explicit NodeSet(const R& ids) {
    for (NodeId v : ids) insert(v);
  }

  bool insert(NodeId v) {
    if (!index_.insert(v).second) return false;
    members_.push_back(v);
    return true;
  }

  bool contains(NodeId v) const { return index_.contains(v); }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  std::span<const NodeId> members() const noexcept { return members_; }

  std::vector<NodeId> sorted() const {
    std::vector<NodeId> out = members_;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.begin(), a.end(), [&](NodeId v) { return b.contains(v); });
  }

 private:
  std::vector<NodeId> members_;
  std::unordered_set<NodeId> index_;
};

/// Immutable undirected simple graph in CSR form. Neighbor lists are sorted.
/// Node and edge weights are implicitly 1.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list over dense ids 0..node_count-1. Self-loops and
  /// duplicate edges (in either orientation) are dropped.
  static Graph from_edges(NodeId node_count, std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::uint64_t> original_ids = {}) {
    Graph g;
    g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (auto [u, v] : edges) {
      if (u >= node_count || v >= node_count) throw std::out_of_range("edge endpoint out of range");
      if (u == v) continue;
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.targets_.resize(g.offsets_.back());
    std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
      if (u == v) continue;
      g.targets_[fill[u]++] = v;
      g.targets_[fill[v]++] = u;
    }
    // Sort and dedup each list, then compact.
    std::uint64_t write = 0;
    std::uint64_t begin = 0;
    for (NodeId v = 0; v < node_count; ++v) {
      const std::uint64_t end = g.offsets_[v + 1];
      auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(begin);
      auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(end);
      std::sort(first, last);
      last = std::unique(first, last);
      const auto len = static_cast<std::uint64_t>(last - first);
      std::copy(first, last, g.targets_.begin() + static_cast<std::ptrdiff_t>(write));
      g.offsets_[v] = write;
      write += len;
      begin = end;
    }
    g.offsets_[node_count] = write;
    g.targets_.resize(write);
    g.targets_.shrink_to_fit();

    if (original_ids.empty()) {
      original_ids.resize(node_count);
      std::iota(original_ids.begin(), original_ids.end(), std::uint64_t{0});
    }
    if (original_ids.size() != node_count) throw std::invalid_argument("id map size mismatch");
    g.original_ids_ = std::move(original_ids);
    g.dense_ids_.reserve(g.original_ids_.size());
    for (NodeId v = 0; v < node_count; ++v) g.dense_ids_.emplace(g.original_ids_[v], v);
    return g;
  }

  NodeId node_count() const noexcept { return static_cast<NodeId>(original_ids_.size()); }
  std::uint64_t edge_count() const noexcept { return targets_.size() / 2; }

  std::uint64_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }

  bool has_edge(NodeId u, NodeId v) const {
    if (degree(u) > degree(v)) std::swap(u, v);
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  std::uint64_t original_id(NodeId v) const { return original_ids_[v]; }

  std::optional<NodeId> find_original(std::uint64_t original) const {
    auto it = dense_ids_.find(original);
    if (it == dense_ids_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ && a.original_ids_ == b.original_ids_;
  }

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::uint64_t> original_ids_;
  std::unordered_map<std::uint64_t, NodeId> dense_ids_;
};

inline std::uint64_t degree(const Graph& g, NodeId v) { return g.degree(v); }

/// N[s]: s together with every neighbor of a node in s.
inline NodeSet closed_neighborhood(const Graph& g, const NodeSet& s) {
  NodeSet out;
  for (NodeId v : s) {
    out.insert(v);
    for (NodeId w : g.neighbors(v)) out.insert(w);
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string_view next_token(std::string_view& s) {
  s = trim(s);
  std::size_t i = 0;
  while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
  auto tok = s.substr(0, i);
  s.remove_prefix(i);
  return tok;
}

inline std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer node id, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

/// Reads a whitespace-separated edge list (SNAP ungraph style). Lines starting
/// with '#' or '%' are comments. Ids are remapped densely in order of first
/// appearance; self-loops and parallel edges are dropped. An id that occurs
/// only in self-loop lines does not become a node.
inline Graph load_edge_list(std::istream& in) {
  std::unordered_map<std::uint64_t, NodeId> dense;
  std::vector<std::uint64_t> original;
  std::vector<std::pair<NodeId, NodeId>> edges;

  const auto intern = [&](std::uint64_t id) {
    auto [it, inserted] = dense.try_emplace(id, static_cast<NodeId>(original.size()));
    if (inserted) {
      if (original.size() >= kInvalidNode) throw std::length_error("too many nodes");
      original.push_back(id);
    }
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = detail::trim(line);
    if (rest.empty() || rest.front() == '#' || rest.front() == '%') continue;
    const auto a = detail::next_token(rest);
    const auto b = detail::next_token(rest);
    if (b.empty()) throw ParseError(line_no, "expected two node ids");
    if (!detail::trim(rest).empty()) throw ParseError(line_no, "unexpected extra token");
    const std::uint64_t u = detail::parse_id(a, line_no);
    const std::uint64_t v = detail::parse_id(b, line_no);
    if (u == v) continue;
    const NodeId du = intern(u);
    const NodeId dv = intern(v);
    edges.emplace_back(du, dv);
  }
  if (original.empty()) throw std::runtime_error("edge list contains no nodes");
  const auto n = static_cast<NodeId>(original.size());
  return Graph::from_edges(n, edges, std::move(original));
}

/// Writes each undirected edge once as "u v" over original ids with u < v,
/// lines sorted. Isolated nodes are not representable and are omitted.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  edges.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      const auto a = g.original_id(u);
      const auto b = g.original_id(v);
      if (a < b) edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
}

/// True when both graphs have the same nodes and edges in terms of original ids,
/// regardless of dense numbering.
inline bool same_structure(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::uint64_t> lhs;
  std::vector<std::uint64_t> rhs;
  for (NodeId v = 0; v < a.node_count(); ++v) {
    const auto w = b.find_original(a.original_id(v));
    if (!w) return false;
    lhs.clear();
    rhs.clear();
    for (NodeId x : a.neighbors(v)) lhs.push_back(a.original_id(x));
    for (NodeId x : b.neighbors(*w)) rhs.push_back(b.original_id(x));
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace social
