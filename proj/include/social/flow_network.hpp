#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "social/hypergraph_model.hpp"
#include "social/types.hpp"

namespace social {

enum class ExpansionKind { clique, star, lawler };

inline std::string_view to_string(ExpansionKind kind) {
  switch (kind) {
    case ExpansionKind::clique: return "clique";
    case ExpansionKind::star: return "star";
    case ExpansionKind::lawler: return "lawler";
  }
  return "unknown";
}

inline std::optional<ExpansionKind> parse_expansion(std::string_view name) {
  if (name == "clique") return ExpansionKind::clique;
  if (name == "star") return ExpansionKind::star;
  if (name == "lawler") return ExpansionKind::lawler;
  return std::nullopt;
}

using FlowNode = std::uint32_t;

enum class FlowNodeRole : std::uint8_t {
  source,
  sink,
  cluster,     // index = local id in the model
  star_aux,    // index = net id
  lawler_in,   // w1 of a net, collects from pins
  lawler_out,  // w2 of a net, feeds pins
};

struct FlowNodeOrigin {
  FlowNodeRole role;
  std::uint32_t index = 0;
};

struct FlowArc {
  FlowNode tail;
  FlowNode head;
  Capacity capacity;
};

/// Directed capacitated network with a single source and sink. Arcs with
/// capacity equal to `infinite` model unbounded capacity; `infinite` exceeds
/// the sum of all finite capacities.
struct FlowNetwork {
  FlowNode node_count = 0;
  FlowNode source = 0;
  FlowNode sink = 1;
  std::vector<FlowArc> arcs;
  std::vector<FlowNodeOrigin> origins;
  Capacity scale = 1;
  Capacity infinite = 0;
  Capacity trivial_cut_weight = 0;
  /// Flow node of each member of C0, in the order C0 was given.
  std::vector<FlowNode> cluster_nodes;

  bool is_infinite(const FlowArc& a) const noexcept { return a.capacity == infinite; }
};

namespace detail {

/// Collects arcs, merging parallel ones. Infinite arcs are tagged with -1 and
/// resolved once the finite total is known.
class ArcCollector {
 public:
  static constexpr Capacity kInfiniteTag = -1;

  void add(FlowNode tail, FlowNode head, Capacity cap) {
    if (cap == 0) return;
    const std::uint64_t key = (static_cast<std::uint64_t>(tail) << 32) | head;
    auto [it, inserted] = index_.try_emplace(key, arcs_.size());
    if (inserted) {
      arcs_.push_back({tail, head, cap});
      return;
    }
    Capacity& existing = arcs_[it->second].capacity;
    if (existing == kInfiniteTag || cap == kInfiniteTag) {
      existing = kInfiniteTag;
    } else {
      existing = checked_add(existing, cap);
    }
  }

  std::vector<FlowArc> finish(Capacity& infinite) {
    Capacity finite = 0;
    for (const auto& a : arcs_) {
      if (a.capacity != kInfiniteTag) finite = checked_add(finite, a.capacity);
    }
    infinite = checked_add(finite, 1);
    for (auto& a : arcs_) {
      if (a.capacity == kInfiniteTag) a.capacity = infinite;
    }
    return std::move(arcs_);
  }

 private:
  std::vector<FlowArc> arcs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace detail

/// Builds the flow network that decides whether some C subset of C0 that
/// contains the seed has smaller local conductance than C0.
///
/// Nodes outside C0 (including r and auxiliaries tied to them) are contracted
/// into the source, whose in-arcs are dropped. Interior capacities are
/// multiplied by d_w(C0); each v in C0 other than the seed gets an arc to the
/// sink of capacity cut(C0) * d_w(v), and the seed's sink arc is infinite. All
/// finite capacities carry a global factor `scale` = motif size - 1 so the
/// clique expansion's division by |e| - 1 stays integral.
inline FlowNetwork build_flow_model(const HypergraphModel& h, std::span<const LocalId> c0, LocalId seed,
                                    ExpansionKind kind) {
  const LocalMask in = h.mask_of(c0);
  if (seed >= h.local_count() || !in[seed]) throw std::invalid_argument("seed must belong to C0");
  const Weight volume = h.weighted_volume(c0);
  const Weight cut = h.cut_net(in);
  if (volume == 0) throw std::invalid_argument("C0 has zero weighted volume");
  if (cut == 0) throw std::invalid_argument("C0 has zero cut; nothing to improve");
  if (kind != ExpansionKind::lawler && h.max_net_size() > 3) {
    throw UnsupportedExpansion(std::string(to_string(kind)) + " expansion requires nets with at most 3 pins");
  }

  FlowNetwork net;
  net.scale = static_cast<Capacity>(h.motif_size() > 1 ? h.motif_size() - 1 : 1);
  net.origins.push_back({FlowNodeRole::source, 0});
  net.origins.push_back({FlowNodeRole::sink, 0});

  std::vector<FlowNode> flow_of(h.local_count(), 0);
  for (LocalId v : c0) {
    flow_of[v] = static_cast<FlowNode>(net.origins.size());
    net.cluster_nodes.push_back(flow_of[v]);
    net.origins.push_back({FlowNodeRole::cluster, v});
  }
  const auto add_node = [&](FlowNodeRole role, std::uint32_t index) {
    net.origins.push_back({role, index});
    return static_cast<FlowNode>(net.origins.size() - 1);
  };

  const FlowNode s = net.source;
  const Capacity vol = detail::to_capacity(volume);
  detail::ArcCollector arcs;
  constexpr Capacity inf = detail::ArcCollector::kInfiniteTag;
  std::vector<FlowNode> inside;

  for (std::size_t e = 0; e < h.net_count(); ++e) {
    const auto pins = h.pins(e);
    inside.clear();
    std::size_t outside = 0;
    for (LocalId p : pins) {
      if (p != h.r() && in[p]) {
        inside.push_back(flow_of[p]);
      } else {
        ++outside;
      }
    }
    if (inside.empty()) continue;

    const Capacity base =
        detail::checked_mul(detail::checked_mul(net.scale, detail::to_capacity(h.net_weight(e))), vol);
    switch (kind) {
      case ExpansionKind::clique: {
        const auto den = static_cast<Capacity>(pins.size() - 1);
        if (base % den != 0) throw std::logic_error("clique capacity is not integral");
        const Capacity cap = base / den;
        for (std::size_t i = 0; i < inside.size(); ++i) {
          for (std::size_t j = i + 1; j < inside.size(); ++j) {
            arcs.add(inside[i], inside[j], cap);
            arcs.add(inside[j], inside[i], cap);
          }
          for (std::size_t k = 0; k < outside; ++k) arcs.add(s, inside[i], cap);
        }
        break;
      }
      case ExpansionKind::star: {
        const FlowNode aux = add_node(FlowNodeRole::star_aux, static_cast<std::uint32_t>(e));
        for (FlowNode p : inside) {
          arcs.add(p, aux, base);
          arcs.add(aux, p, base);
        }
        for (std::size_t k = 0; k < outside; ++k) arcs.add(s, aux, base);
        break;
      }
      case ExpansionKind::lawler: {
        // w1 only survives when every pin is in C0; otherwise it is part of the source.
        const FlowNode w2 = add_node(FlowNodeRole::lawler_out, static_cast<std::uint32_t>(e));
        if (outside == 0) {
          const FlowNode w1 = add_node(FlowNodeRole::lawler_in, static_cast<std::uint32_t>(e));
          for (FlowNode p : inside) arcs.add(p, w1, inf);
          arcs.add(w1, w2, base);
        } else {
          arcs.add(s, w2, base);
        }
        for (FlowNode p : inside) arcs.add(w2, p, inf);
        break;
      }
    }
  }

  const Capacity cut_cap = detail::to_capacity(cut);
  for (LocalId v : c0) {
    if (v == seed) {
      arcs.add(flow_of[v], net.sink, inf);
    } else {
      arcs.add(flow_of[v], net.sink,
               detail::checked_mul(detail::checked_mul(net.scale, cut_cap), detail::to_capacity(h.weighted_degree(v))));
    }
  }

  net.node_count = static_cast<FlowNode>(net.origins.size());
  net.trivial_cut_weight = detail::checked_mul(detail::checked_mul(net.scale, cut_cap), vol);
  net.arcs = arcs.finish(net.infinite);
  return net;
}

/// DIMACS max-flow dump ("p max", "n <id> s|t", "a <u> <v> <cap>", 1-based).
inline void write_dimacs(std::ostream& out, const FlowNetwork& net) {
  out << "p max " << net.node_count << ' ' << net.arcs.size() << '\n';
  out << "n " << net.source + 1 << " s\n";
  out << "n " << net.sink + 1 << " t\n";
  for (const auto& a : net.arcs) out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.capacity << '\n';
}

}  // namespace social
