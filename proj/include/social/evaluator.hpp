#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "social/graph.hpp"
#include "social/motif.hpp"
#include "social/types.hpp"

namespace social {

struct Evaluation {
  Weight cut_motifs = 0;            // occurrences with endpoints on both sides
  Weight motif_volume_inside = 0;   // d_mu(C)
  Weight motif_volume_total = 0;    // d_mu(V) = 3 * #triangles
  Ratio conductance;
};

/// Triangle conductance of c measured directly in g:
/// cut / min(d_mu(C), d_mu(V) - d_mu(C)).
inline Evaluation evaluate_exact(const Graph& g, const NodeSet& c, std::uint64_t total_triangles) {
  if (c.empty()) throw std::invalid_argument("cluster is empty");
  const MotifSet motifs = enumerate_triangles_touching(g, c);

  Evaluation ev;
  ev.motif_volume_total = 3 * total_triangles;
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    Weight inside = 0;
    for (NodeId v : motifs.occurrence(i)) inside += c.contains(v) ? 1 : 0;
    ev.motif_volume_inside += inside;
    if (inside < motifs.motif_size()) ++ev.cut_motifs;
  }
  if (ev.motif_volume_inside > ev.motif_volume_total) {
    throw std::invalid_argument("total triangle count is inconsistent with the graph");
  }
  const Weight denom = std::min(ev.motif_volume_inside, ev.motif_volume_total - ev.motif_volume_inside);
  if (denom == 0) throw UndefinedConductance("motif volume of the cluster or its complement is zero");
  ev.conductance = {ev.cut_motifs, denom};
  return ev;
}

/// d_mu(S) <= d_mu(complement of S), given d_mu(S) and the global count.
inline bool assumption_b_holds(Weight motif_volume_of_s, std::uint64_t total_triangles) {
  const Weight total = 3 * total_triangles;
  return motif_volume_of_s <= total && motif_volume_of_s <= total - motif_volume_of_s;
}

inline bool check_assumption_b(const Graph& g, const NodeSet& s, std::uint64_t total_triangles) {
  if (s.empty()) return true;
  const MotifSet motifs = enumerate_triangles_touching(g, s);
  return assumption_b_holds(motifs.motif_volume(s), total_triangles);
}

}  // namespace social
